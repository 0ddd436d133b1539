/** Figure builders: benchmark CSVs in, standalone SVG documents out.
 *
 * fig1/fig3/fig5 - two-panel (max over mean) log-log energy-error sweeps
 * fig2           - oscillator defect spectra per method and composition mode
 * fig4           - perihelion advance versus evaluations per orbit
 * fig6           - substep traces over energy contours, four panels A-D
 */

import { contours } from "d3-contour";

import { CsvTable, SchemaError, columns, numeric, parseCsv, requireRows } from "./csv.js";
import {
  Frame, PALETTE, axes, circle, crossMarker, document as svgDocument,
  esc, fmtTick, legend, linearScale, log10Scale, polyline,
} from "./svg.js";

export const FIGURE_IDS = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

export interface NamedInput {
  name: string;
  text: string;
  gridText?: string;
}

interface SweepRow {
  method: string;
  x: number;
  maxErr: number;
  meanErr: number;
}

function sweepRows(tables: CsvTable[], xHours: boolean): SweepRow[] {
  const out: SweepRow[] = [];
  for (const table of tables) {
    requireRows(table, "sweep");
    const [mi, xi, maxi, meani] = columns(table, [
      "method", "tau_per_stage", "max_rel_energy_err", "mean_rel_energy_err",
    ]);
    for (const row of table.rows) {
      out.push({
        method: row[mi],
        x: numeric(row[xi]) / (xHours ? 3600 : 1),
        maxErr: numeric(row[maxi]),
        meanErr: numeric(row[meani]),
      });
    }
  }
  return out;
}

function byMethod(rows: SweepRow[]): Map<string, SweepRow[]> {
  const groups = new Map<string, SweepRow[]>();
  for (const row of rows) {
    const list = groups.get(row.method) ?? [];
    list.push(row);
    groups.set(row.method, list);
  }
  for (const list of groups.values()) list.sort((a, b) => a.x - b.x);
  return groups;
}

function sweepPanel(
  frame: Frame,
  groups: Map<string, SweepRow[]>,
  pick: (r: SweepRow) => number,
  labels: { x: string; y: string },
): string {
  const xsAll = [...groups.values()].flat().map((r) => r.x);
  const ysAll = [...groups.values()].flat().map(pick).filter(
    (v) => Number.isFinite(v) && v > 0,
  );
  if (ysAll.length === 0) throw new SchemaError("no finite positive errors to plot");
  const xScale = log10Scale(
    [Math.min(...xsAll), Math.max(...xsAll)],
    [frame.x, frame.x + frame.width],
  );
  const yScale = log10Scale(
    [Math.min(...ysAll) * 0.7, Math.max(...ysAll) * 1.5],
    [frame.y + frame.height, frame.y],
  );
  const parts: string[] = [`<g class="panel">`];
  parts.push(axes(frame, xScale, yScale,
    { xLabel: labels.x, yLabel: labels.y, xLog: true, yLog: true }));
  let ci = 0;
  for (const [method, rows] of groups) {
    const color = PALETTE[ci % PALETTE.length];
    ci += 1;
    const pts: Array<[number, number]> = [];
    for (const row of rows) {
      const v = pick(row);
      if (Number.isFinite(v) && v > 0) {
        pts.push([xScale(row.x), yScale(v)]);
      } else if (!Number.isFinite(v)) {
        // diverged runs pin to the top axis edge
        parts.push(crossMarker(xScale(row.x), frame.y, 4, color, "unstable"));
      }
    }
    parts.push(polyline(pts, color, { cls: `series` }));
    for (const [px, py] of pts) parts.push(circle(px, py, 2, color, "pt"));
  }
  parts.push("</g>");
  return parts.join("\n");
}

function twoPanelSweep(inputs: NamedInput[], xLabel: string, xHours: boolean): string {
  const groups = byMethod(sweepRows(inputs.map((i) => parseCsv(i.text)), xHours));
  const width = 640;
  const height = 660;
  const top: Frame = { x: 70, y: 30, width: width - 220, height: 270 };
  const bottom: Frame = { x: 70, y: 360, width: width - 220, height: 270 };
  const body = [
    sweepPanel(top, groups, (r) => r.maxErr,
      { x: xLabel, y: "max |dH/H0|" }),
    sweepPanel(bottom, groups, (r) => r.meanErr,
      { x: xLabel, y: "mean |dH/H0|" }),
    legend(width - 135, 40, [...groups.keys()].map((m, i) => ({
      label: m, color: PALETTE[i % PALETTE.length],
    }))),
  ].join("\n");
  return svgDocument(width, height, body);
}

function spectrumFigure(inputs: NamedInput[]): string {
  const table = parseCsv(inputs[0].text);
  requireRows(table, "spectrum");
  const [mi, modei, li, ki] = columns(table, ["method", "mode", "lambda", "kappa"]);
  interface Pt { lam: number; kappa: number; }
  const groups = new Map<string, { aba: Pt[]; bab: Pt[] }>();
  let lamMax = 4;
  let kMin = Infinity;
  let kMax = -Infinity;
  for (const row of table.rows) {
    const mode = row[modei] === "aba" ? "aba" : "bab";
    const entry = groups.get(row[mi]) ?? { aba: [], bab: [] };
    const kappa = numeric(row[ki]);
    const lam = numeric(row[li]);
    lamMax = Math.max(lamMax, lam);
    if (kappa > 1e-60) {
      entry[mode].push({ lam, kappa });
      kMin = Math.min(kMin, kappa);
      kMax = Math.max(kMax, kappa);
    }
    groups.set(row[mi], entry);
  }
  if (!Number.isFinite(kMin)) throw new SchemaError("all defects are zero, nothing to plot");
  const width = 640;
  const height = 420;
  const frame: Frame = { x: 70, y: 30, width: width - 230, height: 330 };
  const xScale = linearScale([0, lamMax + 1], [frame.x, frame.x + frame.width]);
  const yScale = log10Scale([kMin * 0.5, kMax * 2], [frame.y + frame.height, frame.y]);
  const parts: string[] = [`<g class="panel">`];
  parts.push(axes(frame, xScale, yScale, {
    xLabel: "power of the time step", yLabel: "position defect",
    xLog: false, yLog: true,
  }));
  let ci = 0;
  for (const [method, entry] of groups) {
    const color = PALETTE[ci % PALETTE.length];
    ci += 1;
    entry.bab.sort((a, b) => a.lam - b.lam);
    parts.push(polyline(entry.bab.map((p) => [xScale(p.lam), yScale(p.kappa)]),
      color, { cls: "series mode-bab" }));
    for (const p of entry.aba) {
      parts.push(circle(xScale(p.lam), yScale(p.kappa), 3.5, "none",
        "pt mode-aba", color));
    }
  }
  parts.push("</g>");
  parts.push(legend(width - 150, 40, [...groups.keys()].map((m, i) => ({
    label: m, color: PALETTE[i % PALETTE.length],
  }))));
  return svgDocument(width, height, parts.join("\n"));
}

function precessionFigure(inputs: NamedInput[]): string {
  const table = parseCsv(inputs[0].text);
  requireRows(table, "precession");
  const [mi, ei, ri] = columns(table, ["method", "evals_per_orbit", "dtheta_dt"]);
  interface Pt { evals: number; rate: number; }
  const groups = new Map<string, Pt[]>();
  for (const row of table.rows) {
    const list = groups.get(row[mi]) ?? [];
    list.push({ evals: numeric(row[ei]), rate: numeric(row[ri]) });
    groups.set(row[mi], list);
  }
  const all = [...groups.values()].flat();
  const rates = all.map((p) => p.rate).filter((v) => v > 0);
  if (rates.length === 0) throw new SchemaError("no positive rotation rates to plot");
  const width = 640;
  const height = 420;
  const frame: Frame = { x: 80, y: 30, width: width - 240, height: 330 };
  const xScale = log10Scale(
    [Math.min(...all.map((p) => p.evals)) * 0.8,
     Math.max(...all.map((p) => p.evals)) * 1.2],
    [frame.x, frame.x + frame.width],
  );
  const yScale = log10Scale(
    [Math.min(...rates) * 0.5, Math.max(...rates) * 2],
    [frame.y + frame.height, frame.y],
  );
  const parts: string[] = [`<g class="panel">`];
  parts.push(axes(frame, xScale, yScale, {
    xLabel: "evaluations per orbit", yLabel: "perihelion advance (rad/s)",
    xLog: true, yLog: true,
  }));
  let ci = 0;
  for (const [, pts] of groups) {
    const color = PALETTE[ci % PALETTE.length];
    ci += 1;
    pts.sort((a, b) => a.evals - b.evals);
    parts.push(polyline(pts.filter((p) => p.rate > 0)
      .map((p) => [xScale(p.evals), yScale(p.rate)]), color,
      { width: 1, cls: "series" }));
    for (const p of pts) {
      if (p.rate > 0) parts.push(circle(xScale(p.evals), yScale(p.rate), 4, color, "pt"));
    }
  }
  parts.push("</g>");
  parts.push(legend(width - 150, 40, [...groups.keys()].map((m, i) => ({
    label: m, color: PALETTE[i % PALETTE.length],
  }))));
  return svgDocument(width, height, parts.join("\n"));
}

const SIGN_COLORS = { blue: "#2a6fdb", red: "#d62728", green: "#2ca02c" };

function shade(t: number): string {
  // light -> mid blue sequential band fill
  const lerp = (a: number, b: number) => Math.round(a + (b - a) * t);
  return `rgb(${lerp(247, 107)},${lerp(251, 174)},${lerp(255, 214)})`;
}

function tracePanel(frame: Frame, input: NamedInput, tag: string): string {
  const trace = parseCsv(input.text);
  requireRows(trace, "trace");
  const [si, qi, pi, ci, di] = columns(trace, ["substep", "q0", "p0", "c_sign", "d_sign"]);
  const pts = trace.rows.map((row) => ({
    substep: numeric(row[si]),
    q: numeric(row[qi]),
    p: numeric(row[pi]),
    cSign: numeric(row[ci]),
    dSign: numeric(row[di]),
  })).filter((p) => Number.isFinite(p.q) && Number.isFinite(p.p));
  const parts: string[] = [`<g class="panel trace-panel">`];

  let xScale;
  let yScale;
  if (input.gridText) {
    const grid = parseCsv(input.gridText);
    const [gqi, gpi, ghi] = columns(grid, ["q", "p", "H"]);
    const qs = [...new Set(grid.rows.map((r) => numeric(r[gqi])))].sort((a, b) => a - b);
    const ps = [...new Set(grid.rows.map((r) => numeric(r[gpi])))].sort((a, b) => a - b);
    const nq = qs.length;
    const np = ps.length;
    xScale = linearScale([qs[0], qs[nq - 1]], [frame.x, frame.x + frame.width]);
    yScale = linearScale([ps[0], ps[np - 1]], [frame.y + frame.height, frame.y]);
    const values = new Float64Array(nq * np);
    const qIndex = new Map(qs.map((v, i) => [v, i]));
    const pIndex = new Map(ps.map((v, i) => [v, i]));
    let hMin = Infinity;
    let hMax = -Infinity;
    for (const row of grid.rows) {
      const iq = qIndex.get(numeric(row[gqi]))!;
      const ip = pIndex.get(numeric(row[gpi]))!;
      const h = numeric(row[ghi]);
      values[ip * nq + iq] = h;
      if (Number.isFinite(h)) {
        hMin = Math.min(hMin, h);
        hMax = Math.max(hMax, h);
      }
    }
    const levels = Array.from({ length: 11 }, (_, i) => hMin + ((i + 0.5) / 11) * (hMax - hMin));
    const bands = contours().size([nq, np]).thresholds(levels)(Array.from(values));
    const px = (gx: number) => frame.x + (gx / (nq - 1)) * frame.width;
    const py = (gy: number) => frame.y + frame.height - (gy / (np - 1)) * frame.height;
    parts.push(`<g class="contours">`);
    bands.forEach((band, bi) => {
      const d = band.coordinates.map((poly) =>
        poly.map((ring) =>
          ring.map(([gx, gy], i) =>
            `${i === 0 ? "M" : "L"}${px(gx).toFixed(1)},${py(gy).toFixed(1)}`,
          ).join("") + "Z",
        ).join(""),
      ).join("");
      if (d) {
        parts.push(`<path d="${d}" fill="${shade(bi / Math.max(bands.length - 1, 1))}" fill-opacity="0.55" stroke="#9db" stroke-width="0.4"/>`);
      }
    });
    parts.push("</g>");
  } else {
    const qsAll = pts.map((p) => p.q);
    const psAll = pts.map((p) => p.p);
    xScale = linearScale([Math.min(...qsAll), Math.max(...qsAll)],
      [frame.x, frame.x + frame.width]);
    yScale = linearScale([Math.min(...psAll), Math.max(...psAll)],
      [frame.y + frame.height, frame.y]);
  }

  parts.push(axes(frame, xScale, yScale,
    { xLabel: "q", yLabel: "p", xLog: false, yLog: false }));
  const maxSub = Math.max(...pts.map((p) => p.substep));
  for (const p of pts) {
    const x = xScale(p.q);
    const y = yScale(p.p);
    if (x < frame.x - 1 || x > frame.x + frame.width + 1 ||
        y < frame.y - 1 || y > frame.y + frame.height + 1) continue;
    if (p.substep === 0) {
      parts.push(circle(x, y, 5, "none", "start-marker", SIGN_COLORS.blue));
    }
    if (p.substep === maxSub) {
      parts.push(crossMarker(x, y, 4, SIGN_COLORS.blue, "end-marker"));
      continue;
    }
    if (p.cSign < 0 && p.dSign < 0) {
      parts.push(circle(x, y, 4, SIGN_COLORS.red, "substep sign-both-negative"));
      parts.push(circle(x, y, 2, SIGN_COLORS.green, "substep sign-both-negative-inner"));
    } else if (p.cSign < 0) {
      parts.push(circle(x, y, 3.2, SIGN_COLORS.red, "substep sign-c-negative"));
    } else if (p.dSign < 0) {
      parts.push(circle(x, y, 3.2, SIGN_COLORS.green, "substep sign-d-negative"));
    } else {
      parts.push(circle(x, y, 3.2, SIGN_COLORS.blue, "substep sign-positive"));
    }
  }
  const label = trace.meta["method"]
    ? `(${tag}) ${trace.meta["method"]} on ${trace.meta["system"] ?? "?"}`
    : `(${tag})`;
  parts.push(`<text x="${frame.x + 4}" y="${frame.y - 6}" font-size="11" class="panel-label">${esc(label)}</text>`);
  parts.push("</g>");
  return parts.join("\n");
}

function traceFigure(inputs: NamedInput[]): string {
  if (inputs.length < 1 || inputs.length > 4) {
    throw new SchemaError(`trace figure takes 1-4 trace CSVs, got ${inputs.length}`);
  }
  const width = 760;
  const height = 640;
  const tags = ["A", "B", "C", "D"];
  const parts: string[] = [];
  for (let i = 0; i < 4; i += 1) {
    const frame: Frame = {
      x: 70 + (i % 2) * 360,
      y: 40 + Math.floor(i / 2) * 310,
      width: 290,
      height: 240,
    };
    if (i < inputs.length) {
      parts.push(tracePanel(frame, inputs[i], tags[i]));
    } else {
      parts.push(`<g class="panel trace-panel empty">` +
        `<text x="${frame.x + 4}" y="${frame.y - 6}" font-size="11" class="panel-label">(${tags[i]})</text></g>`);
    }
  }
  parts.push(`<g class="legend sign-legend">` +
    `${circle(90, height - 26, 3.2, SIGN_COLORS.blue)}<text x="98" y="${height - 23}" font-size="10">c, d positive</text>` +
    `${circle(190, height - 26, 3.2, SIGN_COLORS.red)}<text x="198" y="${height - 23}" font-size="10">c negative</text>` +
    `${circle(280, height - 26, 3.2, SIGN_COLORS.green)}<text x="288" y="${height - 23}" font-size="10">d negative</text>` +
    `</g>`);
  return svgDocument(width, height, parts.join("\n"));
}

export function renderFigure(id: string, inputs: NamedInput[]): string {
  if (inputs.length === 0) throw new SchemaError("no input CSVs given");
  switch (id) {
    case "fig1":
      return twoPanelSweep(inputs, "tau per stage", false);
    case "fig2":
      return spectrumFigure(inputs);
    case "fig3":
      return twoPanelSweep(inputs, "tau per stage", false);
    case "fig4":
      return precessionFigure(inputs);
    case "fig5":
      return twoPanelSweep(inputs, "tau per stage (hours)", true);
    case "fig6":
      return traceFigure(inputs);
    default:
      throw new SchemaError(
        `unknown figure id '${id}' (expected ${FIGURE_IDS.join("|")})`);
  }
}
