/** Hand-assembled SVG primitives: scales, axes, paths, markers.
 *
 * No DOM is involved; every helper returns SVG markup text.  Rendering is
 * deterministic: no timestamps, no random ids.
 */

export interface Scale {
  (value: number): number;
  ticks(): number[];
  domain: [number, number];
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
  tickCount = 5,
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.ticks = () => {
    const step = niceStep(span / tickCount);
    const start = Math.ceil(d0 / step) * step;
    const out: number[] = [];
    for (let v = start; v <= d1 + 1e-12 * Math.abs(span); v += step) {
      out.push(Number(v.toPrecision(12)));
    }
    return out;
  };
  return fn;
}

function niceStep(raw: number): number {
  const mag = Math.pow(10, Math.floor(Math.log10(Math.abs(raw) || 1)));
  const norm = Math.abs(raw) / mag;
  if (norm < 1.5) return mag;
  if (norm < 3.5) return 2 * mag;
  if (norm < 7.5) return 5 * mag;
  return 10 * mag;
}

/** Base-10 logarithmic scale; ticks at decades. */
export function log10Scale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const [r0, r1] = range;
  const span = l1 - l0 || 1;
  const fn = ((v: number) =>
    r0 + ((Math.log10(v) - l0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(l0 - 1e-9); e <= Math.floor(l1 + 1e-9); e += 1) {
      out.push(Math.pow(10, e));
    }
    return out;
  };
  return fn;
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const e = Math.log10(Math.abs(v));
  if (Number.isInteger(e) && (e < -2 || e > 3)) return `1e${e}`;
  if (Math.abs(v) >= 0.01 && Math.abs(v) < 10000) {
    return String(Number(v.toPrecision(6)));
  }
  return v.toExponential(0).replace("+", "");
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

export const PALETTE = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

export interface Frame {
  x: number;
  y: number;
  width: number;
  height: number;
}

/** Axis box with ticks; scale kind is recorded as a class for inspection. */
export function axes(
  frame: Frame,
  xs: Scale,
  ys: Scale,
  opts: { xLabel: string; yLabel: string; xLog: boolean; yLog: boolean },
): string {
  const parts: string[] = [];
  const cls = `axes x-${opts.xLog ? "log" : "linear"} y-${opts.yLog ? "log" : "linear"}`;
  parts.push(`<g class="${cls}">`);
  parts.push(
    `<rect x="${frame.x}" y="${frame.y}" width="${frame.width}" height="${frame.height}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  const y0 = frame.y + frame.height;
  for (const t of xs.ticks()) {
    const px = xs(t);
    if (px < frame.x - 0.5 || px > frame.x + frame.width + 0.5) continue;
    parts.push(`<line x1="${px.toFixed(2)}" y1="${y0}" x2="${px.toFixed(2)}" y2="${y0 + 4}" stroke="#333"/>`);
    parts.push(
      `<text x="${px.toFixed(2)}" y="${y0 + 16}" font-size="10" text-anchor="middle" class="tick">${esc(fmtTick(t))}</text>`,
    );
  }
  for (const t of ys.ticks()) {
    const py = ys(t);
    if (py < frame.y - 0.5 || py > frame.y + frame.height + 0.5) continue;
    parts.push(`<line x1="${frame.x - 4}" y1="${py.toFixed(2)}" x2="${frame.x}" y2="${py.toFixed(2)}" stroke="#333"/>`);
    parts.push(
      `<text x="${frame.x - 6}" y="${(py + 3).toFixed(2)}" font-size="10" text-anchor="end" class="tick">${esc(fmtTick(t))}</text>`,
    );
  }
  parts.push(
    `<text x="${frame.x + frame.width / 2}" y="${y0 + 32}" font-size="11" text-anchor="middle" class="axis-label">${esc(opts.xLabel)}</text>`,
  );
  parts.push(
    `<text x="${frame.x - 44}" y="${frame.y + frame.height / 2}" font-size="11" text-anchor="middle" class="axis-label" transform="rotate(-90 ${frame.x - 44} ${frame.y + frame.height / 2})">${esc(opts.yLabel)}</text>`,
  );
  parts.push("</g>");
  return parts.join("\n");
}

export function polyline(
  points: Array<[number, number]>,
  stroke: string,
  opts: { width?: number; dash?: string; cls?: string } = {},
): string {
  if (points.length === 0) return "";
  const d = points
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`)
    .join("");
  const dash = opts.dash ? ` stroke-dasharray="${opts.dash}"` : "";
  const cls = opts.cls ? ` class="${opts.cls}"` : "";
  return `<path d="${d}" fill="none" stroke="${stroke}" stroke-width="${opts.width ?? 1.5}"${dash}${cls}/>`;
}

export function circle(
  x: number,
  y: number,
  r: number,
  fill: string,
  cls = "",
  stroke = "none",
): string {
  const c = cls ? ` class="${cls}"` : "";
  return `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="${r}" fill="${fill}" stroke="${stroke}"${c}/>`;
}

export function crossMarker(x: number, y: number, r: number, stroke: string, cls = ""): string {
  const c = cls ? ` class="${cls}"` : "";
  return (
    `<path d="M${(x - r).toFixed(2)},${(y - r).toFixed(2)}L${(x + r).toFixed(2)},${(y + r).toFixed(2)}` +
    `M${(x - r).toFixed(2)},${(y + r).toFixed(2)}L${(x + r).toFixed(2)},${(y - r).toFixed(2)}"` +
    ` stroke="${stroke}" stroke-width="1.5" fill="none"${c}/>`
  );
}

export function legend(
  x: number,
  y: number,
  items: Array<{ label: string; color: string }>,
): string {
  const parts = [`<g class="legend">`];
  items.forEach((item, i) => {
    const yy = y + i * 14;
    parts.push(`<line x1="${x}" y1="${yy}" x2="${x + 18}" y2="${yy}" stroke="${item.color}" stroke-width="2"/>`);
    parts.push(
      `<text x="${x + 24}" y="${yy + 3}" font-size="10" class="legend-label">${esc(item.label)}</text>`,
    );
  });
  parts.push("</g>");
  return parts.join("\n");
}

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica,Arial,sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n${body}\n</svg>\n`
  );
}
