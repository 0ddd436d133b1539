#!/usr/bin/env node
/** render_figure <figure-id> --in <csv...> --out <path>
 *
 * Renders one SVG per invocation from the benchmark CSV schemas.  For fig6,
 * each trace input picks up its `<name>.grid.csv` companion automatically
 * when present.  Exit codes: 0 success, 1 schema/data error, 2 usage.
 */

import { existsSync, readFileSync, writeFileSync } from "fs";

import { SchemaError } from "./csv.js";
import { FIGURE_IDS, NamedInput, renderFigure } from "./figures.js";

function usage(): never {
  process.stderr.write(
    `usage: render_figure <${FIGURE_IDS.join("|")}> --in <csv...> --out <path>\n`,
  );
  process.exit(2);
}

export function main(argv: string[]): number {
  if (argv.length < 1) usage();
  const figureId = argv[0];
  const inputs: string[] = [];
  let out: string | undefined;
  let mode: "in" | "out" | null = null;
  for (const arg of argv.slice(1)) {
    if (arg === "--in") mode = "in";
    else if (arg === "--out") mode = "out";
    else if (mode === "in") inputs.push(arg);
    else if (mode === "out") { out = arg; mode = null; }
    else usage();
  }
  if (!out || inputs.length === 0) usage();
  try {
    const named: NamedInput[] = inputs.map((path) => {
      const entry: NamedInput = { name: path, text: readFileSync(path, "utf8") };
      const gridPath = `${path}.grid.csv`;
      if (figureId === "fig6" && existsSync(gridPath)) {
        entry.gridText = readFileSync(gridPath, "utf8");
      }
      return entry;
    });
    const svg = renderFigure(figureId, named);
    writeFileSync(out, svg);
    process.stdout.write(`wrote ${out}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    if (err instanceof Error && "code" in err && err.code === "ENOENT") {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

const entryHref = process.argv[1] ? new URL(`file://${process.argv[1]}`).href : "";
if (import.meta.url === entryHref || entryHref.endsWith("/render_figure")) {
  process.exit(main(process.argv.slice(2)));
}
