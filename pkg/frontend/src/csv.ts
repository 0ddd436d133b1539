/** Minimal CSV handling for the benchmark file schemas.
 *
 * All producer files are comma-separated without quoting; lines starting
 * with '#' carry metadata and are preserved separately.
 */

export interface CsvTable {
  header: string[];
  rows: string[][];
  meta: Record<string, string>;
}

export class SchemaError extends Error {}

export function parseCsv(text: string): CsvTable {
  const meta: Record<string, string> = {};
  const lines = text.split(/\r?\n/).filter((ln) => ln.trim().length > 0);
  const dataLines: string[] = [];
  for (const ln of lines) {
    if (ln.startsWith("#")) {
      const body = ln.slice(1).trim();
      const eq = body.indexOf("=");
      if (eq > 0) meta[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
      continue;
    }
    dataLines.push(ln);
  }
  if (dataLines.length === 0) {
    throw new SchemaError("empty CSV: no header line");
  }
  const header = dataLines[0].split(",");
  const rows = dataLines.slice(1).map((ln) => ln.split(","));
  return { header, rows, meta };
}

/** Column accessor that names the missing column on schema mismatch. */
export function columns(table: CsvTable, names: string[]): number[] {
  return names.map((name) => {
    const idx = table.header.indexOf(name);
    if (idx < 0) {
      throw new SchemaError(
        `missing column '${name}' (header: ${table.header.join(",")})`,
      );
    }
    return idx;
  });
}

export function numeric(value: string): number {
  if (value === "inf") return Infinity;
  if (value === "-inf") return -Infinity;
  const x = Number(value);
  if (Number.isNaN(x) && value !== "nan") {
    throw new SchemaError(`non-numeric cell '${value}'`);
  }
  return x;
}

export function requireRows(table: CsvTable, what: string): void {
  if (table.rows.length === 0) {
    throw new SchemaError(`empty CSV: no data rows for ${what}`);
  }
}
