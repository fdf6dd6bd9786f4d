/**
 * Reader for the CSV tables produced by the pointwalk command line tools.
 *
 * The dialect is deliberately narrow: zero or more `# key = value` metadata
 * lines, a single comma-separated header row, then numeric rows.  Fields are
 * never quoted and never contain commas, so a plain split is the whole
 * parser.  Anything that deviates from a figure kind's documented layout is
 * rejected with SchemaMismatch rather than plotted on a best-effort basis.
 */

export type FigureKind = "profile" | "ladder" | "overlay";

export interface Table {
  /** key/value pairs from the leading `# key = value` lines */
  meta: Record<string, string>;
  /** column names exactly as they appear in the header row */
  header: string[];
  /** column-major numeric data, keyed by header name */
  columns: Record<string, number[]>;
  /** number of data rows */
  rows: number;
}

/** Raised when a CSV file does not match the layout a figure kind expects. */
export class SchemaMismatch extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaMismatch";
  }
}

const META_LINE = /^#\s*([^=]+?)\s*=\s*(.*)$/;

/**
 * Parse one CSV table from raw file text.
 *
 * @param text   full file contents
 * @param origin label used in error messages, normally the file path
 */
export function parseTable(text: string, origin = "<csv>"): Table {
  const lines = text.split("\n").filter((line) => line.trim().length > 0);
  const meta: Record<string, string> = {};

  let cursor = 0;
  while (cursor < lines.length && lines[cursor]!.startsWith("#")) {
    const match = META_LINE.exec(lines[cursor]!);
    if (match) {
      meta[match[1]!] = match[2]!;
    }
    cursor += 1;
  }

  if (cursor >= lines.length) {
    throw new SchemaMismatch(`${origin}: no header row found`);
  }
  const header = lines[cursor]!.split(",").map((name) => name.trim());
  if (header.some((name) => name.length === 0)) {
    throw new SchemaMismatch(`${origin}: empty column name in header`);
  }
  if (new Set(header).size !== header.length) {
    throw new SchemaMismatch(`${origin}: duplicate column name in header`);
  }
  cursor += 1;

  const columns: Record<string, number[]> = {};
  for (const name of header) {
    columns[name] = [];
  }

  let rows = 0;
  for (; cursor < lines.length; cursor += 1) {
    const fields = lines[cursor]!.split(",");
    if (fields.length !== header.length) {
      throw new SchemaMismatch(
        `${origin}: row ${rows + 1} has ${fields.length} fields, expected ${header.length}`,
      );
    }
    for (let j = 0; j < header.length; j += 1) {
      const value = Number(fields[j]);
      if (fields[j]!.trim().length === 0 || Number.isNaN(value)) {
        throw new SchemaMismatch(
          `${origin}: row ${rows + 1}, column ${header[j]}: not a number: ${fields[j]}`,
        );
      }
      columns[header[j]!]!.push(value);
    }
    rows += 1;
  }

  if (rows === 0) {
    throw new SchemaMismatch(`${origin}: table has a header but no data rows`);
  }
  return { meta, header, columns, rows };
}

function requireColumns(table: Table, names: string[], origin: string): void {
  for (const name of names) {
    if (!(name in table.columns)) {
      throw new SchemaMismatch(`${origin}: missing required column ${name}`);
    }
  }
}

function coordinateColumns(table: Table): string[] {
  return table.header.filter((name) => /^x_\d+$/.test(name));
}

/**
 * Check that every coordinate beyond x_1 is constant, so the rows form a
 * one-dimensional transect that can be drawn against x_1.
 */
function requireTransect(table: Table, origin: string): void {
  for (const name of coordinateColumns(table)) {
    if (name === "x_1") continue;
    const column = table.columns[name]!;
    if (column.some((v) => v !== column[0])) {
      throw new SchemaMismatch(
        `${origin}: column ${name} is not constant; profile figures need a transect along x_1`,
      );
    }
  }
}

/** Column layout drawn by profile figures. */
export const PROFILE_CURVES = [
  "exact_correction",
  "delta_quadrature",
  "delta_closed",
] as const;

/** Validate a correction-profile table (output of `pointwalk profile`). */
export function validateProfile(table: Table, origin = "<csv>"): Table {
  requireColumns(table, ["x_1", ...PROFILE_CURVES], origin);
  requireTransect(table, origin);
  return table;
}

/** Validate a convergence-sweep table (output of `pointwalk sweep`). */
export function validateLadder(table: Table, origin = "<csv>"): Table {
  requireColumns(table, ["n", "x_1", "scaled_residual"], origin);
  if (table.columns["n"]!.some((v) => v <= 0)) {
    throw new SchemaMismatch(`${origin}: ladder figures need n > 0 in every row`);
  }
  return table;
}

/** Validate a sampled-field table (output of `pointwalk sample`). */
export function validateEmpirical(table: Table, origin = "<csv>"): Table {
  requireColumns(table, ["x_1", "value", "stderr"], origin);
  requireTransect(table, origin);
  return table;
}

/** Validate an exact table used as the reference curve in overlay figures. */
export function validateOverlayReference(table: Table, origin = "<csv>"): Table {
  requireColumns(table, ["x_1", "exact_total"], origin);
  requireTransect(table, origin);
  return table;
}
