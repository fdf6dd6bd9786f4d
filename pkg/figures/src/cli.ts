/**
 * Command line entry point.
 *
 *   pointwalk-figures --kind profile --in profile.csv --out profile.svg
 *   pointwalk-figures --kind ladder  --in sweep.csv   --out ladder.svg
 *   pointwalk-figures --kind overlay --in sampled.csv --in exact.csv --out overlay.svg
 *
 * Exit codes: 0 on success, 1 when an input table fails schema validation,
 * 2 for usage or I/O problems.
 */

import { readFileSync, writeFileSync, mkdirSync } from "node:fs";
import { dirname } from "node:path";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { FigureKind, parseTable, SchemaMismatch, Table } from "./schema.js";
import { renderLadder, renderOverlay, renderProfile, RenderOptions } from "./render.js";

const USAGE =
  "usage: pointwalk-figures --kind {profile,ladder,overlay} --in FILE [--in FILE] --out FILE" +
  " [--width N] [--height N] [--title TEXT]";

const KINDS: FigureKind[] = ["profile", "ladder", "overlay"];

class UsageError extends Error {}

function loadTable(path: string): Table {
  return parseTable(readFileSync(path, "utf8"), path);
}

/** Render one figure and return the SVG text; throws on any failure. */
export function renderFromFiles(kind: FigureKind, inputs: string[], options: RenderOptions): string {
  if (kind === "overlay") {
    if (inputs.length !== 2) {
      throw new UsageError("overlay figures need exactly two --in files: sampled table, exact table");
    }
    return renderOverlay(loadTable(inputs[0]!), loadTable(inputs[1]!), options, [
      inputs[0]!,
      inputs[1]!,
    ]);
  }
  if (inputs.length !== 1) {
    throw new UsageError(`${kind} figures need exactly one --in file`);
  }
  const table = loadTable(inputs[0]!);
  return kind === "profile"
    ? renderProfile(table, options, inputs[0]!)
    : renderLadder(table, options, inputs[0]!);
}

export function main(argv: string[]): number {
  try {
    const { values } = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        in: { type: "string", multiple: true },
        out: { type: "string" },
        width: { type: "string" },
        height: { type: "string" },
        title: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
    });

    if (values.help) {
      process.stdout.write(USAGE + "\n");
      return 0;
    }
    if (!values.kind || !KINDS.includes(values.kind as FigureKind)) {
      throw new UsageError(`--kind must be one of: ${KINDS.join(", ")}`);
    }
    if (!values.in || values.in.length === 0 || !values.out) {
      throw new UsageError("--in and --out are required");
    }
    const options: RenderOptions = { title: values.title };
    if (values.width !== undefined) {
      options.width = Number(values.width);
      if (!Number.isFinite(options.width) || options.width <= 0) {
        throw new UsageError("--width must be a positive number");
      }
    }
    if (values.height !== undefined) {
      options.height = Number(values.height);
      if (!Number.isFinite(options.height) || options.height <= 0) {
        throw new UsageError("--height must be a positive number");
      }
    }

    const svg = renderFromFiles(values.kind as FigureKind, values.in, options);
    mkdirSync(dirname(values.out), { recursive: true });
    writeFileSync(values.out, svg, "utf8");
    process.stdout.write(`wrote ${values.out}\n`);
    return 0;
  } catch (error) {
    if (error instanceof SchemaMismatch) {
      process.stderr.write(`error: ${error.message}\n`);
      return 1;
    }
    if (error instanceof UsageError) {
      process.stderr.write(`error: ${error.message}\n${USAGE}\n`);
      return 2;
    }
    if (error instanceof Error) {
      process.stderr.write(`error: ${error.message}\n`);
      return 2;
    }
    throw error;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
