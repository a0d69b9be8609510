#!/usr/bin/env node
/** figure_gen <figure-id> --in <dir> --out <file>
 *
 * Renders one figure bundle (produced by `pointfeedback reproduce` or
 * `pointfeedback region`) to an SVG file. Exit codes: 0 success (possibly
 * with warnings on stderr), 1 missing/invalid/mismatched input, 2 usage.
 */

import { mkdirSync, realpathSync, writeFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { parseArgs } from "node:util";

import { BundleError, FIGURE_IDS, FigureId, loadBundle } from "./bundle.js";
import { CsvFormatError } from "./csv.js";
import { renderFigure } from "./figures.js";

export interface Io {
  out(line: string): void;
  err(line: string): void;
}

const USAGE = `usage: figure_gen <figure-id> --in <dir> --out <file>
  figure-id: one of ${FIGURE_IDS.join(", ")}
  --in   directory containing the figure's bundle (manifest + CSVs)
  --out  SVG file to write`;

export function run(argv: string[], io: Io): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
    });
  } catch (err) {
    io.err(`error: ${(err as Error).message}`);
    io.err(USAGE);
    return 2;
  }
  if (parsed.values.help) {
    io.out(USAGE);
    return 0;
  }
  const positionals = parsed.positionals;
  if (positionals.length !== 1) {
    io.err(`error: expected exactly one figure id, got ${positionals.length}`);
    io.err(USAGE);
    return 2;
  }
  const figureId = positionals[0] as string;
  if (!(FIGURE_IDS as readonly string[]).includes(figureId)) {
    io.err(`error: unknown figure id ${JSON.stringify(figureId)}`);
    io.err(USAGE);
    return 2;
  }
  const inDir = parsed.values.in;
  const outFile = parsed.values.out;
  if (typeof inDir !== "string" || typeof outFile !== "string") {
    io.err("error: both --in and --out are required");
    io.err(USAGE);
    return 2;
  }

  try {
    const bundle = loadBundle(figureId as FigureId, inDir);
    const { svg, warnings } = renderFigure(figureId as FigureId, bundle);
    for (const w of warnings) {
      io.err(`warning: ${w}`);
    }
    mkdirSync(dirname(outFile), { recursive: true });
    writeFileSync(outFile, svg, "utf8");
    io.out(`wrote ${outFile}`);
    return 0;
  } catch (err) {
    if (err instanceof BundleError || err instanceof CsvFormatError) {
      io.err(`error: ${err.message}`);
      return 1;
    }
    io.err(`internal error: ${(err as Error).stack ?? String(err)}`);
    return 1;
  }
}

function isMain(): boolean {
  const entry = process.argv[1];
  if (typeof entry !== "string") return false;
  try {
    return realpathSync(resolve(entry)) === realpathSync(fileURLToPath(import.meta.url));
  } catch {
    return false;
  }
}

if (isMain()) {
  process.exit(
    run(process.argv.slice(2), {
      out: (line) => console.log(line),
      err: (line) => console.error(line),
    }),
  );
}
