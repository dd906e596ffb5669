/**
 * plot <csv> --mode <bias-sweep|rate-sweep|tau-sweep> --out <file.svg>
 *            [--dump-json <file.json>]
 *
 * Renders a result CSV to a static SVG.  Exit codes match the producing
 * CLI: 0 ok, 2 usage, 3 unreadable or malformed data.  Both output files
 * are assembled in memory before anything is written, so a failure never
 * leaves a partial image behind.
 */

import { readFileSync, writeFileSync } from "fs";
import { CsvError } from "./csv";
import { buildFigure, isMode, Mode, MODES, PlotSpec } from "./plot";
import { dumpJson } from "./plot";
import { renderSvg } from "./svg";

const USAGE = `usage: plot <csv> --mode <${MODES.join("|")}> --out <file.svg> [--dump-json <file.json>]`;

class UsageError extends Error {}

export function parseArgs(argv: string[]): PlotSpec {
  let csvPath: string | undefined;
  let mode: Mode | undefined;
  let outPath: string | undefined;
  let dumpJsonPath: string | undefined;

  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i] as string;
    const next = (flag: string): string => {
      const v = argv[++i];
      if (v === undefined) throw new UsageError(`${flag} needs a value`);
      return v;
    };
    if (arg === "--mode") {
      const v = next(arg);
      if (!isMode(v)) throw new UsageError(`unknown mode "${v}"; choose from ${MODES.join(", ")}`);
      mode = v;
    } else if (arg === "--out") {
      outPath = next(arg);
    } else if (arg === "--dump-json") {
      dumpJsonPath = next(arg);
    } else if (arg === "--help" || arg === "-h") {
      throw new UsageError(USAGE);
    } else if (arg.startsWith("-")) {
      throw new UsageError(`unknown flag ${arg}`);
    } else if (csvPath === undefined) {
      csvPath = arg;
    } else {
      throw new UsageError(`unexpected argument ${arg}`);
    }
  }
  if (csvPath === undefined) throw new UsageError("missing input CSV path");
  if (mode === undefined) throw new UsageError("--mode is required");
  if (outPath === undefined) throw new UsageError("--out is required");
  return { csvPath, mode, outPath, dumpJsonPath };
}

export function run(spec: PlotSpec): void {
  const text = readFileSync(spec.csvPath, "utf8");
  const figure = buildFigure(spec.mode, text);
  const svg = renderSvg(figure);
  const json = spec.dumpJsonPath !== undefined ? dumpJson(figure) : undefined;
  writeFileSync(spec.outPath, svg);
  if (json !== undefined && spec.dumpJsonPath !== undefined) {
    writeFileSync(spec.dumpJsonPath, json);
  }
}

export function main(argv: string[]): number {
  let spec: PlotSpec;
  try {
    spec = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n${USAGE}\n`);
    return 2;
  }
  if (!spec.outPath.endsWith(".svg")) {
    process.stderr.write(`note: output is SVG markup regardless of the ${spec.outPath} extension\n`);
  }
  try {
    run(spec);
  } catch (err) {
    if (err instanceof CsvError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 3;
    }
    const code = (err as NodeJS.ErrnoException).code;
    if (code === "ENOENT" || code === "EACCES" || code === "EISDIR") {
      process.stderr.write(`error: ${(err as Error).message}\n`);
      return 3;
    }
    throw err;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
