/**
 * Strict reader for the two CSV layouts the workbench CLI emits.
 *
 * Numeric fields are kept as the raw strings from the file so that the
 * dump-json output can echo them byte for byte; parsing to a number is
 * done once here only to validate the field.
 */

export const SWEEP_HEADER = "code,p,eta,logical_error_rate";
export const TAU_HEADER = "code,tau_ms,extrapolation,logical_error_rate";

export class CsvError extends Error {}

export interface SweepRow {
  code: string;
  p: string;
  eta: string;
  rate: string;
}

export interface TauRow {
  code: string;
  tauMs: string;
  extrapolation: string;
  rate: string;
}

export type Layout = "sweep" | "tau";

function splitLines(text: string): string[] {
  // the emitter writes \n; tolerate \r\n from files that passed through
  // other tools, and one trailing newline
  const lines = text.split("\n").map((l) => (l.endsWith("\r") ? l.slice(0, -1) : l));
  if (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  return lines;
}

function checkNumeric(field: string, value: string, lineNo: number): void {
  if (value === "" || !Number.isFinite(Number(value))) {
    throw new CsvError(`line ${lineNo}: ${field} is not a finite number: "${value}"`);
  }
}

export function detectLayout(headerLine: string): Layout {
  if (headerLine === SWEEP_HEADER) return "sweep";
  if (headerLine === TAU_HEADER) return "tau";
  throw new CsvError(
    `unknown header "${headerLine}"; expected "${SWEEP_HEADER}" or "${TAU_HEADER}"`
  );
}

export function parseSweep(text: string): SweepRow[] {
  const lines = splitLines(text);
  if (lines.length === 0) throw new CsvError("empty file");
  if (detectLayout(lines[0] as string) !== "sweep") {
    throw new CsvError(`header "${lines[0]}" is the tau layout, not the sweep layout`);
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = (lines[i] as string).split(",");
    if (parts.length !== 4) {
      throw new CsvError(`line ${i + 1}: expected 4 fields, got ${parts.length}`);
    }
    const [code, p, eta, rate] = parts as [string, string, string, string];
    checkNumeric("p", p, i + 1);
    checkNumeric("eta", eta, i + 1);
    checkNumeric("logical_error_rate", rate, i + 1);
    rows.push({ code, p, eta, rate });
  }
  if (rows.length === 0) throw new CsvError("no data rows");
  return rows;
}

export function parseTau(text: string): TauRow[] {
  const lines = splitLines(text);
  if (lines.length === 0) throw new CsvError("empty file");
  if (detectLayout(lines[0] as string) !== "tau") {
    throw new CsvError(`header "${lines[0]}" is the sweep layout, not the tau layout`);
  }
  const rows: TauRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = (lines[i] as string).split(",");
    if (parts.length !== 4) {
      throw new CsvError(`line ${i + 1}: expected 4 fields, got ${parts.length}`);
    }
    const [code, tauMs, extrapolation, rate] = parts as [string, string, string, string];
    checkNumeric("tau_ms", tauMs, i + 1);
    checkNumeric("logical_error_rate", rate, i + 1);
    rows.push({ code, tauMs, extrapolation, rate });
  }
  if (rows.length === 0) throw new CsvError("no data rows");
  return rows;
}
