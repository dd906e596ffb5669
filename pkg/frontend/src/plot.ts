/**
 * Figure model: CSV rows grouped into panels and lines, nothing dropped,
 * nothing reordered beyond the grouping itself.
 */

import { parseSweep, parseTau, SweepRow, TauRow } from "./csv";

export type Mode = "bias-sweep" | "rate-sweep" | "tau-sweep";

export const MODES: Mode[] = ["bias-sweep", "rate-sweep", "tau-sweep"];

export interface PlotSpec {
  csvPath: string;
  mode: Mode;
  outPath: string;
  dumpJsonPath?: string;
}

/** x and y stay raw CSV strings; value() is for scales only. */
export interface Point {
  x: string;
  y: string;
}

export interface Line {
  label: string;
  points: Point[];
}

export interface Panel {
  title: string;
  lines: Line[];
}

export interface Figure {
  mode: Mode;
  xLabel: string;
  yLabel: string;
  xLog: boolean;
  panels: Panel[];
}

/** Group rows by key in first-appearance order. */
function groupBy<T>(rows: T[], key: (row: T) => string): Map<string, T[]> {
  const out = new Map<string, T[]>();
  for (const row of rows) {
    const k = key(row);
    const bucket = out.get(k);
    if (bucket) bucket.push(row);
    else out.set(k, [row]);
  }
  return out;
}

function sweepFigure(
  rows: SweepRow[],
  panelKey: (r: SweepRow) => string,
  panelTitle: (k: string) => string,
  x: (r: SweepRow) => string
): Panel[] {
  const panels: Panel[] = [];
  for (const [k, panelRows] of groupBy(rows, panelKey)) {
    const lines: Line[] = [];
    for (const [code, lineRows] of groupBy(panelRows, (r) => r.code)) {
      lines.push({
        label: code,
        points: lineRows.map((r) => ({ x: x(r), y: r.rate })),
      });
    }
    panels.push({ title: panelTitle(k), lines });
  }
  return panels;
}

function tauFigure(rows: TauRow[]): Panel[] {
  const extrapolations = new Set(rows.map((r) => r.extrapolation));
  // one line per code; if several extrapolations share the file, the
  // extrapolation has to join the label to keep the lines apart
  const lineKey =
    extrapolations.size > 1
      ? (r: TauRow) => `${r.code} (${r.extrapolation})`
      : (r: TauRow) => r.code;
  const lines: Line[] = [];
  for (const [label, lineRows] of groupBy(rows, lineKey)) {
    lines.push({ label, points: lineRows.map((r) => ({ x: r.tauMs, y: r.rate })) });
  }
  return [{ title: "", lines }];
}

export function buildFigure(mode: Mode, csvText: string): Figure {
  if (mode === "tau-sweep") {
    return {
      mode,
      xLabel: "tau (ms)",
      yLabel: "logical error rate",
      xLog: false,
      panels: tauFigure(parseTau(csvText)),
    };
  }
  const rows = parseSweep(csvText);
  if (mode === "bias-sweep") {
    return {
      mode,
      xLabel: "bias eta",
      yLabel: "logical error rate",
      xLog: true,
      panels: sweepFigure(rows, (r) => r.p, (p) => `p = ${p}`, (r) => r.eta),
    };
  }
  return {
    mode,
    xLabel: "physical error rate p",
    yLabel: "logical error rate",
    xLog: true,
    panels: sweepFigure(rows, (r) => r.eta, (eta) => `eta = ${eta}`, (r) => r.p),
  };
}

/**
 * JSON echo of the plotted points.  The numeric strings from the CSV are
 * spliced in verbatim as JSON number literals (every float the emitter
 * writes is legal JSON), so values survive byte for byte.
 */
export function dumpJson(figure: Figure): string {
  const panels = figure.panels
    .map((panel) => {
      const lines = panel.lines
        .map((line) => {
          const pts = line.points.map((pt) => `{"x":${pt.x},"y":${pt.y}}`).join(",");
          return `{"label":${JSON.stringify(line.label)},"points":[${pts}]}`;
        })
        .join(",");
      return `{"title":${JSON.stringify(panel.title)},"lines":[${lines}]}`;
    })
    .join(",");
  return `{"mode":${JSON.stringify(figure.mode)},"panels":[${panels}]}\n`;
}

export function isMode(value: string): value is Mode {
  return (MODES as string[]).includes(value);
}
