export { CsvError, parseSweep, parseTau, detectLayout, SWEEP_HEADER, TAU_HEADER } from "./csv";
export type { SweepRow, TauRow } from "./csv";
export { buildFigure, dumpJson, isMode, MODES } from "./plot";
export type { Figure, Line, Mode, Panel, PlotSpec, Point } from "./plot";
export { renderSvg } from "./svg";
export { main, parseArgs } from "./cli";
