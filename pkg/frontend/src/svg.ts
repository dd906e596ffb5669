/**
 * Static SVG rendering for the figure model.  String assembly only, so
 * identical input gives an identical file.
 *
 * The y-axis is always logarithmic.  Exact zeros (which the decoder does
 * produce, e.g. for a code that corrects every error in a fixture's
 * support) cannot sit on a log axis; they are drawn as open markers
 * pinned to the bottom edge, while dump-json keeps the true 0.0.
 */

import { Figure, Line, Panel } from "./plot";

const PANEL_W = 320;
const PANEL_H = 300;
const MARGIN_L = 78;
const MARGIN_R = 20;
const MARGIN_T = 46;
const MARGIN_B = 64;
const GAP = 56;
const LEGEND_W = 170;

const PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

interface Scale {
  toPixel(value: number): number;
  ticks: { value: number; label: string }[];
}

function fmtTick(value: number): string {
  if (value !== 0 && (Math.abs(value) < 1e-3 || Math.abs(value) >= 1e4)) {
    const exp = Math.round(Math.log10(Math.abs(value)));
    return `1e${exp}`;
  }
  return String(value);
}

function logScale(values: number[], lo: number, hi: number): Scale {
  const positive = values.filter((v) => v > 0);
  // an all-zero column still needs a frame to draw the markers against
  const vMin = positive.length > 0 ? Math.min(...positive) : 1e-6;
  const vMax = positive.length > 0 ? Math.max(...positive) : 1;
  let dLo = Math.floor(Math.log10(vMin));
  let dHi = Math.ceil(Math.log10(vMax));
  if (dHi === dLo) dHi += 1;
  const span = dHi - dLo;
  const toPixel = (value: number) => {
    if (value <= 0) return lo; // pixel of the axis minimum: bottom/left edge
    return lo + ((Math.log10(value) - dLo) / span) * (hi - lo);
  };
  const step = span <= 6 ? 1 : Math.ceil(span / 6);
  const ticks = [];
  for (let d = dLo; d <= dHi; d += step) {
    ticks.push({ value: Math.pow(10, d), label: `1e${d}` });
  }
  return { toPixel, ticks };
}

function linearScale(values: number[], lo: number, hi: number): Scale {
  let vMin = Math.min(...values);
  let vMax = Math.max(...values);
  if (vMin === vMax) {
    vMin -= 1;
    vMax += 1;
  }
  // nice step: 1/2/5 times a power of ten, at most ~6 intervals
  const rawStep = (vMax - vMin) / 5;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => (vMax - vMin) / s <= 6) as number;
  const tickLo = Math.ceil(vMin / step) * step;
  const ticks = [];
  for (let v = tickLo; v <= vMax + 1e-9 * step; v += step) {
    const rounded = Math.abs(v) < 1e-12 * step ? 0 : v;
    ticks.push({ value: rounded, label: fmtTick(Number(rounded.toPrecision(12))) });
  }
  const toPixel = (value: number) => lo + ((value - vMin) / (vMax - vMin)) * (hi - lo);
  return { toPixel, ticks };
}

function px(value: number): string {
  return value.toFixed(2);
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function renderPanel(panel: Panel, originX: number, figure: Figure, colors: Map<string, string>): string {
  const left = originX;
  const right = originX + PANEL_W;
  const top = MARGIN_T;
  const bottom = MARGIN_T + PANEL_H;

  const xs = panel.lines.flatMap((l) => l.points.map((p) => Number(p.x)));
  const ys = panel.lines.flatMap((l) => l.points.map((p) => Number(p.y)));
  const xScale = figure.xLog ? logScale(xs, left, right) : linearScale(xs, left, right);
  const yScale = logScale(ys, bottom, top);

  const parts: string[] = [];
  parts.push(`<rect x="${px(left)}" y="${px(top)}" width="${PANEL_W}" height="${PANEL_H}" fill="none" stroke="#333"/>`);
  if (panel.title !== "") {
    parts.push(`<text x="${px((left + right) / 2)}" y="${px(top - 10)}" text-anchor="middle" font-size="14">${esc(panel.title)}</text>`);
  }
  for (const tick of xScale.ticks) {
    const x = xScale.toPixel(tick.value);
    if (x < left - 0.01 || x > right + 0.01) continue;
    parts.push(`<line x1="${px(x)}" y1="${px(top)}" x2="${px(x)}" y2="${px(bottom)}" stroke="#ddd"/>`);
    parts.push(`<text x="${px(x)}" y="${px(bottom + 18)}" text-anchor="middle" font-size="11">${esc(tick.label)}</text>`);
  }
  for (const tick of yScale.ticks) {
    const y = yScale.toPixel(tick.value);
    parts.push(`<line x1="${px(left)}" y1="${px(y)}" x2="${px(right)}" y2="${px(y)}" stroke="#ddd"/>`);
    parts.push(`<text x="${px(left - 6)}" y="${px(y + 4)}" text-anchor="end" font-size="11">${esc(tick.label)}</text>`);
  }
  parts.push(`<text x="${px((left + right) / 2)}" y="${px(bottom + 40)}" text-anchor="middle" font-size="13">${esc(figure.xLabel)}</text>`);

  for (const line of panel.lines) {
    const color = colors.get(line.label) as string;
    const coords = line.points.map((p) => ({
      x: xScale.toPixel(Number(p.x)),
      y: yScale.toPixel(Number(p.y)),
      zero: Number(p.y) <= 0,
    }));
    const path = coords.map((c, i) => `${i === 0 ? "M" : "L"}${px(c.x)} ${px(c.y)}`).join(" ");
    parts.push(`<path d="${path}" fill="none" stroke="${color}" stroke-width="1.8"/>`);
    for (const c of coords) {
      if (c.zero) {
        parts.push(`<circle cx="${px(c.x)}" cy="${px(c.y)}" r="3.5" fill="white" stroke="${color}" stroke-width="1.5"/>`);
      } else {
        parts.push(`<circle cx="${px(c.x)}" cy="${px(c.y)}" r="2.8" fill="${color}"/>`);
      }
    }
  }
  return parts.join("\n");
}

export function renderSvg(figure: Figure): string {
  const labels: string[] = [];
  for (const panel of figure.panels) {
    for (const line of panel.lines) {
      if (!labels.includes(line.label)) labels.push(line.label);
    }
  }
  const colors = new Map(labels.map((l, i) => [l, PALETTE[i % PALETTE.length] as string]));

  const nPanels = figure.panels.length;
  const width = MARGIN_L + nPanels * PANEL_W + (nPanels - 1) * GAP + MARGIN_R + LEGEND_W;
  const height = MARGIN_T + PANEL_H + MARGIN_B;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  figure.panels.forEach((panel, i) => {
    parts.push(renderPanel(panel, MARGIN_L + i * (PANEL_W + GAP), figure, colors));
  });

  // shared y label, rotated along the left edge
  const yMid = MARGIN_T + PANEL_H / 2;
  parts.push(
    `<text x="16" y="${px(yMid)}" text-anchor="middle" font-size="13" transform="rotate(-90 16 ${px(yMid)})">${esc(figure.yLabel)}</text>`
  );

  const legendX = MARGIN_L + nPanels * PANEL_W + (nPanels - 1) * GAP + MARGIN_R;
  labels.forEach((label, i) => {
    const y = MARGIN_T + 14 + i * 22;
    parts.push(`<line x1="${legendX}" y1="${y}" x2="${legendX + 26}" y2="${y}" stroke="${colors.get(label)}" stroke-width="2"/>`);
    parts.push(`<text x="${legendX + 32}" y="${y + 4}" font-size="12">${esc(label)}</text>`);
  });
  parts.push("</svg>\n");
  return parts.join("\n");
}
