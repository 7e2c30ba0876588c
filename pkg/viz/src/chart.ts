/** Line-chart layout: axes box, nice ticks, labels, legend, stacked panels. */

import { Color, Raster, TEXT_HEIGHT_UNITS, textWidth } from './raster.js';

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: Color;
  thickness?: number;
}

export interface PanelSpec {
  series: Series[];
  xLabel: string;
  yLabel: string;
}

const BLACK: Color = [0, 0, 0];
const GREY: Color = [150, 150, 150];

function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
    lo -= 1;
  }
  const span = hi - lo;
  const raw = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * mag);
  const step = candidates.find((c) => span / c <= target) ?? candidates[candidates.length - 1];
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

function formatTick(v: number): string {
  if (v === 0) return '0';
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return parseFloat(v.toPrecision(4)).toString();
}

function dataRange(series: Series[], pick: (s: Series) => number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    for (const v of pick(s)) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!Number.isFinite(lo) || !Number.isFinite(hi)) return [0, 1];
  if (lo === hi) return [lo - 1, hi + 1];
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}

function drawPanel(img: Raster, panel: PanelSpec, left: number, top: number,
                   width: number, height: number): void {
  const [xLo, xHi] = dataRange(panel.series, (s) => s.x);
  const [yLo, yHi] = dataRange(panel.series, (s) => s.y);
  const toPx = (x: number) => left + ((x - xLo) / (xHi - xLo)) * width;
  const toPy = (y: number) => top + height - ((y - yLo) / (yHi - yLo)) * height;

  // frame and ticks
  img.line(left, top, left, top + height, BLACK);
  img.line(left, top + height, left + width, top + height, BLACK);
  img.line(left + width, top, left + width, top + height, GREY);
  img.line(left, top, left + width, top, GREY);
  for (const t of niceTicks(xLo, xHi)) {
    const px = toPx(t);
    img.line(px, top + height, px, top + height + 6, BLACK);
    const label = formatTick(t);
    img.text(px - textWidth(label) / 2, top + height + 10, label, BLACK);
  }
  for (const t of niceTicks(yLo, yHi)) {
    const py = toPy(t);
    img.line(left - 6, py, left, py, BLACK);
    const label = formatTick(t);
    img.text(left - 10 - textWidth(label), py - TEXT_HEIGHT_UNITS, label, BLACK);
  }
  // zero line when visible
  if (yLo < 0 && yHi > 0) {
    img.line(left, toPy(0), left + width, toPy(0), [210, 210, 210]);
  }
  // series
  for (const s of panel.series) {
    img.polyline(s.x.map(toPx), s.y.map(toPy), s.color, s.thickness ?? 2);
  }
  // axis labels
  img.text(left + width / 2 - textWidth(panel.xLabel) / 2,
           top + height + 32, panel.xLabel, BLACK);
  img.text(left + 4, top + 6, panel.yLabel, BLACK);
  // legend, top-right inside the frame
  let ly = top + 8;
  for (const s of panel.series) {
    const lx = left + width - textWidth(s.label) - 46;
    img.line(lx, ly + TEXT_HEIGHT_UNITS, lx + 28, ly + TEXT_HEIGHT_UNITS, s.color, 3);
    img.text(lx + 34, ly, s.label, BLACK);
    ly += TEXT_HEIGHT_UNITS * 2 + 8;
  }
}

export function renderChart(title: string, panels: PanelSpec[],
                            width = 960, height = 640): Raster {
  const img = new Raster(width, height);
  img.text(width / 2 - textWidth(title, 2) / 2, 10, title, BLACK, 2);
  const marginLeft = 86;
  const marginRight = 24;
  const top0 = 44;
  const bottomPad = 56;
  const gap = 30;
  const usable = height - top0 - bottomPad - gap * (panels.length - 1);
  // first panel gets the lion's share when a residual strip follows
  const weights = panels.length === 2 ? [0.72, 0.28] : panels.map(() => 1 / panels.length);
  let top = top0;
  panels.forEach((panel, i) => {
    const panelHeight = Math.round(usable * weights[i]);
    drawPanel(img, panel, marginLeft, top, width - marginLeft - marginRight, panelHeight);
    top += panelHeight + gap;
  });
  return img;
}
