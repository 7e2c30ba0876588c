/** A tiny RGBA raster with just enough drawing for line charts. */

import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphColumns } from './font.js';

export type Color = readonly [number, number, number, number?];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Color = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: Color): void {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    this.pixels[i] = color[0];
    this.pixels[i + 1] = color[1];
    this.pixels[i + 2] = color[2];
    this.pixels[i + 3] = color[3] ?? 255;
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Color): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.set(x, y, color);
      }
    }
  }

  /** Bresenham segment with optional thickness (square pen). */
  line(x0: number, y0: number, x1: number, y1: number, color: Color, thickness = 1): void {
    let ix0 = Math.round(x0);
    let iy0 = Math.round(y0);
    const ix1 = Math.round(x1);
    const iy1 = Math.round(y1);
    const dx = Math.abs(ix1 - ix0);
    const dy = -Math.abs(iy1 - iy0);
    const sx = ix0 < ix1 ? 1 : -1;
    const sy = iy0 < iy1 ? 1 : -1;
    let err = dx + dy;
    const pen = Math.max(0, Math.floor((thickness - 1) / 2));
    for (;;) {
      if (pen === 0) {
        this.set(ix0, iy0, color);
      } else {
        for (let oy = -pen; oy <= pen; oy++) {
          for (let ox = -pen; ox <= pen; ox++) {
            this.set(ix0 + ox, iy0 + oy, color);
          }
        }
      }
      if (ix0 === ix1 && iy0 === iy1) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        ix0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        iy0 += sy;
      }
    }
  }

  polyline(xs: number[], ys: number[], color: Color, thickness = 1): void {
    for (let i = 1; i < xs.length; i++) {
      this.line(xs[i - 1], ys[i - 1], xs[i], ys[i], color, thickness);
    }
  }

  text(x: number, y: number, message: string, color: Color, scale = 2): void {
    let cx = Math.round(x);
    for (const ch of message) {
      const columns = glyphColumns(ch);
      for (let col = 0; col < GLYPH_WIDTH; col++) {
        for (let row = 0; row < GLYPH_HEIGHT; row++) {
          if ((columns[col] >> row) & 1) {
            this.fillRect(cx + col * scale, Math.round(y) + row * scale, scale, scale, color);
          }
        }
      }
      cx += (GLYPH_WIDTH + 1) * scale;
    }
  }
}

export function textWidth(message: string, scale = 2): number {
  return message.length * (GLYPH_WIDTH + 1) * scale;
}

export const TEXT_HEIGHT_UNITS = GLYPH_HEIGHT;
