/**
 * Tiny software rasterizer: RGBA pixel buffer with lines (solid or dotted),
 * rectangles and bitmap text. Everything is integer pixel work, so output is
 * identical across runs and platforms.
 */

import { GLYPHS, GLYPH_HEIGHT, GLYPH_WIDTH } from "./font";

export type Color = [number, number, number];

export const BLACK: Color = [0, 0, 0];
export const GRAY: Color = [110, 110, 110];
export const LIGHT_GRAY: Color = [210, 210, 210];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    this.pixels.fill(255); // opaque white
  }

  setPixel(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) {
      return;
    }
    const offset = (y * this.width + x) * 4;
    this.pixels[offset] = color[0];
    this.pixels[offset + 1] = color[1];
    this.pixels[offset + 2] = color[2];
    this.pixels[offset + 3] = 255;
  }

  /** Bresenham line; dash = [on, off] pixel pattern, empty for solid. */
  drawLine(x0: number, y0: number, x1: number, y1: number, color: Color, dash: number[] = []): void {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xEnd = Math.round(x1);
    const yEnd = Math.round(y1);
    const dx = Math.abs(xEnd - x);
    const dy = -Math.abs(yEnd - y);
    const sx = x < xEnd ? 1 : -1;
    const sy = y < yEnd ? 1 : -1;
    let err = dx + dy;
    let step = 0;
    const period = dash.length === 2 ? dash[0] + dash[1] : 0;
    for (;;) {
      if (period === 0 || step % period < dash[0]) {
        this.setPixel(x, y, color);
      }
      if (x === xEnd && y === yEnd) {
        break;
      }
      const doubled = 2 * err;
      if (doubled >= dy) {
        err += dy;
        x += sx;
      }
      if (doubled <= dx) {
        err += dx;
        y += sy;
      }
      step += 1;
    }
  }

  drawRect(x0: number, y0: number, x1: number, y1: number, color: Color): void {
    this.drawLine(x0, y0, x1, y0, color);
    this.drawLine(x1, y0, x1, y1, color);
    this.drawLine(x1, y1, x0, y1, color);
    this.drawLine(x0, y1, x0, y0, color);
  }

  drawText(x: number, y: number, text: string, color: Color): void {
    let penX = Math.round(x);
    const top = Math.round(y);
    for (const ch of text) {
      const glyph = GLYPHS[ch];
      if (glyph !== undefined) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          const bits = glyph[col];
          for (let row = 0; row < GLYPH_HEIGHT; row++) {
            if (bits & (1 << row)) {
              this.setPixel(penX + col, top + row, color);
            }
          }
        }
      }
      penX += GLYPH_WIDTH + 1;
    }
  }
}

export function textWidth(text: string): number {
  return text.length * (GLYPH_WIDTH + 1) - 1;
}
