/**
 * Deterministic software rasterizer.
 *
 * Frames are drawn into a plain RGBA byte array with integer blending
 * and scanline polygon fill, so the same geometry always produces the
 * same bytes on every platform.  That is what makes "replaying a session
 * gives a pixel-identical frame" a testable statement; an HTML canvas
 * with antialiasing would not.  The browser app blits the buffer with
 * putImageData.
 */

export type RGBA = [number, number, number, number];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8ClampedArray;

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.data = new Uint8ClampedArray(width * height * 4);
  }

  clear(color: RGBA): void {
    const [r, g, b, a] = color;
    for (let i = 0; i < this.data.length; i += 4) {
      this.data[i] = r;
      this.data[i + 1] = g;
      this.data[i + 2] = b;
      this.data[i + 3] = a;
    }
  }

  blend(x: number, y: number, color: RGBA): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    const a = color[3];
    const na = 255 - a;
    const d = this.data;
    d[i] = (color[0] * a + d[i] * na + 127) / 255 | 0;
    d[i + 1] = (color[1] * a + d[i + 1] * na + 127) / 255 | 0;
    d[i + 2] = (color[2] * a + d[i + 2] * na + 127) / 255 | 0;
    d[i + 3] = Math.min(255, a + (d[i + 3] * na + 127) / 255 | 0);
  }
}

/**
 * Even-odd scanline fill against pixel centers.  Points are in pixel
 * coordinates; the polygon closes itself.  rowStep > 1 paints only every
 * rowStep-th scanline, giving a cheap deterministic hatch.
 */
export function fillPolygon(
  r: Raster,
  pts: [number, number][],
  color: RGBA,
  rowStep = 1,
): void {
  if (pts.length < 3) return;
  let ymin = Infinity;
  let ymax = -Infinity;
  for (const [, y] of pts) {
    ymin = Math.min(ymin, y);
    ymax = Math.max(ymax, y);
  }
  const y0 = Math.max(0, Math.floor(ymin));
  const y1 = Math.min(r.height - 1, Math.ceil(ymax));
  for (let py = y0; py <= y1; py++) {
    if (rowStep > 1 && py % rowStep !== 0) continue;
    const yc = py + 0.5;
    const xs: number[] = [];
    for (let i = 0; i < pts.length; i++) {
      const [ax, ay] = pts[i];
      const [bx, by] = pts[(i + 1) % pts.length];
      // half-open rule: count the low endpoint, skip the high one
      if (ay <= yc !== by <= yc) {
        xs.push(ax + ((yc - ay) / (by - ay)) * (bx - ax));
      }
    }
    xs.sort((a, b) => a - b);
    for (let i = 0; i + 1 < xs.length; i += 2) {
      const x0 = Math.max(0, Math.ceil(xs[i] - 0.5));
      const x1 = Math.min(r.width - 1, Math.floor(xs[i + 1] - 0.5));
      for (let px = x0; px <= x1; px++) r.blend(px, py, color);
    }
  }
}

/** Square-brush line walk; width in whole pixels. */
export function strokeLine(
  r: Raster,
  a: [number, number],
  b: [number, number],
  color: RGBA,
  width = 1,
): void {
  const x0 = a[0];
  const y0 = a[1];
  const dx = b[0] - x0;
  const dy = b[1] - y0;
  const steps = Math.max(1, Math.ceil(Math.max(Math.abs(dx), Math.abs(dy))));
  const half = Math.floor(width / 2);
  let lastx = NaN;
  let lasty = NaN;
  for (let s = 0; s <= steps; s++) {
    const px = Math.round(x0 + (dx * s) / steps);
    const py = Math.round(y0 + (dy * s) / steps);
    if (px === lastx && py === lasty) continue;
    lastx = px;
    lasty = py;
    for (let oy = -half; oy <= half; oy++) {
      for (let ox = -half; ox <= half; ox++) {
        r.blend(px + ox, py + oy, color);
      }
    }
  }
}

export function strokePolyline(
  r: Raster,
  pts: [number, number][],
  color: RGBA,
  width = 1,
  close = false,
): void {
  const n = pts.length;
  for (let i = 0; i + 1 < n; i++) strokeLine(r, pts[i], pts[i + 1], color, width);
  if (close && n > 2) strokeLine(r, pts[n - 1], pts[0], color, width);
}

export function fillRect(
  r: Raster,
  x: number,
  y: number,
  w: number,
  h: number,
  color: RGBA,
): void {
  const px0 = Math.max(0, Math.round(x));
  const py0 = Math.max(0, Math.round(y));
  const px1 = Math.min(r.width - 1, Math.round(x + w) - 1);
  const py1 = Math.min(r.height - 1, Math.round(y + h) - 1);
  for (let py = py0; py <= py1; py++) {
    for (let px = px0; px <= px1; px++) r.blend(px, py, color);
  }
}

/** Hollow diamond marker, used for circumcenter indicators. */
export function strokeDiamond(
  r: Raster,
  x: number,
  y: number,
  radius: number,
  color: RGBA,
  width = 1,
): void {
  const pts: [number, number][] = [
    [x, y - radius],
    [x + radius, y],
    [x, y + radius],
    [x - radius, y],
  ];
  strokePolyline(r, pts, color, width, true);
}

/** FNV-1a over the RGBA bytes; stable fingerprint for frame comparison. */
export function frameHash(r: Raster): string {
  let h = 0x811c9dc5;
  const d = r.data;
  for (let i = 0; i < d.length; i++) {
    h ^= d[i];
    h = Math.imul(h, 0x01000193);
  }
  return (h >>> 0).toString(16).padStart(8, "0");
}
