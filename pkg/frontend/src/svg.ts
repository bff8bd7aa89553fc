/** Minimal deterministic SVG scatter/line primitives (no DOM, no deps). */

export interface Extent {
  min: number;
  max: number;
}

export function extentOf(values: number[], padFraction = 0.06): Extent {
  if (values.length === 0) {
    throw new Error("cannot derive an axis range from no values");
  }
  let min = Math.min(...values);
  let max = Math.max(...values);
  if (min === max) {
    min -= 0.5;
    max += 0.5;
  }
  const pad = (max - min) * padFraction;
  return { min: min - pad, max: max + pad };
}

export class LinearScale {
  constructor(readonly domain: Extent, readonly range: Extent) {}

  apply(x: number): number {
    const t = (x - this.domain.min) / (this.domain.max - this.domain.min);
    return this.range.min + t * (this.range.max - this.range.min);
  }

  invert(px: number): number {
    const t = (px - this.range.min) / (this.range.max - this.range.min);
    return this.domain.min + t * (this.domain.max - this.domain.min);
  }
}

const COORD_DIGITS = 2;

export function px(x: number): string {
  return x.toFixed(COORD_DIGITS);
}

export function ticks(domain: Extent, count = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(domain.min + ((domain.max - domain.min) * i) / (count - 1));
  }
  return out;
}

export const MARKER_SHAPES = ["circle", "square", "triangle", "diamond"] as const;
export type MarkerShape = (typeof MARKER_SHAPES)[number];

export function marker(shape: MarkerShape, x: number, y: number, size: number,
                       color: string, extraAttrs = ""): string {
  const s = size;
  const at = extraAttrs ? ` ${extraAttrs}` : "";
  switch (shape) {
    case "circle":
      return `<circle cx="${px(x)}" cy="${px(y)}" r="${px(s)}" fill="${color}"${at}/>`;
    case "square":
      return `<rect x="${px(x - s)}" y="${px(y - s)}" width="${px(2 * s)}" height="${px(2 * s)}" fill="${color}"${at}/>`;
    case "triangle":
      return `<polygon points="${px(x)},${px(y - s)} ${px(x - s)},${px(y + s)} ${px(x + s)},${px(y + s)}" fill="${color}"${at}/>`;
    case "diamond":
      return `<polygon points="${px(x)},${px(y - s)} ${px(x + s)},${px(y)} ${px(x)},${px(y + s)} ${px(x - s)},${px(y)}" fill="${color}"${at}/>`;
  }
}

export function polyline(points: Array<[number, number]>, color: string,
                         width = 1.5): string {
  const coords = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
  return `<polyline points="${coords}" fill="none" stroke="${color}" stroke-width="${width}"/>`;
}

export interface Frame {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const DEFAULT_FRAME: Frame = {
  width: 760, height: 520, left: 70, right: 20, top: 30, bottom: 55,
};

export function axes(frame: Frame, xScale: LinearScale, yScale: LinearScale,
                     xLabel: string, yLabel: string): string {
  const parts: string[] = [];
  const x0 = frame.left;
  const x1 = frame.width - frame.right;
  const y0 = frame.height - frame.bottom;
  const y1 = frame.top;
  parts.push(`<line x1="${px(x0)}" y1="${px(y0)}" x2="${px(x1)}" y2="${px(y0)}" stroke="black"/>`);
  parts.push(`<line x1="${px(x0)}" y1="${px(y0)}" x2="${px(x0)}" y2="${px(y1)}" stroke="black"/>`);
  for (const t of ticks(xScale.domain)) {
    const xp = xScale.apply(t);
    parts.push(`<line x1="${px(xp)}" y1="${px(y0)}" x2="${px(xp)}" y2="${px(y0 + 5)}" stroke="black"/>`);
    parts.push(`<text x="${px(xp)}" y="${px(y0 + 20)}" text-anchor="middle" font-size="12">${t.toPrecision(3)}</text>`);
  }
  for (const t of ticks(yScale.domain)) {
    const yp = yScale.apply(t);
    parts.push(`<line x1="${px(x0 - 5)}" y1="${px(yp)}" x2="${px(x0)}" y2="${px(yp)}" stroke="black"/>`);
    parts.push(`<text x="${px(x0 - 8)}" y="${px(yp + 4)}" text-anchor="end" font-size="12">${t.toPrecision(3)}</text>`);
  }
  parts.push(`<text x="${px((x0 + x1) / 2)}" y="${px(frame.height - 12)}" text-anchor="middle" font-size="14">${xLabel}</text>`);
  parts.push(`<text x="16" y="${px((y0 + y1) / 2)}" text-anchor="middle" font-size="14" transform="rotate(-90 16 ${px((y0 + y1) / 2)})">${yLabel}</text>`);
  return parts.join("\n");
}

export function svgDocument(frame: Frame, title: string, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" viewBox="0 0 ${frame.width} ${frame.height}">`,
    `<title>${title}</title>`,
    `<rect width="${frame.width}" height="${frame.height}" fill="white"/>`,
    body,
    "</svg>",
    "",
  ].join("\n");
}
