/**
 * Figure-style chart: per-size scatter of the measured corrections
 * min{f,1-f} n ln2 - S_bar against the subsystem fraction f, with the
 * closed-form overlay curve and its jump value at f = 1/2.
 */

import { CsvRow, SchemaError, requireNumber, rowsFor } from "./schema.js";
import { DEFAULT_FRAME, LinearScale, MARKER_SHAPES, axes, extentOf, marker,
         polyline, px, svgDocument } from "./svg.js";
import { theoryCorrection, theoryCorrectionSmooth } from "./theory.js";

export interface Figure1Series {
  n: number;
  points: Array<{ f: number; correction: number }>;
}

export interface Figure1Model {
  series: Figure1Series[];
  curve: Array<{ f: number; value: number }>;
  theoryAtHalf: number;
}

const CROSS_CHECK_TOL = 1e-9;

export function buildFigure1Model(rows: CsvRow[]): Figure1Model {
  const corrections = rowsFor(rows, "figure1", "correction");
  if (corrections.length === 0) {
    throw new SchemaError("figure1 CSV carries no correction rows; refusing to render");
  }
  const byN = new Map<number, Figure1Series>();
  for (const row of corrections) {
    const label = `correction row (n=${row.n}, f=${row.f})`;
    const n = requireNumber(row, "n", label);
    const f = requireNumber(row, "f", label);
    const value = requireNumber(row, "value", label);
    if (!byN.has(n)) {
      byN.set(n, { n, points: [] });
    }
    byN.get(n)!.points.push({ f, correction: value });
  }
  const series = [...byN.values()].sort((a, b) => a.n - b.n);
  for (const s of series) {
    s.points.sort((a, b) => a.f - b.f);
  }

  // the producer ships its own theory rows; the duplicated overlay formula
  // must agree with them or the chart would silently lie
  for (const row of rowsFor(rows, "figure1", "theory_correction")) {
    const f = requireNumber(row, "f", "theory row");
    const value = requireNumber(row, "value", "theory row");
    const mine = theoryCorrection(f);
    if (Math.abs(mine - value) > CROSS_CHECK_TOL) {
      throw new SchemaError(
        `theory cross-check failed at f=${f}: CSV says ${value}, overlay computes ${mine}`);
    }
  }

  const curve: Array<{ f: number; value: number }> = [];
  for (let i = 1; i <= 199; i++) {
    const f = i / 200;
    curve.push({ f, value: theoryCorrectionSmooth(f) });
  }
  return { series, curve, theoryAtHalf: theoryCorrection(0.5) };
}

const SERIES_COLORS = ["#1f4e9c", "#2a7fb8", "#46aed7", "#7fcbe8"];
const THEORY_COLOR = "#c62828";

export function renderFigure1(model: Figure1Model): string {
  const frame = DEFAULT_FRAME;
  const allF = model.series.flatMap((s) => s.points.map((p) => p.f));
  const allV = model.series.flatMap((s) => s.points.map((p) => p.correction));
  const xScale = new LinearScale(extentOf([...allF, 0.0, 1.0], 0.02),
                                 { min: frame.left, max: frame.width - frame.right });
  const yScale = new LinearScale(
    extentOf([...allV, 0.0, model.theoryAtHalf, ...model.curve.map((c) => c.value)]),
    { min: frame.height - frame.bottom, max: frame.top });

  const parts: string[] = [];
  parts.push(axes(frame, xScale, yScale, "subsystem fraction f",
                  "min{f,1-f} n ln2 - average entropy"));
  parts.push(polyline(
    model.curve.map((c) => [xScale.apply(c.f), yScale.apply(c.value)]),
    THEORY_COLOR));
  parts.push(marker("diamond", xScale.apply(0.5), yScale.apply(model.theoryAtHalf),
                    5, THEORY_COLOR,
                    `data-role="theory-at-half" data-value="${model.theoryAtHalf.toPrecision(17)}"`));
  model.series.forEach((s, idx) => {
    const shape = MARKER_SHAPES[idx % MARKER_SHAPES.length];
    const color = SERIES_COLORS[idx % SERIES_COLORS.length];
    for (const p of s.points) {
      parts.push(marker(shape, xScale.apply(p.f), yScale.apply(p.correction), 4,
                        color, `data-n="${s.n}" data-f="${p.f}"`));
    }
    const lx = frame.width - frame.right - 110;
    const ly = frame.top + 18 * (idx + 1);
    parts.push(marker(shape, lx, ly - 4, 4, color));
    parts.push(`<text x="${px(lx + 10)}" y="${px(ly)}" font-size="13">n = ${s.n}</text>`);
  });
  return svgDocument(frame, "average eigenstate entanglement corrections",
                     parts.join("\n"));
}
