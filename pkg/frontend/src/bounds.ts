/** Bound-slack chart: per-eigenstate slack against energy, one color per n. */

import { CsvRow, SchemaError, requireNumber, rowsFor } from "./schema.js";
import { DEFAULT_FRAME, LinearScale, axes, extentOf, marker, polyline, px,
         svgDocument } from "./svg.js";

export interface BoundsSeries {
  n: number;
  points: Array<{ energy: number; slack: number }>;
}

export interface BoundsModel {
  series: BoundsSeries[];
  violations: number;
}

export function buildBoundsModel(rows: CsvRow[]): BoundsModel {
  const slackRows = rowsFor(rows, "bounds", "eigenstate_bound_slack");
  if (slackRows.length === 0) {
    throw new SchemaError("bounds CSV carries no eigenstate slack rows; refusing to render");
  }
  const byN = new Map<number, BoundsSeries>();
  let violations = 0;
  for (const row of slackRows) {
    const label = `slack row (n=${row.n}, j=${row.j})`;
    const n = requireNumber(row, "n", label);
    const energy = requireNumber(row, "energy", label);
    const slack = requireNumber(row, "value", label);
    if (slack < -1e-9) {
      violations += 1;
    }
    if (!byN.has(n)) {
      byN.set(n, { n, points: [] });
    }
    byN.get(n)!.points.push({ energy, slack });
  }
  const series = [...byN.values()].sort((a, b) => a.n - b.n);
  for (const s of series) {
    s.points.sort((a, b) => a.energy - b.energy || a.slack - b.slack);
  }
  return { series, violations };
}

const COLORS = ["#2e7d32", "#1565c0", "#6a1b9a", "#ef6c00"];

export function renderBounds(model: BoundsModel): string {
  const frame = DEFAULT_FRAME;
  const energies = model.series.flatMap((s) => s.points.map((p) => p.energy));
  const slacks = model.series.flatMap((s) => s.points.map((p) => p.slack));
  const xScale = new LinearScale(extentOf(energies),
                                 { min: frame.left, max: frame.width - frame.right });
  const yScale = new LinearScale(extentOf([...slacks, 0.0]),
                                 { min: frame.height - frame.bottom, max: frame.top });
  const parts: string[] = [];
  parts.push(axes(frame, xScale, yScale, "eigenstate energy", "bound - entropy"));
  parts.push(polyline(
    [[frame.left, yScale.apply(0)], [frame.width - frame.right, yScale.apply(0)]],
    "#999999", 1.0));
  model.series.forEach((s, idx) => {
    const color = COLORS[idx % COLORS.length];
    for (const p of s.points) {
      const bad = p.slack < -1e-9;
      parts.push(marker("circle", xScale.apply(p.energy), yScale.apply(p.slack),
                        2.5, bad ? "#d50000" : color,
                        bad ? 'data-role="violation"' : ""));
    }
    if (model.series.length >= 2) {
      const lx = frame.width - frame.right - 90;
      const ly = frame.top + 18 * (idx + 1);
      parts.push(marker("circle", lx, ly - 4, 3.5, color));
      parts.push(`<text x="${px(lx + 10)}" y="${px(ly)}" font-size="13">n = ${s.n}</text>`);
    }
  });
  return svgDocument(frame, "entropy bound slack per eigenstate", parts.join("\n"));
}
