/**
 * Strict reader for the versioned experiment CSV schema (version 1).
 * Anything that does not match the documented header, version, or numeric
 * format is refused with a descriptive error; this tool never guesses.
 */

export const SCHEMA_VERSION = "1";

export const SCHEMA_COLUMNS = [
  "schema_version", "experiment", "quantity", "n", "m", "f", "j", "sector",
  "seed", "value", "uncertainty", "energy", "code_version", "timestamp",
] as const;

export type ColumnName = (typeof SCHEMA_COLUMNS)[number];

export type CsvRow = Record<ColumnName, string>;

export class SchemaError extends Error {}

export function parseCsv(text: string): CsvRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("CSV is empty");
  }
  const header = lines[0].split(",");
  if (header.length !== SCHEMA_COLUMNS.length ||
      !SCHEMA_COLUMNS.every((c, i) => header[i] === c)) {
    throw new SchemaError(
      `CSV header does not match schema v${SCHEMA_VERSION}: got "${lines[0]}"`);
  }
  const rows: CsvRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== SCHEMA_COLUMNS.length) {
      throw new SchemaError(
        `row ${i + 1} has ${fields.length} fields, expected ${SCHEMA_COLUMNS.length}`);
    }
    if (fields.some((f) => f.includes('"'))) {
      throw new SchemaError(`row ${i + 1} contains quoting, which the schema forbids`);
    }
    const row = Object.fromEntries(
      SCHEMA_COLUMNS.map((c, k) => [c, fields[k]])) as CsvRow;
    if (row.schema_version !== SCHEMA_VERSION) {
      throw new SchemaError(
        `row ${i + 1} has schema_version ${row.schema_version}, expected ${SCHEMA_VERSION}`);
    }
    rows.push(row);
  }
  return rows;
}

export function requireNumber(row: CsvRow, column: ColumnName, rowLabel: string): number {
  const raw = row[column];
  if (raw === "") {
    throw new SchemaError(`${rowLabel}: column "${column}" is empty`);
  }
  const value = Number(raw);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`${rowLabel}: column "${column}" is not a finite number: "${raw}"`);
  }
  return value;
}

export function rowsFor(rows: CsvRow[], experiment: string, quantity: string): CsvRow[] {
  return rows.filter((r) => r.experiment === experiment && r.quantity === quantity);
}
