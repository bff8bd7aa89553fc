/**
 * Render experiment CSVs to SVG charts.
 *
 * Usage: node dist/cli.js --experiment figure1|bounds --in DIR --out FILE
 *
 * Exit codes: 0 rendered, 1 schema/data refusal, 2 usage error.  On refusal
 * no output file is written.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { buildBoundsModel, renderBounds } from "./bounds.js";
import { buildFigure1Model, renderFigure1 } from "./figure1.js";
import { SchemaError, parseCsv } from "./schema.js";

interface Args {
  experiment: string;
  inDir: string;
  outFile: string;
}

function parseArgs(argv: string[]): Args {
  const out: Partial<Args> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new Error(`flag ${flag} is missing a value`);
    }
    if (flag === "--experiment") out.experiment = value;
    else if (flag === "--in") out.inDir = value;
    else if (flag === "--out") out.outFile = value;
    else throw new Error(`unknown flag ${flag}`);
  }
  if (!out.experiment || !out.inDir || !out.outFile) {
    throw new Error("required: --experiment figure1|bounds --in DIR --out FILE");
  }
  if (out.experiment !== "figure1" && out.experiment !== "bounds") {
    throw new Error(`unsupported experiment "${out.experiment}" (figure1 or bounds)`);
  }
  return out as Args;
}

export function renderCsvText(experiment: string, text: string): string {
  const rows = parseCsv(text);
  if (experiment === "figure1") {
    return renderFigure1(buildFigure1Model(rows));
  }
  return renderBounds(buildBoundsModel(rows));
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  const csvPath = join(args.inDir, `${args.experiment}.csv`);
  let text: string;
  try {
    text = readFileSync(csvPath, "utf8");
  } catch (err) {
    console.error(`cannot read ${csvPath}: ${(err as Error).message}`);
    return 1;
  }
  try {
    const svg = renderCsvText(args.experiment, text);
    writeFileSync(args.outFile, svg);
    console.log(`rendered ${csvPath} -> ${args.outFile}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`refused: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
