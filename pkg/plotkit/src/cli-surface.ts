#!/usr/bin/env node
/**
 * plot-surface INPUT.csv OUTPUT.svg
 *
 * Renders a surface CSV (t_s,delta_rad_per_s,p_total, long format) as a
 * heatmap: detuning horizontal, time vertical, color = p_total.
 */

import { realpathSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";
import { CsvError, readSurfaceCsv } from "./csv.js";
import { EXIT_DATA, EXIT_IO, EXIT_OK, EXIT_USAGE } from "./exits.js";
import { renderSurface } from "./surface.js";

const USAGE = "usage: plot-surface INPUT.csv OUTPUT.svg";

export function main(argv: string[]): number {
  let positionals: string[];
  try {
    positionals = parseArgs({ args: argv, allowPositionals: true, options: {} }).positionals;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error(USAGE);
    return EXIT_USAGE;
  }
  if (positionals.length !== 2) {
    console.error(USAGE);
    return EXIT_USAGE;
  }
  const [input, output] = positionals;

  let svg: string;
  try {
    svg = renderSurface(readSurfaceCsv(input));
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`error: ${input}: ${err.message}`);
      return EXIT_DATA;
    }
    console.error(`error: cannot read ${input}: ${(err as Error).message}`);
    return EXIT_IO;
  }
  try {
    writeFileSync(output, svg, "utf-8");
  } catch (err) {
    console.error(`error: cannot write ${output}: ${(err as Error).message}`);
    return EXIT_IO;
  }
  return EXIT_OK;
}

function invokedDirectly(): boolean {
  if (!process.argv[1]) return false;
  try {
    return import.meta.url === pathToFileURL(realpathSync(process.argv[1])).href;
  } catch {
    return false;
  }
}

if (invokedDirectly()) {
  process.exit(main(process.argv.slice(2)));
}
