#!/usr/bin/env node
/**
 * plot-spectrum INPUT.csv OUTPUT.svg [--envelope]
 *
 * Renders a spectrum CSV (delta_rad_per_s,p_static,p_dynamic,p_total)
 * as a line plot of p_total versus detuning.
 */

import { realpathSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";
import { CsvError, readSpectrumCsv } from "./csv.js";
import { EXIT_DATA, EXIT_IO, EXIT_OK, EXIT_USAGE } from "./exits.js";
import { renderSpectrum } from "./spectrum.js";

const USAGE = "usage: plot-spectrum INPUT.csv OUTPUT.svg [--envelope]";

export function main(argv: string[]): number {
  let positionals: string[];
  let envelope: boolean;
  try {
    const parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: { envelope: { type: "boolean", default: false } },
    });
    positionals = parsed.positionals;
    envelope = parsed.values.envelope ?? false;
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
    svg = renderSpectrum(readSpectrumCsv(input), { envelope });
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
