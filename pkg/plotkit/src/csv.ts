/**
 * Readers for the simulator's CSV outputs.
 *
 * Two shapes are accepted, matching the documented headers exactly:
 *
 *   spectrum: delta_rad_per_s,p_static,p_dynamic,p_total   (one observation time)
 *   surface:  t_s,delta_rad_per_s,p_total                  (long format, one row per cell)
 *
 * Everything is validated before any drawing happens, so a missing
 * column, an empty file or a ragged grid fails fast with the offending
 * name in the message. The readers never write back to the input.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

/** Contract violation in the input data: bad header, empty file, ragged grid. */
export class CsvError extends Error {}

export interface SpectrumRow {
  /** detuning from the atomic transition frequency, rad/s */
  delta: number;
  pStatic: number;
  pDynamic: number;
  /** static plus dynamic spectral density, A21 s */
  pTotal: number;
}

/** Surface data pivoted from long format into a rectangular grid. */
export interface SurfaceGrid {
  /** observation times, ascending, one per row */
  t: number[];
  /** detunings, ascending, one per column, shared by every row */
  delta: number[];
  /** values[i][j] = p_total at (t[i], delta[j]) */
  values: number[][];
}

const SPECTRUM_HEADER = ["delta_rad_per_s", "p_static", "p_dynamic", "p_total"];
const SURFACE_HEADER = ["t_s", "delta_rad_per_s", "p_total"];

function parseTable(path: string, required: string[]): Record<string, unknown>[] {
  const text = readFileSync(path, "utf-8");
  if (text.trim() === "") throw new CsvError("empty CSV");
  const parsed = Papa.parse<Record<string, unknown>>(text.trim(), {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  for (const name of required) {
    if (!fields.includes(name)) throw new CsvError(`missing column: ${name}`);
  }
  if (parsed.data.length === 0) throw new CsvError("no data rows");
  parsed.data.forEach((row, i) => {
    for (const name of required) {
      const v = row[name];
      // data line i+2: line 1 is the header
      if (typeof v !== "number" || !Number.isFinite(v)) {
        throw new CsvError(`non-numeric value in column ${name} at line ${i + 2}`);
      }
    }
  });
  return parsed.data;
}

/** Read and validate a spectrum CSV; rows come back sorted by detuning. */
export function readSpectrumCsv(path: string): SpectrumRow[] {
  const rows = parseTable(path, SPECTRUM_HEADER).map((r) => ({
    delta: r.delta_rad_per_s as number,
    pStatic: r.p_static as number,
    pDynamic: r.p_dynamic as number,
    pTotal: r.p_total as number,
  }));
  rows.sort((a, b) => a.delta - b.delta);
  return rows;
}

/**
 * Read and validate a surface CSV, pivoting the long format into a grid.
 *
 * Every time block must carry exactly the same detuning column, value for
 * value; anything else is a non-rectangular grid and gets rejected. The
 * simulator prints one linspace per block, so byte-identical floats are
 * the honest equality test here.
 */
export function readSurfaceCsv(path: string): SurfaceGrid {
  const raw = parseTable(path, SURFACE_HEADER);
  const blocks = new Map<number, { delta: number[]; values: number[] }>();
  for (const r of raw) {
    const t = r.t_s as number;
    let block = blocks.get(t);
    if (block === undefined) {
      block = { delta: [], values: [] };
      blocks.set(t, block);
    }
    block.delta.push(r.delta_rad_per_s as number);
    block.values.push(r.p_total as number);
  }

  const t = [...blocks.keys()].sort((a, b) => a - b);
  const sorted = t.map((ti) => {
    const block = blocks.get(ti)!;
    const order = block.delta.map((_, j) => j).sort((a, b) => block.delta[a] - block.delta[b]);
    return {
      delta: order.map((j) => block.delta[j]),
      values: order.map((j) => block.values[j]),
    };
  });

  const delta = sorted[0].delta;
  for (let i = 1; i < sorted.length; i++) {
    if (sorted[i].delta.length !== delta.length) {
      throw new CsvError(
        `non-rectangular grid: t=${t[i]} has ${sorted[i].delta.length} detunings, expected ${delta.length}`,
      );
    }
    for (let j = 0; j < delta.length; j++) {
      if (sorted[i].delta[j] !== delta[j]) {
        throw new CsvError(`non-rectangular grid: detuning mismatch in block t=${t[i]}`);
      }
    }
  }

  return { t, delta, values: sorted.map((b) => b.values) };
}
