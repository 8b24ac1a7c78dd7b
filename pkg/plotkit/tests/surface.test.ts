/**
 * plot-surface behavior on real simulator output.
 *
 * The fixture was produced by the simulator CLI over a time grid of 36
 * rows spanning 0.2 to 50 drive periods at omega_p 1.5e9, 121 detunings
 * across the default window:
 *
 *   oscmirror surface --config fig3.json --t-start 8.37758041e-10 \
 *     --t-end 2.09439510e-7 --nt 36 --n 121 --out fig3_surface.csv
 *
 * Column bookkeeping for the probes below: detunings run -6e9..6e9 in
 * steps of 1e8, so index 60 is zero detuning, 75 is +omega_p, 45 is
 * -omega_p, and 68 sits in the valley between the central and lateral
 * ridges. Rows are rendered bottom-up, earliest time first, cells in
 * row-major document order.
 */

import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";
import { main } from "../src/cli-surface.js";
import { rectFills, run } from "./helpers.js";

const FIXTURES = join(import.meta.dirname, "fixtures");
const FIG3 = join(FIXTURES, "fig3_surface.csv");
const TMP = mkdtempSync(join(tmpdir(), "plotkit-surface-"));

const NT = 36;
const NDELTA = 121;

afterAll(() => {
  rmSync(TMP, { recursive: true, force: true });
});

function render(input: string, name: string): string {
  const out = join(TMP, name);
  const { code, stderr } = run(() => main([input, out]));
  expect(code, stderr).toBe(0);
  return readFileSync(out, "utf-8");
}

// ── figure content ──────────────────────────────────────

describe("plot-surface on the time-detuning fixture", () => {
  it("emits one heatmap cell per grid point plus a colorbar", () => {
    const svg = render(FIG3, "fig3.svg");
    expect(svg.startsWith("<?xml")).toBe(true);
    expect(svg.match(/<rect class="cell"/g)!.length).toBe(NT * NDELTA);
    expect(svg.match(/<rect class="cbar"/g)!.length).toBe(64);
    expect(svg).toContain("detuning (rad/s)");
    expect(svg).toContain("t (s)");
    expect(svg).toContain("p_total (A21 s)");
  });

  it("shows ridges at zero and both drive-frequency detunings, strengthening with time", () => {
    const fills = rectFills(render(FIG3, "fig3_ridges.svg"), "cell");
    expect(fills.length).toBe(NT * NDELTA);
    const cell = (i: number, j: number) => fills[i * NDELTA + j];

    // hottest cell: latest time at zero detuning, the top of the ramp
    expect(cell(NT - 1, 60)).toEqual({ r: 253, g: 231, b: 37 });
    // central ridge grows along the time axis
    expect(cell(NT - 1, 60).g).toBeGreaterThan(cell(0, 60).g);
    // lateral ridge at +omega_p: above the valley, and growing with time
    expect(cell(NT - 1, 75).g).toBeGreaterThan(cell(NT - 1, 68).g);
    expect(cell(NT - 1, 75).g).toBeGreaterThan(cell(0, 75).g);
    // the sideband pair is symmetric, cell for cell
    expect(cell(NT - 1, 45)).toEqual(cell(NT - 1, 75));
  });

  it("is deterministic and leaves the input untouched", () => {
    const before = readFileSync(FIG3);
    const first = render(FIG3, "fig3_rep1.svg");
    const second = render(FIG3, "fig3_rep2.svg");
    expect(second).toBe(first);
    expect(readFileSync(FIG3).equals(before)).toBe(true);
  });

  it("degenerates to one full-height row for a single-time grid", () => {
    const path = join(TMP, "single_t.csv");
    writeFileSync(
      path,
      "t_s,delta_rad_per_s,p_total\n1e-6,-1e8,0.1\n1e-6,0,0.9\n1e-6,1e8,0.3\n",
    );
    const svg = render(path, "single_t.svg");
    const cells = [...svg.matchAll(/<rect class="cell"[^>]*height="([^"]+)"/g)].map((m) => m[1]);
    expect(cells.length).toBe(3);
    const frame = svg.match(
      /<rect x="[^"]+" y="[^"]+" width="[^"]+" height="([^"]+)" fill="none" stroke="#333333" stroke-width="1"\/>/,
    );
    expect(frame).not.toBeNull();
    for (const h of cells) expect(h).toBe(frame![1]);
  });
});

// ── error contract ──────────────────────────────────────

describe("plot-surface input validation", () => {
  const out = join(TMP, "never.svg");

  function written(name: string, text: string): string {
    const path = join(TMP, name);
    writeFileSync(path, text);
    return path;
  }

  it("rejects a ragged grid, reporting the odd block", () => {
    const path = written(
      "ragged.csv",
      "t_s,delta_rad_per_s,p_total\n1e-6,-1e8,0.1\n1e-6,0,0.9\n1e-6,1e8,0.3\n2e-6,-1e8,0.2\n2e-6,0,0.8\n",
    );
    const { code, stderr } = run(() => main([path, out]));
    expect(code).toBe(3);
    expect(stderr).toContain("non-rectangular grid");
    expect(stderr).toContain("t=0.000002");
  });

  it("rejects equal-length blocks whose detunings differ", () => {
    const path = written(
      "mismatch.csv",
      "t_s,delta_rad_per_s,p_total\n1e-6,-1e8,0.1\n1e-6,1e8,0.3\n2e-6,-1e8,0.2\n2e-6,2e8,0.8\n",
    );
    const { code, stderr } = run(() => main([path, out]));
    expect(code).toBe(3);
    expect(stderr).toContain("detuning mismatch");
  });

  it("names the missing column", () => {
    const path = written("no_ptotal.csv", "t_s,delta_rad_per_s,p\n1e-6,0,0.5\n");
    const { code, stderr } = run(() => main([path, out]));
    expect(code).toBe(3);
    expect(stderr).toContain("missing column: p_total");
  });

  it("rejects an empty file", () => {
    const path = written("empty.csv", "\n");
    const { code, stderr } = run(() => main([path, out]));
    expect(code).toBe(3);
    expect(stderr).toContain("empty CSV");
  });

  it("maps io failures and bad invocations to their exit codes", () => {
    expect(run(() => main([join(TMP, "absent.csv"), out])).code).toBe(4);
    expect(run(() => main([FIG3, join(TMP, "no-such-dir", "x.svg")])).code).toBe(4);
    expect(run(() => main([FIG3])).code).toBe(2);
    expect(run(() => main([FIG3, out, "--envelope"])).code).toBe(2);
  });
});
