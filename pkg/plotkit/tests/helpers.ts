/** Shared test utilities: stderr capture and SVG scraping. */

import { vi } from "vitest";

export interface RunResult {
  code: number;
  stderr: string;
}

/** Run a CLI entry point, capturing its exit code and stderr text. */
export function run(fn: () => number): RunResult {
  const spy = vi.spyOn(console, "error").mockImplementation(() => {});
  try {
    const code = fn();
    return { code, stderr: spy.mock.calls.map((c) => c.join(" ")).join("\n") };
  } finally {
    spy.mockRestore();
  }
}

export interface Point {
  x: number;
  y: number;
}

/** Coordinates of a path element by class name; SVG y points down. */
export function pathPoints(svg: string, cls: string): Point[] {
  const m = svg.match(new RegExp(`<path class="${cls}" d="([^"]+)"`));
  if (m === null) throw new Error(`no <path class="${cls}"> in SVG`);
  return m[1].split(" ").map((tok) => {
    const [x, y] = tok.slice(1).split(",");
    return { x: Number(x), y: Number(y) };
  });
}

export interface Lobe {
  x: number;
  /** plot height proxy: negated pixel y, larger means taller */
  v: number;
}

/**
 * Local maxima of a rendered curve, tallest first.
 *
 * A point qualifies when nothing within `radius` samples is taller;
 * maxima closer than `minGapPx` collapse into their tallest member, so
 * the flat rounding plateaus near the baseline do not multiply.
 */
export function lobes(pts: Point[], radius = 25, minGapPx = 8): Lobe[] {
  const v = pts.map((p) => -p.y);
  const raw: Lobe[] = [];
  for (let i = 0; i < v.length; i++) {
    let best = true;
    for (let j = Math.max(0, i - radius); j <= Math.min(v.length - 1, i + radius); j++) {
      if (v[j] > v[i]) {
        best = false;
        break;
      }
    }
    if (best) raw.push({ x: pts[i].x, v: v[i] });
  }
  const merged: Lobe[] = [];
  for (const p of raw) {
    const last = merged[merged.length - 1];
    if (last !== undefined && p.x - last.x <= minGapPx) {
      if (p.v > last.v) merged[merged.length - 1] = p;
    } else {
      merged.push(p);
    }
  }
  return merged.sort((a, b) => b.v - a.v);
}

/** Fill colors of all rects of a class, in document order. */
export function rectFills(svg: string, cls: string): { r: number; g: number; b: number }[] {
  const re = new RegExp(`<rect class="${cls}"[^>]*fill="rgb\\((\\d+),(\\d+),(\\d+)\\)"`, "g");
  return [...svg.matchAll(re)].map((m) => ({ r: Number(m[1]), g: Number(m[2]), b: Number(m[3]) }));
}
