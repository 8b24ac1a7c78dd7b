/**
 * Unit checks for the SVG toolkit: scales, ticks, labels, colors, and
 * the sliding-maximum kernel behind the envelope overlay.
 */

import { describe, expect, it } from "vitest";
import { escapeXml, fmtTick, linearScale, px, ticks, viridis } from "../src/index.js";
import { slidingMax } from "../src/spectrum.js";

// deterministic 32-bit generator for property sweeps
function xorshift(seed: number): () => number {
  let s = seed >>> 0;
  return () => {
    s ^= s << 13;
    s ^= s >>> 17;
    s ^= s << 5;
    s >>>= 0;
    return s / 2 ** 32;
  };
}

describe("px", () => {
  it("writes two decimals and normalizes negative zero", () => {
    expect(px(12.3456)).toBe("12.35");
    expect(px(-0.001)).toBe("0.00");
    expect(px(0)).toBe("0.00");
  });
});

describe("escapeXml", () => {
  it("escapes markup characters", () => {
    expect(escapeXml("a<b & c>d")).toBe("a&lt;b &amp; c&gt;d");
  });
});

describe("linearScale", () => {
  it("maps endpoints and midpoint", () => {
    const s = linearScale(0, 10, 100, 200);
    expect(s(0)).toBe(100);
    expect(s(10)).toBe(200);
    expect(s(5)).toBe(150);
  });

  it("collapses a degenerate domain to the range midpoint", () => {
    const s = linearScale(3, 3, 100, 200);
    expect(s(3)).toBe(150);
    expect(s(-17)).toBe(150);
  });
});

describe("ticks", () => {
  it("stays inside the interval with round 1/2/5 steps", () => {
    const rng = xorshift(2024);
    for (let trial = 0; trial < 200; trial++) {
      const lo = (rng() - 0.5) * 10 ** Math.floor(rng() * 12 - 3);
      const hi = lo + Math.abs(rng()) * 10 ** Math.floor(rng() * 12 - 3) + 1e-12;
      const out = ticks(lo, hi);
      expect(out.length).toBeGreaterThan(0);
      for (const v of out) {
        expect(v).toBeGreaterThanOrEqual(lo - Math.abs(lo) * 1e-9);
        expect(v).toBeLessThanOrEqual(hi + Math.abs(hi) * 1e-9);
      }
      for (let i = 1; i < out.length; i++) expect(out[i]).toBeGreaterThan(out[i - 1]);
    }
  });

  it("includes zero for a symmetric domain", () => {
    expect(ticks(-6e8, 6e8)).toContain(0);
  });
});

describe("fmtTick", () => {
  it("formats representative magnitudes compactly", () => {
    expect(fmtTick(0)).toBe("0");
    expect(fmtTick(1.5e8)).toBe("1.5e8");
    expect(fmtTick(-1.5e8)).toBe("-1.5e8");
    expect(fmtTick(0.25)).toBe("0.25");
    expect(fmtTick(-3e-5)).toBe("-3e-5");
    expect(fmtTick(2)).toBe("2");
  });

  it("carries mantissa rounding into the exponent", () => {
    expect(fmtTick(9.999e7)).toBe("1e8");
  });
});

describe("viridis", () => {
  it("hits the exact endpoint colors and clamps outside [0, 1]", () => {
    expect(viridis(0)).toBe("rgb(68,1,84)");
    expect(viridis(1)).toBe("rgb(253,231,37)");
    expect(viridis(-5)).toBe(viridis(0));
    expect(viridis(7)).toBe(viridis(1));
  });

  it("has a nondecreasing green channel", () => {
    let prev = -1;
    for (let i = 0; i <= 100; i++) {
      const g = Number(viridis(i / 100).match(/rgb\(\d+,(\d+),\d+\)/)![1]);
      expect(g).toBeGreaterThanOrEqual(prev);
      prev = g;
    }
  });
});

describe("slidingMax", () => {
  it("matches the brute-force window maximum on random data", () => {
    const rng = xorshift(1234);
    for (const [n, halfWidth] of [
      [50, 0.5],
      [200, 2.0],
      [200, 0.01],
      [37, 100],
    ] as const) {
      const xs: number[] = [];
      let x = 0;
      for (let i = 0; i < n; i++) {
        x += 0.01 + rng(); // ascending, non-uniform spacing
        xs.push(x);
      }
      const vs = xs.map(() => rng() * 2 - 1);
      const fast = slidingMax(xs, vs, halfWidth);
      for (let i = 0; i < n; i++) {
        let naive = -Infinity;
        for (let j = 0; j < n; j++) {
          if (Math.abs(xs[j] - xs[i]) <= halfWidth && vs[j] > naive) naive = vs[j];
        }
        expect(fast[i]).toBe(naive);
      }
    }
  });

  it("dominates the underlying series pointwise", () => {
    const rng = xorshift(77);
    const xs = Array.from({ length: 300 }, (_, i) => i * 0.1);
    const vs = xs.map(() => rng() * 10 - 5);
    const env = slidingMax(xs, vs, 1.05);
    for (let i = 0; i < xs.length; i++) expect(env[i]).toBeGreaterThanOrEqual(vs[i]);
  });

  it("is the identity for a zero-width window", () => {
    const xs = [0, 1, 2, 3];
    const vs = [4, -2, 7, 0];
    expect(slidingMax(xs, vs, 0)).toEqual(vs);
  });
});
