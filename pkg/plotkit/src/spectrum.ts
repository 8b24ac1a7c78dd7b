/**
 * Line rendering of a single-time emission spectrum.
 *
 * Plots p_total against detuning. The optional envelope overlay is a
 * sliding-window maximum of the same column: the window spans 1/25 of
 * the detuning range, wide enough to bridge individual sinc ripples at
 * the default grid while staying well inside the sideband separation,
 * so lobes survive and the ripple texture is smoothed away.
 */

import type { SpectrumRow } from "./csv.js";
import { axesSvg, FONT, linearScale, px, svgDocument, ticks } from "./svg.js";

export interface SpectrumOptions {
  /** overlay the upper envelope of the curve */
  envelope?: boolean;
  width?: number;
  height?: number;
}

/** Sliding maximum of vs over a symmetric window in x; xs must be ascending. */
export function slidingMax(xs: number[], vs: number[], halfWidth: number): number[] {
  const n = xs.length;
  const out = new Array<number>(n);
  const deque: number[] = []; // indices into vs, values decreasing front to back
  let hi = 0;
  for (let i = 0; i < n; i++) {
    while (hi < n && xs[hi] <= xs[i] + halfWidth) {
      while (deque.length > 0 && vs[deque[deque.length - 1]] <= vs[hi]) deque.pop();
      deque.push(hi);
      hi++;
    }
    while (xs[deque[0]] < xs[i] - halfWidth) deque.shift();
    out[i] = vs[deque[0]];
  }
  return out;
}

function pathFrom(points: string[]): string {
  if (points.length === 1) return `M${points[0]}`;
  return `M${points[0]} L${points.slice(1).join(" L")}`;
}

export function renderSpectrum(rows: SpectrumRow[], opts: SpectrumOptions = {}): string {
  const width = opts.width ?? 760;
  const height = opts.height ?? 440;
  const area = { x: 72, y: 16, w: width - 72 - 16, h: height - 16 - 48 };

  const xs = rows.map((r) => r.delta);
  const vs = rows.map((r) => r.pTotal);
  const vMin = Math.min(0, ...vs);
  const vMax = Math.max(...vs);
  const pad = 0.05 * (vMax - vMin);

  const xScale = linearScale(xs[0], xs[xs.length - 1], area.x, area.x + area.w);
  const yScale = linearScale(vMin - pad, vMax + pad, area.y + area.h, area.y);

  const body: string[] = [];
  if (vMin < 0) {
    const y0 = px(yScale(0));
    body.push(
      `<line class="zero" x1="${px(area.x)}" y1="${y0}" x2="${px(area.x + area.w)}" y2="${y0}" stroke="#bbbbbb" stroke-width="0.5"/>`,
    );
  }

  const toPoint = (x: number, v: number) => `${px(xScale(x))},${px(yScale(v))}`;
  body.push(
    `<path class="series" d="${pathFrom(rows.map((r) => toPoint(r.delta, r.pTotal)))}" fill="none" stroke="#1f77b4" stroke-width="1.2"/>`,
  );

  if (opts.envelope) {
    const halfWidth = (xs[xs.length - 1] - xs[0]) / 50;
    const env = slidingMax(xs, vs, halfWidth);
    body.push(
      `<path class="envelope" d="${pathFrom(xs.map((x, i) => toPoint(x, env[i])))}" fill="none" stroke="#d62728" stroke-width="1.2" stroke-dasharray="6 3"/>`,
    );
    const lx = area.x + area.w - 150;
    body.push(
      `<line x1="${px(lx)}" y1="${px(area.y + 14)}" x2="${px(lx + 26)}" y2="${px(area.y + 14)}" stroke="#1f77b4" stroke-width="1.2"/>`,
      `<text x="${px(lx + 32)}" y="${px(area.y + 18)}" ${FONT} font-size="11">spectrum</text>`,
      `<line x1="${px(lx)}" y1="${px(area.y + 30)}" x2="${px(lx + 26)}" y2="${px(area.y + 30)}" stroke="#d62728" stroke-width="1.2" stroke-dasharray="6 3"/>`,
      `<text x="${px(lx + 32)}" y="${px(area.y + 34)}" ${FONT} font-size="11">envelope</text>`,
    );
  }

  body.push(
    axesSvg(
      area,
      xScale,
      yScale,
      ticks(xs[0], xs[xs.length - 1]),
      ticks(vMin - pad, vMax + pad),
      "detuning (rad/s)",
      "spectral density (A21 s)",
    ),
  );
  return svgDocument(width, height, body.join("\n  "));
}
