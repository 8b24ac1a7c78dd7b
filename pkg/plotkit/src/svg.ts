/**
 * Small deterministic SVG toolkit: scales, ticks, axes, colors.
 *
 * Coordinates are written with two decimals so repeated renders of the
 * same data are byte-identical; nothing here consults the clock or any
 * other ambient state.
 */

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Two-decimal pixel coordinate; -0.00 is normalized so output is stable. */
export function px(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export type Scale = (v: number) => number;

/** Linear map domain to range; a degenerate domain maps everything to the range midpoint. */
export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  if (d0 === d1) return () => (r0 + r1) / 2;
  const k = (r1 - r0) / (d1 - d0);
  return (v: number) => r0 + (v - d0) * k;
}

/** Round-valued ticks inside [lo, hi], spaced by a 1/2/5 decade step. */
export function ticks(lo: number, hi: number, want = 6): number[] {
  const span = hi - lo;
  if (!(span > 0) || !Number.isFinite(span)) return [lo];
  const raw = span / Math.max(1, want - 1);
  const mag = 10 ** Math.floor(Math.log10(raw));
  const norm = raw / mag;
  const step = (norm > 5 ? 10 : norm > 2 ? 5 : norm > 1 ? 2 : 1) * mag;
  const first = Math.ceil(lo / step);
  const out: number[] = [];
  for (let i = first; i * step <= hi + step * 1e-9; i++) {
    out.push(i === 0 ? 0 : i * step);
  }
  return out;
}

/** Compact deterministic tick label: plain decimals in a middle band, e-notation outside. */
export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) {
    let e = Math.floor(Math.log10(a));
    let m = v / 10 ** e;
    // toFixed can round the mantissa up to 10; carry into the exponent
    if (Math.abs(m) >= 9.995) {
      m /= 10;
      e += 1;
    }
    return `${trimZeros(m.toFixed(2))}e${e}`;
  }
  return trimZeros(v.toFixed(3));
}

function trimZeros(s: string): string {
  return s.includes(".") ? s.replace(/0+$/, "").replace(/\.$/, "") : s;
}

export interface PlotArea {
  x: number;
  y: number;
  w: number;
  h: number;
}

export const FONT = 'font-family="Helvetica, Arial, sans-serif"';

/** Frame, tick marks, tick labels and centered axis titles for one plot area. */
export function axesSvg(
  area: PlotArea,
  xScale: Scale,
  yScale: Scale,
  xTicks: number[],
  yTicks: number[],
  xLabel: string,
  yLabel: string,
): string {
  const bottom = area.y + area.h;
  const parts: string[] = [];
  parts.push(
    `<rect x="${px(area.x)}" y="${px(area.y)}" width="${px(area.w)}" height="${px(area.h)}" fill="none" stroke="#333333" stroke-width="1"/>`,
  );
  for (const v of xTicks) {
    const x = px(xScale(v));
    parts.push(`<line x1="${x}" y1="${px(bottom)}" x2="${x}" y2="${px(bottom + 5)}" stroke="#333333"/>`);
    parts.push(
      `<text x="${x}" y="${px(bottom + 18)}" ${FONT} font-size="11" text-anchor="middle">${escapeXml(fmtTick(v))}</text>`,
    );
  }
  for (const v of yTicks) {
    const y = px(yScale(v));
    parts.push(`<line x1="${px(area.x - 5)}" y1="${y}" x2="${px(area.x)}" y2="${y}" stroke="#333333"/>`);
    parts.push(
      `<text x="${px(area.x - 8)}" y="${px(yScale(v) + 3.5)}" ${FONT} font-size="11" text-anchor="end">${escapeXml(fmtTick(v))}</text>`,
    );
  }
  const cx = area.x + area.w / 2;
  const cy = area.y + area.h / 2;
  parts.push(
    `<text x="${px(cx)}" y="${px(bottom + 36)}" ${FONT} font-size="12" text-anchor="middle">${escapeXml(xLabel)}</text>`,
  );
  parts.push(
    `<text x="${px(area.x - 52)}" y="${px(cy)}" ${FONT} font-size="12" text-anchor="middle" transform="rotate(-90 ${px(area.x - 52)} ${px(cy)})">${escapeXml(yLabel)}</text>`,
  );
  return parts.join("\n  ");
}

// matplotlib's 9-stop viridis ramp; green rises monotonically along it
const VIRIDIS: [number, number, number][] = [
  [0x44, 0x01, 0x54],
  [0x48, 0x28, 0x78],
  [0x3e, 0x49, 0x89],
  [0x31, 0x68, 0x8e],
  [0x26, 0x82, 0x8e],
  [0x1f, 0x9e, 0x89],
  [0x35, 0xb7, 0x79],
  [0x6e, 0xce, 0x58],
  [0xfd, 0xe7, 0x25],
];

/** Viridis color at t in [0, 1]; values outside are clamped. */
export function viridis(t: number): string {
  const x = Math.min(1, Math.max(0, t)) * (VIRIDIS.length - 1);
  const i = Math.min(VIRIDIS.length - 2, Math.floor(x));
  const f = x - i;
  const c = VIRIDIS[i].map((a, k) => Math.round(a + f * (VIRIDIS[i + 1][k] - a)));
  return `rgb(${c[0]},${c[1]},${c[2]})`;
}

export function svgDocument(width: number, height: number, body: string): string {
  return `<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">
  <rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>
  ${body}
</svg>
`;
}
