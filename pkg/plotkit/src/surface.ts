/**
 * Heatmap rendering of spectral density over a (time, detuning) grid.
 *
 * Detuning runs horizontally, time vertically with the earliest row at
 * the bottom, and color is min-max normalized p_total through the
 * viridis ramp. Cell boundaries sit halfway between grid coordinates,
 * so non-uniform grids tile without gaps; a single-time grid degenerates
 * to one full-height row.
 */

import type { SurfaceGrid } from "./csv.js";
import { axesSvg, FONT, fmtTick, linearScale, px, svgDocument, ticks, viridis } from "./svg.js";

export interface SurfaceOptions {
  width?: number;
  height?: number;
}

/** Cell edges halfway between coords; a single coordinate gets a unit-wide cell. */
function cellEdges(coords: number[]): number[] {
  const n = coords.length;
  if (n === 1) return [coords[0] - 1, coords[0] + 1];
  const edges = new Array<number>(n + 1);
  edges[0] = coords[0] - (coords[1] - coords[0]) / 2;
  for (let i = 1; i < n; i++) edges[i] = (coords[i - 1] + coords[i]) / 2;
  edges[n] = coords[n - 1] + (coords[n - 1] - coords[n - 2]) / 2;
  return edges;
}

export function renderSurface(grid: SurfaceGrid, opts: SurfaceOptions = {}): string {
  const width = opts.width ?? 760;
  const height = opts.height ?? 480;
  // right margin leaves room for the colorbar and its labels
  const area = { x: 72, y: 16, w: width - 72 - 96, h: height - 16 - 48 };

  const xEdges = cellEdges(grid.delta);
  const yEdges = cellEdges(grid.t);
  const xScale = linearScale(xEdges[0], xEdges[xEdges.length - 1], area.x, area.x + area.w);
  const yScale = linearScale(yEdges[0], yEdges[yEdges.length - 1], area.y + area.h, area.y);

  let vMin = Infinity;
  let vMax = -Infinity;
  for (const row of grid.values) {
    for (const v of row) {
      if (v < vMin) vMin = v;
      if (v > vMax) vMax = v;
    }
  }
  const norm = vMax > vMin ? (v: number) => (v - vMin) / (vMax - vMin) : () => 0.5;

  const body: string[] = [];
  for (let i = 0; i < grid.t.length; i++) {
    for (let j = 0; j < grid.delta.length; j++) {
      const x = xScale(xEdges[j]);
      const y = yScale(yEdges[i + 1]);
      const w = xScale(xEdges[j + 1]) - x;
      const h = yScale(yEdges[i]) - y;
      body.push(
        `<rect class="cell" x="${px(x)}" y="${px(y)}" width="${px(w)}" height="${px(h)}" fill="${viridis(norm(grid.values[i][j]))}"/>`,
      );
    }
  }

  // colorbar: 64 strips from vMin at the bottom to vMax at the top
  const barX = area.x + area.w + 18;
  const barW = 14;
  const strips = 64;
  for (let k = 0; k < strips; k++) {
    const y = area.y + area.h - ((k + 1) * area.h) / strips;
    body.push(
      `<rect class="cbar" x="${px(barX)}" y="${px(y)}" width="${px(barW)}" height="${px(area.h / strips)}" fill="${viridis((k + 0.5) / strips)}"/>`,
    );
  }
  body.push(
    `<rect x="${px(barX)}" y="${px(area.y)}" width="${px(barW)}" height="${px(area.h)}" fill="none" stroke="#333333" stroke-width="0.5"/>`,
    `<text x="${px(barX + barW + 4)}" y="${px(area.y + area.h)}" ${FONT} font-size="10">${fmtTick(vMin)}</text>`,
    `<text x="${px(barX + barW + 4)}" y="${px(area.y + 8)}" ${FONT} font-size="10">${fmtTick(vMax)}</text>`,
    `<text x="${px(barX + barW + 4)}" y="${px(area.y + area.h / 2)}" ${FONT} font-size="10">p_total (A21 s)</text>`,
  );

  body.push(
    axesSvg(
      area,
      xScale,
      yScale,
      ticks(xEdges[0], xEdges[xEdges.length - 1]),
      ticks(yEdges[0], yEdges[yEdges.length - 1]),
      "detuning (rad/s)",
      "t (s)",
    ),
  );
  return svgDocument(width, height, body.join("\n  "));
}
