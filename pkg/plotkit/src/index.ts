export { CsvError, readSpectrumCsv, readSurfaceCsv } from "./csv.js";
export type { SpectrumRow, SurfaceGrid } from "./csv.js";
export { renderSpectrum, slidingMax } from "./spectrum.js";
export type { SpectrumOptions } from "./spectrum.js";
export { renderSurface } from "./surface.js";
export type { SurfaceOptions } from "./surface.js";
export { escapeXml, fmtTick, linearScale, px, ticks, viridis } from "./svg.js";
