export { column, CsvError, metaInt, metaNumber, metaString, MissingMetadataError, parseTable, readTable } from "./csv.js";
export type { Table } from "./csv.js";
export { OVERLAY_NAMES, parseRecipe, readRecipe, RecipeError } from "./recipe.js";
export type { AxisScale, FigureRecipe, OverlayName } from "./recipe.js";
export {
  airyDiff,
  bornDiff,
  bornTotalFactor,
  computeOverlay,
  crossSectionBound,
  extinctionCrossSection,
  gasRadius,
  greenImagZero,
  OverlayError,
  pairFactor,
  phaseShiftCot,
  pointCrossSection,
} from "./overlays.js";
export type { OverlayCurve } from "./overlays.js";
export { buildFigure, GridMismatchError, renderRecipe } from "./render.js";
export type { BuiltFigure } from "./render.js";
export { renderSvg } from "./svg.js";
export type { BandSeries, FigureSpec, LineSeries } from "./svg.js";
export { ballVolume, besselJ, besselY, gammaFn, gaussLegendre, hyp0f1, sphereSurface } from "./special.js";
export { main } from "./cli.js";
