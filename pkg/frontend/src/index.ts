export {
    EmptyData, SchemaError, SWEEP_KNOBS,
    parseCsv, readCriticalRate, readGrid, readLineCuts, readSpectrum, requireHeader,
} from "./csv.js";
export type { CriticalRate, Grid, LineCuts, SpectrumData, Table } from "./csv.js";
export { BRANCH_COLORS, COMPLEX_WHITE, CUT_COLORS, REAL_GREEN, rampColor } from "./colors.js";
export { sha256Hex, svgDocument } from "./svg.js";
export type { InputStamp, Panel } from "./svg.js";
export {
    FIGURE_KINDS, branchesPanels, gapcurvePanel, heatmapPanel,
    linecutsPanel, render, stampInputs, writeFigure,
} from "./figures.js";
export type { FigureKind, FigureSpec } from "./figures.js";
export { FIGURE_FILES, REQUIRED_INPUTS, makeAllFigures, transitionCounts } from "./makeAllFigures.js";
