export { parseCsv, readCsv, requireSchema, column, SchemaError,
         SOLUTION_COLUMNS, SCATTERING_COLUMNS, COMPARE_COLUMNS } from './csv.js';
export type { Table } from './csv.js';
export { encodePng, PNG_SIGNATURE } from './png.js';
export { Raster, textWidth } from './raster.js';
export { renderChart } from './chart.js';
export type { PanelSpec, Series } from './chart.js';
export { plotSolution, plotScattering, plotCompare, PLOTTERS } from './plots.js';
export type { PlotKind } from './plots.js';
export { main } from './cli.js';
