/** The three plot kinds, each validating its CSV schema before drawing. */

import { writeFileSync } from 'node:fs';

import { PanelSpec, renderChart } from './chart.js';
import { COMPARE_COLUMNS, SCATTERING_COLUMNS, SOLUTION_COLUMNS, SchemaError,
         Table, column, readCsv, requireSchema } from './csv.js';
import { encodePng } from './png.js';
import { Color } from './raster.js';

const BLUE: Color = [31, 119, 180];
const RED: Color = [214, 39, 40];
const DARK: Color = [20, 20, 20];
const GREEN: Color = [44, 160, 44];

function write(imagePath: string, panels: PanelSpec[], title: string): void {
  const img = renderChart(title, panels);
  writeFileSync(imagePath, encodePng(img.width, img.height, img.pixels));
}

export function plotSolution(csvPath: string, imagePath: string,
                             title = 'reconstructed solution'): void {
  const table = readCsv(csvPath);
  requireSolution(table, csvPath);
  const x = column(table, 'x');
  const panels: PanelSpec[] = [{
    series: [
      { label: '|u|', x, y: column(table, 'u_abs'), color: DARK, thickness: 3 },
      { label: 'Re u', x, y: column(table, 'u_re'), color: BLUE },
      { label: 'Im u', x, y: column(table, 'u_im'), color: RED },
    ],
    xLabel: 'x',
    yLabel: 'u',
  }];
  write(imagePath, panels, title);
}

export function plotScattering(csvPath: string, imagePath: string,
                               title = 'scattering data'): void {
  const table = readCsv(csvPath);
  requireScattering(table, csvPath);
  const z = column(table, 'z');
  const modulus = (re: string, im: string) => {
    const res = column(table, re);
    const ims = column(table, im);
    return res.map((v, i) => Math.hypot(v, ims[i]));
  };
  const panels: PanelSpec[] = [{
    series: [
      { label: '|a|', x: z, y: modulus('a_re', 'a_im'), color: DARK, thickness: 3 },
      { label: '|r+|', x: z, y: modulus('r_plus_re', 'r_plus_im'), color: BLUE },
      { label: '|r-|', x: z, y: modulus('r_minus_re', 'r_minus_im'), color: RED },
    ],
    xLabel: 'z',
    yLabel: 'modulus',
  }];
  write(imagePath, panels, title);
}

export function plotCompare(csvPath: string, imagePath: string,
                            title = 'IST vs direct integration'): void {
  const table = readCsv(csvPath);
  requireCompare(table, csvPath);
  const x = column(table, 'x');
  const panels: PanelSpec[] = [
    {
      series: [
        { label: '|u| IST', x, y: column(table, 'u_ist_abs'), color: BLUE, thickness: 3 },
        { label: '|u| oracle', x, y: column(table, 'u_oracle_abs'), color: RED },
      ],
      xLabel: '',
      yLabel: '|u|',
    },
    {
      series: [{ label: '|difference|', x, y: column(table, 'diff_abs'), color: GREEN }],
      xLabel: 'x',
      yLabel: 'residual',
    },
  ];
  write(imagePath, panels, title);
}

function requireSolution(table: Table, path: string): void {
  requireSchema(table, SOLUTION_COLUMNS, path);
}

function requireScattering(table: Table, path: string): void {
  requireSchema(table, SCATTERING_COLUMNS, path);
}

function requireCompare(table: Table, path: string): void {
  requireSchema(table, COMPARE_COLUMNS, path);
}

export const PLOTTERS = {
  solution: plotSolution,
  scattering: plotScattering,
  compare: plotCompare,
} as const;

export type PlotKind = keyof typeof PLOTTERS;

export { SchemaError };
