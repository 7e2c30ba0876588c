/** Strict CSV reading for the solver's output files: exact header match,
 * rectangular numeric body, loud failures on anything else. */

import { readFileSync } from 'node:fs';

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  /** column name -> numeric values */
  data: Map<string, number[]>;
  rows: number;
}

export const SOLUTION_COLUMNS = ['x', 'u_re', 'u_im', 'u_abs', 'w_re', 'w_im'];
export const SCATTERING_COLUMNS = [
  'z', 'a_re', 'a_im', 'd_re', 'd_im', 'B2_re', 'B2_im', 'C2_re', 'C2_im',
  'r_plus_re', 'r_plus_im', 'r_minus_re', 'r_minus_im',
];
export const COMPARE_COLUMNS = ['x', 'u_ist_abs', 'u_oracle_abs', 'diff_abs'];

export function parseCsv(text: string, path = '<string>'): Table {
  const lines = text.split('\n');
  while (lines.length > 0 && lines[lines.length - 1] === '') lines.pop();
  if (lines.length === 0) throw new SchemaError(`${path}: empty file`);
  const columns = lines[0].split(',').map((c) => c.trim());
  if (new Set(columns).size !== columns.length) {
    throw new SchemaError(`${path}: duplicate column names`);
  }
  const data = new Map<string, number[]>(columns.map((c) => [c, []]));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(',');
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `${path}:${i + 1}: expected ${columns.length} cells, got ${cells.length}`,
      );
    }
    for (let j = 0; j < columns.length; j++) {
      const value = Number(cells[j]);
      if (!Number.isFinite(value)) {
        throw new SchemaError(`${path}:${i + 1}: non-numeric cell ${JSON.stringify(cells[j])}`);
      }
      data.get(columns[j])!.push(value);
    }
  }
  return { columns, data, rows: lines.length - 1 };
}

export function readCsv(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, 'utf8');
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  return parseCsv(text, path);
}

/** Require the exact documented header (names and order) and at least one row. */
export function requireSchema(table: Table, expected: string[], path: string): void {
  const got = table.columns.join(',');
  const want = expected.join(',');
  if (got !== want) {
    throw new SchemaError(`${path}: header mismatch\n  expected: ${want}\n  got:      ${got}`);
  }
  if (table.rows === 0) throw new SchemaError(`${path}: no data rows`);
}

export function column(table: Table, name: string): number[] {
  const values = table.data.get(name);
  if (values === undefined) throw new SchemaError(`missing column ${name}`);
  return values;
}
