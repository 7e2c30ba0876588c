#!/usr/bin/env node
/** viz <kind> --in <csv> --out <png> [--title <text>]
 *
 * Kinds: solution | scattering | compare.  Exit codes: 0 ok, 2 schema or I/O
 * error, 1 usage error. */

import { PLOTTERS, PlotKind, SchemaError } from './plots.js';

function usage(): void {
  process.stderr.write(
    'usage: viz <solution|scattering|compare> --in <csv> --out <png> [--title <text>]\n',
  );
}

export function main(argv: string[]): number {
  const [kind, ...rest] = argv;
  if (!kind || !(kind in PLOTTERS)) {
    usage();
    return 1;
  }
  let input: string | undefined;
  let output: string | undefined;
  let title: string | undefined;
  for (let i = 0; i < rest.length; i += 2) {
    const flag = rest[i];
    const value = rest[i + 1];
    if (value === undefined) {
      usage();
      return 1;
    }
    if (flag === '--in') input = value;
    else if (flag === '--out') output = value;
    else if (flag === '--title') title = value;
    else {
      usage();
      return 1;
    }
  }
  if (!input || !output) {
    usage();
    return 1;
  }
  try {
    if (title !== undefined) {
      PLOTTERS[kind as PlotKind](input, output, title);
    } else {
      PLOTTERS[kind as PlotKind](input, output);
    }
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 2;
    }
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 2;
  }
  process.stdout.write(`wrote ${output}\n`);
  return 0;
}

const entry = process.argv[1] ?? '';
if (entry.endsWith('cli.js') || entry.endsWith('cli.ts')) {
  process.exit(main(process.argv.slice(2)));
}
