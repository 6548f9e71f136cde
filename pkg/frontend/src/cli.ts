#!/usr/bin/env node
/**
 * render --figure {4,5,6} --csv-dir <dir> --out <file>
 *
 * Reads the per-panel CSV datasets of one figure and writes a multi-panel
 * SVG image. Exit code 0 on success, 1 on any error (message on stderr).
 */

import { renderFigure } from "./render.js";

function parseArgs(argv: string[]): { figure: string; csvDir: string; out: string } {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new Error(`usage: render --figure {4,5,6} --csv-dir <dir> --out <file>`);
    }
    opts.set(key.slice(2), value);
  }
  const figure = opts.get("figure");
  const csvDir = opts.get("csv-dir");
  const out = opts.get("out");
  if (!figure || !csvDir || !out) {
    throw new Error(`usage: render --figure {4,5,6} --csv-dir <dir> --out <file>`);
  }
  return { figure, csvDir, out };
}

export function main(argv: string[]): number {
  try {
    const { figure, csvDir, out } = parseArgs(argv);
    renderFigure(figure, csvDir, out);
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    console.error(`render: ${(err as Error).message}`);
    return 1;
  }
}

process.exit(main(process.argv.slice(2)));
