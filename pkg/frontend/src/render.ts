/**
 * Render one multi-panel comparison figure from the per-panel CSV datasets
 * emitted by the simulator CLI. Pure function of the CSV bytes: fixed axis
 * framing, no autoscaling, reruns are byte-identical.
 */

import { writeFileSync } from "node:fs";
import { join } from "node:path";

import { column, readCsv } from "./csv.js";
import { FIGURES, FigureSpec } from "./figures.js";
import { PANEL_H, PANEL_W, document as svgDocument, legend, panelFrame, polyline } from "./svg.js";

export function figureSpec(figureId: string): FigureSpec {
  const spec = FIGURES[figureId];
  if (!spec) {
    throw new Error(`unknown figure id "${figureId}"; available: ${Object.keys(FIGURES).join(", ")}`);
  }
  return spec;
}

export function renderFigureSvg(figureId: string, csvDir: string): string {
  const spec = figureSpec(figureId);
  const cols = spec.columns;
  const rows = Math.ceil(spec.panels.length / cols);
  const width = cols * PANEL_W;
  const height = rows * PANEL_H + 22;
  const body: string[] = [];
  body.push(`<text x="${width / 2}" y="16" font-size="13" text-anchor="middle" fill="#000">${spec.title}</text>`);
  spec.panels.forEach((panel, i) => {
    const ox = (i % cols) * PANEL_W;
    const oy = Math.floor(i / cols) * PANEL_H + 22;
    const table = readCsv(join(csvDir, panel.csv));
    const xs = column(table, panel.x);
    const frame = panelFrame(ox, oy, {
      xRange: panel.xRange,
      yRange: panel.yRange,
      xLabel: "input amplitude",
      yLabel: panel.yLabel,
    }, panel.id);
    body.push(`<g>`);
    body.push(...frame.svg);
    // clip curves to the fixed panel frame
    const clipId = `clip-${figureId}-${panel.id}`;
    const cx = ox + 58, cy = oy + 26;
    body.push(`<clipPath id="${clipId}"><rect x="${cx}" y="${cy}" width="${PANEL_W - 72}" height="${PANEL_H - 68}"/></clipPath>`);
    body.push(`<g clip-path="url(#${clipId})">`);
    for (const curve of panel.curves) {
      const ys = column(table, curve.column);
      body.push(polyline(xs, ys, frame.sx, frame.sy, curve.color, curve.dashed ?? false));
    }
    body.push(`</g>`);
    body.push(...legend(ox, oy, panel.curves));
    body.push(`</g>`);
  });
  return svgDocument(width, height, body);
}

export function renderFigure(figureId: string, csvDir: string, outPath: string): void {
  const svg = renderFigureSvg(figureId, csvDir);
  writeFileSync(outPath, svg, "utf-8");
}
