/**
 * Minimal deterministic SVG builder for line plots: plain string assembly,
 * fixed coordinate formatting, no timestamps or generated ids, so identical
 * inputs produce identical bytes.
 */

export const PANEL_W = 340;
export const PANEL_H = 250;
export const MARGIN = { left: 58, right: 14, top: 26, bottom: 42 };

export interface Scale {
  (v: number): number;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = (r1 - r0) / (d1 - d0);
  return (v: number) => r0 + (v - d0) * k;
}

/** Fixed two-decimal pixel coordinates keep the output byte-stable. */
export function px(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

/** Tick label formatting: plain decimals down to 1e-3, exponent below. */
export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e-3 && a < 1e4) {
    const s = v.toPrecision(3);
    return s.includes(".") ? s.replace(/\.?0+$/, "") : s;
  }
  return v.toExponential(0).replace("e-", "e-").replace("e+", "e");
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(lo + ((hi - lo) * i) / (count - 1));
  }
  return out;
}

export function polyline(
  xs: number[], ys: number[], sx: Scale, sy: Scale,
  color: string, dashed: boolean,
): string {
  const pts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) continue;
    pts.push(`${pts.length === 0 ? "M" : "L"}${px(sx(xs[i]))},${px(sy(ys[i]))}`);
  }
  const dash = dashed ? ' stroke-dasharray="6,3"' : "";
  return `<path d="${pts.join(" ")}" fill="none" stroke="${color}" stroke-width="1.6"${dash}/>`;
}

export interface AxisSpec {
  xRange: [number, number];
  yRange: [number, number];
  xLabel: string;
  yLabel: string;
}

/** Frame, ticks and labels of one panel placed at (ox, oy). */
export function panelFrame(ox: number, oy: number, spec: AxisSpec, panelId: string): {
  svg: string[];
  sx: Scale;
  sy: Scale;
} {
  const x0 = ox + MARGIN.left;
  const x1 = ox + PANEL_W - MARGIN.right;
  const y0 = oy + PANEL_H - MARGIN.bottom;
  const y1 = oy + MARGIN.top;
  const sx = linearScale(spec.xRange, [x0, x1]);
  const sy = linearScale(spec.yRange, [y0, y1]);
  const parts: string[] = [];
  parts.push(`<rect x="${px(x0)}" y="${px(y1)}" width="${px(x1 - x0)}" height="${px(y0 - y1)}" fill="none" stroke="#333" stroke-width="1"/>`);
  for (const t of ticks(spec.xRange[0], spec.xRange[1])) {
    const tx = sx(t);
    parts.push(`<line x1="${px(tx)}" y1="${px(y0)}" x2="${px(tx)}" y2="${px(y0 + 4)}" stroke="#333" stroke-width="1"/>`);
    parts.push(`<text x="${px(tx)}" y="${px(y0 + 16)}" font-size="10" text-anchor="middle" fill="#333">${tickLabel(t)}</text>`);
  }
  for (const t of ticks(spec.yRange[0], spec.yRange[1])) {
    const ty = sy(t);
    parts.push(`<line x1="${px(x0 - 4)}" y1="${px(ty)}" x2="${px(x0)}" y2="${px(ty)}" stroke="#333" stroke-width="1"/>`);
    parts.push(`<text x="${px(x0 - 6)}" y="${px(ty + 3)}" font-size="10" text-anchor="end" fill="#333">${tickLabel(t)}</text>`);
  }
  parts.push(`<text x="${px((x0 + x1) / 2)}" y="${px(y0 + 32)}" font-size="11" text-anchor="middle" fill="#000">${spec.xLabel}</text>`);
  parts.push(`<text x="${px(ox + 14)}" y="${px((y0 + y1) / 2)}" font-size="11" text-anchor="middle" fill="#000" transform="rotate(-90 ${px(ox + 14)} ${px((y0 + y1) / 2)})">${spec.yLabel}</text>`);
  parts.push(`<text x="${px(x0 + 6)}" y="${px(y1 + 14)}" font-size="12" font-weight="bold" fill="#000">(${panelId})</text>`);
  return { svg: parts, sx, sy };
}

export function legend(ox: number, oy: number, entries: { color: string; dashed?: boolean; label: string }[]): string[] {
  const parts: string[] = [];
  let y = oy + MARGIN.top + 8;
  const x = ox + PANEL_W - MARGIN.right - 112;
  for (const e of entries) {
    const dash = e.dashed ? ' stroke-dasharray="6,3"' : "";
    parts.push(`<line x1="${px(x)}" y1="${px(y)}" x2="${px(x + 22)}" y2="${px(y)}" stroke="${e.color}" stroke-width="1.6"${dash}/>`);
    parts.push(`<text x="${px(x + 27)}" y="${px(y + 3)}" font-size="9" fill="#333">${e.label}</text>`);
    y += 13;
  }
  return parts;
}

export function document(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}
