/**
 * SVG rendering for the three figure kinds.
 *
 * Every renderer is a pure function from parsed tables to an SVG string:
 * the same input bytes always produce the same output bytes.  Nothing here
 * recomputes walk quantities — the renderers draw exactly the columns the
 * CSV files carry.
 */

import {
  PROFILE_CURVES,
  SchemaMismatch,
  Table,
  validateEmpirical,
  validateLadder,
  validateOverlayReference,
  validateProfile,
} from "./schema.js";

export interface RenderOptions {
  width?: number;
  height?: number;
  title?: string;
}

interface Box {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

const PALETTE = ["#1f5fa8", "#c44e52", "#2e7d32", "#8172b2", "#b8860b", "#17becf"];

function box(options: RenderOptions): Box {
  return {
    width: options.width ?? 640,
    height: options.height ?? 420,
    left: 72,
    right: 24,
    top: 40,
    bottom: 52,
  };
}

/** Round to at most six significant digits and drop trailing zeros. */
function fmt(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) {
    return value.toExponential(2).replace(/\.?0+e/, "e");
  }
  return String(Number(value.toPrecision(6)));
}

/** Pixel coordinate with fixed precision so output is byte-stable. */
function px(value: number): string {
  return value.toFixed(2);
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

function padded(lo: number, hi: number): [number, number] {
  if (lo === hi) {
    const pad = lo === 0 ? 1 : Math.abs(lo) * 0.1;
    return [lo - pad, hi + pad];
  }
  const pad = (hi - lo) * 0.06;
  return [lo - pad, hi + pad];
}

interface Scale {
  (value: number): number;
  ticks: number[];
}

function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const scale = ((value: number) => r0 + ((value - d0) / (d1 - d0)) * (r1 - r0)) as Scale;
  scale.ticks = linearTicks(d0, d1);
  return scale;
}

function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const scale = ((value: number) =>
    r0 + ((Math.log10(value) - l0) / (l1 - l0)) * (r1 - r0)) as Scale;
  scale.ticks = decadeTicks(d0, d1);
  return scale;
}

/** About six round tick positions covering [lo, hi]. */
function linearTicks(lo: number, hi: number): number[] {
  const span = hi - lo;
  const raw = span / 6;
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const residual = raw / power;
  const step = power * (residual > 5 ? 10 : residual > 2 ? 5 : residual > 1 ? 2 : 1);
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); Math.pow(10, e) <= hi * (1 + 1e-9); e += 1) {
    ticks.push(Math.pow(10, e));
  }
  return ticks;
}

function openSvg(b: Box, title: string): string[] {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${b.width}" height="${b.height}" viewBox="0 0 ${b.width} ${b.height}" font-family="Helvetica, Arial, sans-serif" font-size="12">`,
    `<rect width="${b.width}" height="${b.height}" fill="#ffffff"/>`,
    `<text x="${px(b.width / 2)}" y="22" text-anchor="middle" font-size="14">${escapeXml(title)}</text>`,
  ];
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function axes(
  parts: string[],
  b: Box,
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
): void {
  const x0 = b.left;
  const x1 = b.width - b.right;
  const y0 = b.height - b.bottom;
  const y1 = b.top;

  for (const t of xScale.ticks) {
    const x = xScale(t);
    parts.push(
      `<line x1="${px(x)}" y1="${px(y1)}" x2="${px(x)}" y2="${px(y0)}" stroke="#e0e0e0"/>`,
      `<text x="${px(x)}" y="${px(y0 + 18)}" text-anchor="middle">${fmt(t)}</text>`,
    );
  }
  for (const t of yScale.ticks) {
    const y = yScale(t);
    parts.push(
      `<line x1="${px(x0)}" y1="${px(y)}" x2="${px(x1)}" y2="${px(y)}" stroke="#e0e0e0"/>`,
      `<text x="${px(x0 - 6)}" y="${px(y + 4)}" text-anchor="end">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<rect x="${px(x0)}" y="${px(y1)}" width="${px(x1 - x0)}" height="${px(y0 - y1)}" fill="none" stroke="#333333"/>`,
    `<text x="${px((x0 + x1) / 2)}" y="${px(b.height - 12)}" text-anchor="middle">${escapeXml(xLabel)}</text>`,
    `<text transform="translate(16,${px((y0 + y1) / 2)}) rotate(-90)" text-anchor="middle">${escapeXml(yLabel)}</text>`,
  );
}

function legend(parts: string[], b: Box, entries: [string, string][]): void {
  const x = b.width - b.right - 150;
  let y = b.top + 14;
  for (const [label, color] of entries) {
    parts.push(
      `<line x1="${px(x)}" y1="${px(y - 4)}" x2="${px(x + 22)}" y2="${px(y - 4)}" stroke="${color}" stroke-width="2"/>`,
      `<text x="${px(x + 28)}" y="${px(y)}">${escapeXml(label)}</text>`,
    );
    y += 16;
  }
}

function polyline(xs: number[], ys: number[], xScale: Scale, yScale: Scale, color: string): string {
  const points = xs.map((x, i) => `${px(xScale(x))},${px(yScale(ys[i]!))}`).join(" ");
  return `<polyline points="${points}" fill="none" stroke="${color}" stroke-width="1.5"/>`;
}

function sortedOrder(keys: number[]): number[] {
  return keys
    .map((value, index) => index)
    .sort((i, j) => keys[i]! - keys[j]! || i - j);
}

/**
 * Correction profile: the exact correction against x_1 with the two
 * evaluated approximations drawn over it.
 */
export function renderProfile(table: Table, options: RenderOptions = {}, origin = "<csv>"): string {
  validateProfile(table, origin);
  const b = box(options);
  const order = sortedOrder(table.columns["x_1"]!);
  const xs = order.map((i) => table.columns["x_1"]![i]!);

  const series = PROFILE_CURVES.map((name) => order.map((i) => table.columns[name]![i]!));
  const [xLo, xHi] = padded(...extent(xs));
  const [yLo, yHi] = padded(...extent([0, ...series.flat()]));

  const xScale = linearScale([xLo, xHi], [b.left, b.width - b.right]);
  const yScale = linearScale([yLo, yHi], [b.height - b.bottom, b.top]);

  const dim = table.meta["dim"] ?? "?";
  const n = table.meta["n"] ?? "?";
  const title = options.title ?? `Point-defect correction, dim=${dim}, n=${n}`;

  const parts = openSvg(b, title);
  axes(parts, b, xScale, yScale, "x_1", "correction");
  series.forEach((ys, k) => {
    parts.push(polyline(xs, ys, xScale, yScale, PALETTE[k]!));
  });
  for (let i = 0; i < xs.length; i += 1) {
    parts.push(
      `<circle cx="${px(xScale(xs[i]!))}" cy="${px(yScale(series[0]![i]!))}" r="2.4" fill="${PALETTE[0]}"/>`,
    );
  }
  legend(
    parts,
    b,
    PROFILE_CURVES.map((name, k) => [name, PALETTE[k]!]),
  );
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/**
 * Convergence ladder: scaled residual against n on log-log axes, one line
 * per site.
 */
export function renderLadder(table: Table, options: RenderOptions = {}, origin = "<csv>"): string {
  validateLadder(table, origin);
  const b = box(options);

  const ns = table.columns["n"]!;
  const sites = table.columns["x_1"]!;
  const residuals = table.columns["scaled_residual"]!;

  const siteValues = [...new Set(sites)].sort((a, c) => a - c);
  const positive = residuals.filter((v) => v > 0);
  if (positive.length === 0) {
    throw new SchemaMismatch(`${origin}: scaled_residual has no positive entries to draw on a log axis`);
  }
  const [rLo, rHi] = extent(positive);
  const [nLo, nHi] = extent(ns);

  const xScale = logScale([nLo / 1.15, nHi * 1.15], [b.left, b.width - b.right]);
  const yScale = logScale([rLo / 1.6, rHi * 1.6], [b.height - b.bottom, b.top]);

  const title = options.title ?? `Scaled residual vs n (dim=${table.meta["dim"] ?? "?"})`;
  const parts = openSvg(b, title);
  axes(parts, b, xScale, yScale, "n", "scaled residual");

  const entries: [string, string][] = [];
  siteValues.forEach((site, k) => {
    const color = PALETTE[k % PALETTE.length]!;
    const rows: number[] = [];
    for (let i = 0; i < table.rows; i += 1) {
      if (sites[i] === site && residuals[i]! > 0) rows.push(i);
    }
    rows.sort((i, j) => ns[i]! - ns[j]!);
    const xs = rows.map((i) => ns[i]!);
    const ys = rows.map((i) => residuals[i]!);
    if (xs.length > 1) parts.push(polyline(xs, ys, xScale, yScale, color));
    for (let i = 0; i < xs.length; i += 1) {
      parts.push(
        `<circle cx="${px(xScale(xs[i]!))}" cy="${px(yScale(ys[i]!))}" r="3" fill="${color}"/>`,
      );
    }
    entries.push([`x_1 = ${fmt(site)}`, color]);
  });
  legend(parts, b, entries);
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/**
 * Monte-Carlo overlay: sampled estimates with error bars on top of the
 * exact distribution from a second table.
 */
export function renderOverlay(
  empirical: Table,
  reference: Table,
  options: RenderOptions = {},
  origins: [string, string] = ["<csv>", "<csv>"],
): string {
  validateEmpirical(empirical, origins[0]);
  validateOverlayReference(reference, origins[1]);
  const b = box(options);

  const orderRef = sortedOrder(reference.columns["x_1"]!);
  const refXs = orderRef.map((i) => reference.columns["x_1"]![i]!);
  const refYs = orderRef.map((i) => reference.columns["exact_total"]![i]!);

  const orderEmp = sortedOrder(empirical.columns["x_1"]!);
  const empXs = orderEmp.map((i) => empirical.columns["x_1"]![i]!);
  const empYs = orderEmp.map((i) => empirical.columns["value"]![i]!);
  const empErr = orderEmp.map((i) => empirical.columns["stderr"]![i]!);

  const [xLo, xHi] = padded(...extent([...refXs, ...empXs]));
  const yTop = extent([...refYs, ...empYs.map((v, i) => v + 2 * empErr[i]!)])[1];
  const [yLo, yHi] = padded(0, yTop);

  const xScale = linearScale([xLo, xHi], [b.left, b.width - b.right]);
  const yScale = linearScale([yLo, yHi], [b.height - b.bottom, b.top]);

  const samples = empirical.meta["samples"] ?? "?";
  const title = options.title ?? `Sampled vs exact distribution, n=${empirical.meta["n"] ?? "?"}, samples=${samples}`;
  const parts = openSvg(b, title);
  axes(parts, b, xScale, yScale, "x_1", "probability");

  parts.push(polyline(refXs, refYs, xScale, yScale, PALETTE[0]!));
  for (let i = 0; i < empXs.length; i += 1) {
    const cx = xScale(empXs[i]!);
    const lo = yScale(empYs[i]! - 2 * empErr[i]!);
    const hi = yScale(empYs[i]! + 2 * empErr[i]!);
    parts.push(
      `<line x1="${px(cx)}" y1="${px(lo)}" x2="${px(cx)}" y2="${px(hi)}" stroke="${PALETTE[1]}"/>`,
      `<circle cx="${px(cx)}" cy="${px(yScale(empYs[i]!))}" r="2.6" fill="${PALETTE[1]}"/>`,
    );
  }
  legend(parts, b, [
    ["exact_total", PALETTE[0]!],
    ["sampled ± 2 se", PALETTE[1]!],
  ]);
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
