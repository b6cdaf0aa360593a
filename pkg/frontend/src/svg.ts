/**
 * Minimal deterministic SVG line/band plot.
 *
 * Output contains no timestamps or generated ids, so rendering the
 * same data twice gives byte-identical files.
 */

import { scaleLinear, scaleLog } from "d3-scale";

import { AxisScale } from "./recipe.js";

export interface LineSeries {
  label?: string;
  x: number[];
  y: number[];
  color: string;
  dash?: string;
  width?: number;
}

export interface BandSeries {
  label?: string;
  x: number[];
  yLow: number[];
  yHigh: number[];
  color: string;
  opacity?: number;
}

export interface FigureSpec {
  title?: string;
  xLabel: string;
  yLabel: string;
  xScale: AxisScale;
  yScale: AxisScale;
  bands: BandSeries[];
  lines: LineSeries[];
  width?: number;
  height?: number;
}

const MARGIN = { left: 64, right: 16, top: 30, bottom: 46 };

type Scale = ReturnType<typeof scaleLinear<number, number>>;

function collect(spec: FigureSpec, axis: "x" | "y", logScale: boolean): number[] {
  const out: number[] = [];
  const push = (v: number) => {
    if (Number.isFinite(v) && (!logScale || v > 0)) {
      out.push(v);
    }
  };
  for (const b of spec.bands) {
    (axis === "x" ? b.x : b.yLow).forEach(push);
    if (axis === "y") {
      b.yHigh.forEach(push);
    }
  }
  for (const l of spec.lines) {
    (axis === "x" ? l.x : l.y).forEach(push);
  }
  return out;
}

function makeScale(values: number[], logScale: boolean, range: [number, number]): Scale {
  if (values.length === 0) {
    throw new RangeError("no plottable values on this axis");
  }
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    // degenerate span, pad so the scale stays invertible
    lo = logScale ? lo / 2 : lo - 1;
    hi = logScale ? hi * 2 : hi + 1;
  }
  const sc: Scale = logScale
    ? (scaleLog() as unknown as Scale)
    : (scaleLinear() as unknown as Scale);
  return sc.domain([lo, hi]).range(range).nice();
}

function fmt(v: number): string {
  return Number(v.toPrecision(6)).toString();
}

const esc = (s: string) => s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

function linePath(
  xs: number[], ys: number[], sx: Scale, sy: Scale, logX: boolean, logY: boolean): string {
  const parts: string[] = [];
  let pen = false;
  for (let i = 0; i < xs.length; i++) {
    const ok =
      Number.isFinite(xs[i]) && Number.isFinite(ys[i]) &&
      (!logX || xs[i] > 0) && (!logY || ys[i] > 0);
    if (!ok) {
      pen = false; // break the stroke across unplottable points
      continue;
    }
    parts.push(`${pen ? "L" : "M"}${fmt(sx(xs[i]))},${fmt(sy(ys[i]))}`);
    pen = true;
  }
  return parts.join(" ");
}

function bandPath(
  b: BandSeries, sx: Scale, sy: Scale, logX: boolean, logY: boolean): string {
  const keep: number[] = [];
  for (let i = 0; i < b.x.length; i++) {
    const ok =
      Number.isFinite(b.x[i]) && Number.isFinite(b.yLow[i]) && Number.isFinite(b.yHigh[i]) &&
      (!logX || b.x[i] > 0) && (!logY || b.yLow[i] > 0);
    if (ok) {
      keep.push(i);
    }
  }
  if (keep.length < 2) {
    return "";
  }
  const fwd = keep.map((i, j) =>
    `${j === 0 ? "M" : "L"}${fmt(sx(b.x[i]))},${fmt(sy(b.yHigh[i]))}`);
  const back = keep
    .slice()
    .reverse()
    .map((i) => `L${fmt(sx(b.x[i]))},${fmt(sy(b.yLow[i]))}`);
  return fwd.join(" ") + " " + back.join(" ") + " Z";
}

export function renderSvg(spec: FigureSpec): string {
  const width = spec.width ?? 720;
  const height = spec.height ?? 480;
  const logX = spec.xScale === "log";
  const logY = spec.yScale === "log";
  const sx = makeScale(collect(spec, "x", logX), logX, [MARGIN.left, width - MARGIN.right]);
  const sy = makeScale(collect(spec, "y", logY), logY, [height - MARGIN.bottom, MARGIN.top]);

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif">`);
  out.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  const x0 = MARGIN.left;
  const x1 = width - MARGIN.right;
  const y0 = height - MARGIN.bottom;
  const y1 = MARGIN.top;

  // axes with tick marks and labels
  const xTicks = sx.ticks(logX ? undefined : 7);
  const yTicks = sy.ticks(logY ? undefined : 7);
  const xFmt = sx.tickFormat(logX ? 8 : 7);
  const yFmt = sy.tickFormat(logY ? 8 : 7);
  out.push(`<g stroke="#333" stroke-width="1" fill="none">`);
  out.push(`<path d="M${x0},${y0} H${x1}"/>`);
  out.push(`<path d="M${x0},${y0} V${y1}"/>`);
  for (const t of xTicks) {
    out.push(`<path d="M${fmt(sx(t))},${y0} v5"/>`);
  }
  for (const t of yTicks) {
    out.push(`<path d="M${x0},${fmt(sy(t))} h-5"/>`);
  }
  out.push(`</g>`);
  out.push(`<g fill="#333" font-size="12">`);
  for (const t of xTicks) {
    const label = xFmt(t);
    if (label !== "") {
      out.push(
        `<text x="${fmt(sx(t))}" y="${y0 + 18}" text-anchor="middle">${esc(label)}</text>`);
    }
  }
  for (const t of yTicks) {
    const label = yFmt(t);
    if (label !== "") {
      out.push(
        `<text x="${x0 - 8}" y="${fmt(sy(t) + 4)}" text-anchor="end">${esc(label)}</text>`);
    }
  }
  out.push(
    `<text x="${(x0 + x1) / 2}" y="${height - 8}" text-anchor="middle">` +
    `${esc(spec.xLabel)}</text>`);
  out.push(
    `<text x="14" y="${(y0 + y1) / 2}" text-anchor="middle" ` +
    `transform="rotate(-90 14 ${(y0 + y1) / 2})">${esc(spec.yLabel)}</text>`);
  if (spec.title) {
    out.push(
      `<text x="${(x0 + x1) / 2}" y="18" text-anchor="middle" font-size="13">` +
      `${esc(spec.title)}</text>`);
  }
  out.push(`</g>`);

  out.push(`<clipPath id="plot"><rect x="${x0}" y="${y1}" width="${x1 - x0}" ` +
    `height="${y0 - y1}"/></clipPath>`);
  out.push(`<g clip-path="url(#plot)">`);
  for (const b of spec.bands) {
    const d = bandPath(b, sx, sy, logX, logY);
    if (d !== "") {
      out.push(`<path d="${d}" fill="${b.color}" fill-opacity="${b.opacity ?? 0.25}"/>`);
    }
  }
  for (const l of spec.lines) {
    const d = linePath(l.x, l.y, sx, sy, logX, logY);
    if (d !== "") {
      const dash = l.dash ? ` stroke-dasharray="${l.dash}"` : "";
      out.push(
        `<path d="${d}" fill="none" stroke="${l.color}" ` +
        `stroke-width="${l.width ?? 1.5}"${dash}/>`);
    }
  }
  out.push(`</g>`);

  // legend, top right inside the plot area
  const entries = [
    ...spec.bands.filter((b) => b.label).map((b) => ({ label: b.label!, color: b.color, dash: "" })),
    ...spec.lines.filter((l) => l.label).map((l) => ({ label: l.label!, color: l.color, dash: l.dash ?? "" })),
  ];
  if (entries.length > 0) {
    let ly = y1 + 14;
    out.push(`<g font-size="12">`);
    for (const e of entries) {
      const dash = e.dash ? ` stroke-dasharray="${e.dash}"` : "";
      out.push(
        `<path d="M${x1 - 150},${ly - 4} h24" stroke="${e.color}" stroke-width="2"${dash}/>`);
      out.push(`<text x="${x1 - 120}" y="${ly}" fill="#333">${esc(e.label)}</text>`);
      ly += 17;
    }
    out.push(`</g>`);
  }

  out.push(`</svg>`);
  return out.join("\n") + "\n";
}
