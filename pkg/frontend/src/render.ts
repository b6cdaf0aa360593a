/**
 * Build a figure from parsed tables and a recipe, and write it to disk
 * together with a sidecar text file recording the overlay checksums.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { basename, dirname } from "node:path";

import { column, metaString, readTable, Table } from "./csv.js";
import { computeOverlay, OverlayCurve } from "./overlays.js";
import { FigureRecipe } from "./recipe.js";
import { BandSeries, FigureSpec, LineSeries, renderSvg } from "./svg.js";

export class GridMismatchError extends Error {}

const PLOTTABLE = new Set(["diff-xs", "total-xs", "point-xs"]);

const DATA_COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd"];

const OVERLAY_STYLE: Record<string, { color: string; dash: string }> = {
  born: { color: "#d62728", dash: "7 4" },
  airy: { color: "#2ca02c", dash: "7 4" },
  additive: { color: "#9467bd", dash: "10 4 2 4" },
  extinction: { color: "#8c564b", dash: "2 4" },
  envelope: { color: "#444444", dash: "7 4" },
};

const AXIS_LABELS: Record<string, { x: string; y: string }> = {
  "diff-xs": { x: "scattering angle (deg)", y: "differential cross section" },
  "total-xs": { x: "wavenumber k", y: "total cross section" },
  "point-xs": { x: "wavenumber k", y: "point cross section" },
};

export interface BuiltFigure {
  svg: string;
  sidecar: string;
}

function checkGrids(tables: Table[]): void {
  const first = tables[0];
  const kind = metaString(first, "kind");
  if (!PLOTTABLE.has(kind)) {
    throw new GridMismatchError(`${first.source}: kind '${kind}' is not plottable`);
  }
  const x0 = column(first, first.columns[0]);
  for (const t of tables.slice(1)) {
    const tk = metaString(t, "kind");
    if (tk !== kind) {
      throw new GridMismatchError(
        `${t.source}: kind '${tk}' does not match '${kind}' of ${first.source}`);
    }
    if (t.columns[0] !== first.columns[0]) {
      throw new GridMismatchError(
        `${t.source}: x column '${t.columns[0]}' does not match ` +
        `'${first.columns[0]}' of ${first.source}`);
    }
    const x = column(t, t.columns[0]);
    if (x.length !== x0.length) {
      throw new GridMismatchError(
        `${t.source}: ${x.length} grid points, but ${first.source} has ${x0.length}`);
    }
    for (let i = 0; i < x.length; i++) {
      if (Math.abs(x[i] - x0[i]) > 1e-12 * Math.max(1, Math.abs(x0[i]))) {
        throw new GridMismatchError(
          `${t.source}: grid point ${i} is ${x[i]}, but ${first.source} has ${x0[i]}`);
      }
    }
  }
}

function stem(path: string): string {
  return basename(path).replace(/\.[^.]*$/, "");
}

/** Assemble the figure (pure part: no file IO). */
export function buildFigure(recipe: FigureRecipe, tables: Table[]): BuiltFigure {
  if (tables.length === 0) {
    throw new RangeError("a figure needs at least one input table");
  }
  checkGrids(tables);
  const kind = metaString(tables[0], "kind");
  const x = column(tables[0], tables[0].columns[0]);

  const bands: BandSeries[] = [];
  const lines: LineSeries[] = [];
  if (kind === "point-xs") {
    lines.push({ label: "hard sphere", x, y: column(tables[0], "hardsphere"), color: DATA_COLORS[0] });
    lines.push({ label: "delta-like", x, y: column(tables[0], "deltalike"), color: DATA_COLORS[1] });
    lines.push({ label: "bound", x, y: column(tables[0], "bound"), color: "#999999" });
  } else {
    tables.forEach((t, i) => {
      const color = DATA_COLORS[i % DATA_COLORS.length];
      const label = tables.length > 1 ? stem(t.source) : "mean";
      bands.push({ x, yLow: column(t, "q1"), yHigh: column(t, "q3"), color });
      lines.push({ label, x, y: column(t, "mean"), color });
    });
  }

  const overlays: OverlayCurve[] = recipe.overlays.map((name) =>
    computeOverlay(name, tables[0]));
  for (const ov of overlays) {
    const style = OVERLAY_STYLE[ov.name];
    lines.push({
      label: ov.label, x: ov.x, y: ov.y,
      color: style.color, dash: style.dash, width: 1.8,
    });
  }

  const axis = AXIS_LABELS[kind];
  const spec: FigureSpec = {
    title: recipe.title,
    xLabel: axis.x,
    yLabel: axis.y,
    xScale: recipe.xscale,
    yScale: recipe.yscale,
    bands,
    lines,
  };

  const sidecarLines = [`figure ${basename(recipe.out)}`];
  for (const t of tables) {
    sidecarLines.push(`input ${basename(t.source)} kind=${kind} rows=${t.rows.length}`);
  }
  for (const ov of overlays) {
    const pairs = Object.entries(ov.inputs)
      .map(([key, val]) => `${key}=${val}`)
      .join(" ");
    sidecarLines.push(`overlay ${ov.name} sha256=${ov.checksum} ${pairs} points=${ov.x.length}`);
  }
  return { svg: renderSvg(spec), sidecar: sidecarLines.join("\n") + "\n" };
}

export interface RenderedPaths {
  out: string;
  sidecar: string;
}

/** Read the recipe inputs, render, and write image plus sidecar. */
export function renderRecipe(recipe: FigureRecipe): RenderedPaths {
  const tables = recipe.inputs.map(readTable);
  const built = buildFigure(recipe, tables);
  mkdirSync(dirname(recipe.out), { recursive: true });
  writeFileSync(recipe.out, built.svg);
  const sidecar = recipe.out + ".txt";
  writeFileSync(sidecar, built.sidecar);
  return { out: recipe.out, sidecar };
}
