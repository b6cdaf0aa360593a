/**
 * Figure recipes: flat key=value text naming the input CSVs, the
 * overlays to draw, the axis scales and the output image path.
 */

import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

export const OVERLAY_NAMES = ["born", "airy", "additive", "envelope", "extinction"] as const;

export type OverlayName = (typeof OVERLAY_NAMES)[number];

export type AxisScale = "linear" | "log";

export interface FigureRecipe {
  inputs: string[];
  overlays: OverlayName[];
  xscale: AxisScale;
  yscale: AxisScale;
  out: string;
  title?: string;
}

export class RecipeError extends Error {}

function parseScale(source: string, ln: number, key: string, value: string): AxisScale {
  if (value !== "linear" && value !== "log") {
    throw new RecipeError(`${source}:${ln}: ${key} must be 'linear' or 'log', got '${value}'`);
  }
  return value;
}

const KNOWN_KEYS = new Set(["input", "overlays", "xscale", "yscale", "out", "title"]);

/**
 * Parse recipe text. Relative paths are resolved against baseDir.
 *
 * Keys: input (required, comma-separated CSV paths), out (required
 * image path), overlays (comma-separated overlay names or 'none'),
 * xscale/yscale (linear|log, default linear), title (optional).
 * Lines starting with '#' and blank lines are skipped.
 */
export function parseRecipe(text: string, source = "<recipe>", baseDir = "."): FigureRecipe {
  const entries: Record<string, string> = {};
  const lineOf: Record<string, number> = {};
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "" || line.startsWith("#")) {
      continue;
    }
    const eq = line.indexOf("=");
    if (eq < 0) {
      throw new RecipeError(`${source}:${i + 1}: expected key=value, got '${line}'`);
    }
    const key = line.slice(0, eq).trim();
    if (!KNOWN_KEYS.has(key)) {
      throw new RecipeError(`${source}:${i + 1}: unknown key '${key}'`);
    }
    if (key in entries) {
      throw new RecipeError(
        `${source}:${i + 1}: duplicate key '${key}' (first on line ${lineOf[key]})`);
    }
    entries[key] = line.slice(eq + 1).trim();
    lineOf[key] = i + 1;
  }
  for (const required of ["input", "out"]) {
    if (!(required in entries)) {
      throw new RecipeError(`${source}: missing required key '${required}'`);
    }
  }
  const inputs = entries.input
    .split(",")
    .map((p) => p.trim())
    .filter((p) => p !== "")
    .map((p) => resolve(baseDir, p));
  if (inputs.length === 0) {
    throw new RecipeError(`${source}:${lineOf.input}: input names no files`);
  }
  const overlays: OverlayName[] = [];
  const rawOverlays = entries.overlays ?? "none";
  if (rawOverlays !== "none" && rawOverlays !== "") {
    for (const name of rawOverlays.split(",").map((s) => s.trim())) {
      if (!(OVERLAY_NAMES as readonly string[]).includes(name)) {
        throw new RecipeError(
          `${source}:${lineOf.overlays}: unknown overlay '${name}' ` +
          `(expected one of ${OVERLAY_NAMES.join(", ")})`);
      }
      if (overlays.includes(name as OverlayName)) {
        throw new RecipeError(`${source}:${lineOf.overlays}: duplicate overlay '${name}'`);
      }
      overlays.push(name as OverlayName);
    }
  }
  return {
    inputs,
    overlays,
    xscale: "xscale" in entries ? parseScale(source, lineOf.xscale, "xscale", entries.xscale) : "linear",
    yscale: "yscale" in entries ? parseScale(source, lineOf.yscale, "yscale", entries.yscale) : "linear",
    out: resolve(baseDir, entries.out),
    title: entries.title,
  };
}

export function readRecipe(path: string): FigureRecipe {
  return parseRecipe(readFileSync(path, "utf8"), path, dirname(path));
}
