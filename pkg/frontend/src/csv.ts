/**
 * Reader for simulation CSV files: '# key=value' metadata lines,
 * then a column-name row, then numeric rows.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export interface Table {
  source: string;
  meta: Record<string, string>;
  columns: string[];
  rows: number[][];
}

export class CsvError extends Error {}

export class MissingMetadataError extends CsvError {}

export function parseTable(text: string, source = "<csv>"): Table {
  const lines = text.split("\n");
  const meta: Record<string, string> = {};
  let body = 0;
  for (; body < lines.length; body++) {
    const line = lines[body];
    if (!line.startsWith("#")) {
      break;
    }
    const stripped = line.replace(/^#\s*/, "");
    const eq = stripped.indexOf("=");
    if (eq < 0) {
      throw new CsvError(`${source}:${body + 1}: expected '# key=value', got '${line}'`);
    }
    const key = stripped.slice(0, eq).trim();
    if (key in meta) {
      throw new CsvError(`${source}:${body + 1}: duplicate metadata key '${key}'`);
    }
    meta[key] = stripped.slice(eq + 1).trim();
  }
  const parsed = Papa.parse<string[]>(lines.slice(body).join("\n").trim(), {
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new CsvError(`${source}: ${e.message}`);
  }
  const grid = parsed.data;
  if (grid.length < 2) {
    throw new CsvError(`${source}: need a column-name row and at least one data row`);
  }
  const columns = grid[0];
  const rows: number[][] = [];
  for (let i = 1; i < grid.length; i++) {
    if (grid[i].length !== columns.length) {
      throw new CsvError(
        `${source}: row ${i} has ${grid[i].length} cells, expected ${columns.length}`);
    }
    const row = grid[i].map(Number);
    const bad = row.findIndex((v) => !Number.isFinite(v));
    if (bad >= 0) {
      throw new CsvError(
        `${source}: row ${i}, column '${columns[bad]}': '${grid[i][bad]}' is not a number`);
    }
    rows.push(row);
  }
  return { source, meta, columns, rows };
}

export function readTable(path: string): Table {
  return parseTable(readFileSync(path, "utf8"), path);
}

/** Metadata value as a string; throws when the key is absent. */
export function metaString(t: Table, key: string): string {
  const v = t.meta[key];
  if (v === undefined) {
    throw new MissingMetadataError(`${t.source}: missing metadata key '${key}'`);
  }
  return v;
}

/** Metadata value as a finite number. */
export function metaNumber(t: Table, key: string): number {
  const v = Number(metaString(t, key));
  if (!Number.isFinite(v)) {
    throw new MissingMetadataError(
      `${t.source}: metadata key '${key}'='${t.meta[key]}' is not a number`);
  }
  return v;
}

export function metaInt(t: Table, key: string): number {
  const v = metaNumber(t, key);
  if (!Number.isInteger(v)) {
    throw new MissingMetadataError(
      `${t.source}: metadata key '${key}'='${t.meta[key]}' is not an integer`);
  }
  return v;
}

/** Values of one named column. */
export function column(t: Table, name: string): number[] {
  const idx = t.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvError(`${t.source}: no column named '${name}'`);
  }
  return t.rows.map((r) => r[idx]);
}
