import { existsSync } from "node:fs";
import { isAbsolute } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseRecipe, readRecipe, RecipeError } from "../src/recipe.js";

const FIXTURES = fileURLToPath(new URL("../fixtures/", import.meta.url));

const FULL = `# comment line
input = a.csv, b.csv
overlays = born, additive
xscale = log
yscale = linear
out = fig.svg
title = demo figure
`;

describe("parseRecipe", () => {
  it("parses every key and resolves paths", () => {
    const r = parseRecipe(FULL, "demo.recipe", "/data");
    expect(r.inputs).toEqual(["/data/a.csv", "/data/b.csv"]);
    expect(r.overlays).toEqual(["born", "additive"]);
    expect(r.xscale).toBe("log");
    expect(r.yscale).toBe("linear");
    expect(r.out).toBe("/data/fig.svg");
    expect(r.title).toBe("demo figure");
  });

  it("defaults to linear axes and no overlays", () => {
    const r = parseRecipe("input = a.csv\nout = f.svg\n", "d.recipe", "/x");
    expect(r.overlays).toEqual([]);
    expect(r.xscale).toBe("linear");
    expect(r.yscale).toBe("linear");
    expect(r.title).toBeUndefined();
  });

  it("treats overlays=none as empty", () => {
    const r = parseRecipe("input = a.csv\noverlays = none\nout = f.svg\n");
    expect(r.overlays).toEqual([]);
  });

  it("reports unknown keys with their line", () => {
    expect(() => parseRecipe("input = a.csv\nbanana = 1\nout = f.svg\n", "r.recipe"))
      .toThrow("r.recipe:2: unknown key 'banana'");
  });

  it("reports duplicate keys with both lines", () => {
    expect(() => parseRecipe("input = a.csv\ninput = b.csv\nout = f.svg\n", "r.recipe"))
      .toThrow("r.recipe:2: duplicate key 'input' (first on line 1)");
  });

  it("reports lines without key=value shape", () => {
    expect(() => parseRecipe("input a.csv\n", "r.recipe"))
      .toThrow("r.recipe:1: expected key=value, got 'input a.csv'");
  });

  it("requires input and out", () => {
    expect(() => parseRecipe("out = f.svg\n", "r.recipe"))
      .toThrow("missing required key 'input'");
    expect(() => parseRecipe("input = a.csv\n", "r.recipe"))
      .toThrow("missing required key 'out'");
  });

  it("rejects bad axis scales", () => {
    expect(() => parseRecipe("input = a.csv\nout = f.svg\nxscale = cubic\n", "r.recipe"))
      .toThrow("xscale must be 'linear' or 'log', got 'cubic'");
  });

  it("rejects unknown and duplicate overlays", () => {
    expect(() => parseRecipe("input = a.csv\nout = f.svg\noverlays = halo\n", "r.recipe"))
      .toThrow("unknown overlay 'halo'");
    expect(() => parseRecipe("input = a.csv\nout = f.svg\noverlays = born, born\n", "r.recipe"))
      .toThrow("duplicate overlay 'born'");
    expect(() => parseRecipe("input = ,\nout = f.svg\n", "r.recipe")).toThrow(RecipeError);
  });
});

describe("readRecipe on the committed recipes", () => {
  it("resolves the ballistic figure recipe against its own directory", () => {
    const r = readRecipe(FIXTURES + "ballistic-diff.recipe");
    expect(r.inputs).toHaveLength(2);
    for (const input of r.inputs) {
      expect(isAbsolute(input)).toBe(true);
      expect(existsSync(input)).toBe(true);
    }
    expect(r.overlays).toEqual(["born"]);
    expect(r.yscale).toBe("log");
    expect(r.out.endsWith("out/ballistic-diff.svg")).toBe(true);
  });
});
