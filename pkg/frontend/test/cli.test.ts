import { spawnSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";

const FIXTURES = fileURLToPath(new URL("../fixtures/", import.meta.url));
const DIST_MAIN = fileURLToPath(new URL("../dist/main.js", import.meta.url));

let dir: string;
let logs: string[];
let errs: string[];

beforeEach(() => {
  dir = mkdtempSync(join(tmpdir(), "figures-"));
  logs = [];
  errs = [];
  vi.spyOn(console, "log").mockImplementation((msg) => logs.push(String(msg)));
  vi.spyOn(console, "error").mockImplementation((msg) => errs.push(String(msg)));
});

afterEach(() => {
  vi.restoreAllMocks();
  rmSync(dir, { recursive: true, force: true });
});

function writeRecipe(body: string): string {
  const path = join(dir, "fig.recipe");
  writeFileSync(path, body);
  return path;
}

describe("figures CLI", () => {
  it("renders a figure and its sidecar from a recipe", () => {
    const recipe = writeRecipe(
      `input = ${FIXTURES}ballistic-total.csv\n` +
      "overlays = born, additive\n" +
      "xscale = log\nyscale = log\n" +
      `out = ${join(dir, "sweep.svg")}\n`);
    expect(main(["--recipe", recipe])).toBe(0);
    const svg = readFileSync(join(dir, "sweep.svg"), "utf8");
    expect(svg.startsWith("<svg ")).toBe(true);
    const sidecar = readFileSync(join(dir, "sweep.svg.txt"), "utf8");
    expect(sidecar).toContain("figure sweep.svg");
    expect(sidecar).toMatch(/overlay born sha256=[0-9a-f]{64}/);
    expect(sidecar).toMatch(/overlay additive sha256=[0-9a-f]{64}/);
    expect(logs.some((l) => l.includes("sweep.svg"))).toBe(true);
  });

  it("renders every committed recipe", () => {
    for (const name of [
      "ballistic-diff", "ballistic-total", "point-xs", "diffusive-total", "diffusive-diff",
    ]) {
      // the recipe moves to a temp dir, so its relative paths must be pinned
      const text = readFileSync(join(FIXTURES, `${name}.recipe`), "utf8")
        .replace(/^input = (.*)$/m, (_, paths: string) =>
          `input = ${paths.split(",").map((p) => join(FIXTURES, p.trim())).join(", ")}`)
        .replace(/^out = .*$/m, `out = ${join(dir, `${name}.svg`)}`);
      expect(main(["--recipe", writeRecipe(text)]), name).toBe(0);
      expect(existsSync(join(dir, `${name}.svg`))).toBe(true);
      expect(existsSync(join(dir, `${name}.svg.txt`))).toBe(true);
    }
  });

  it("fails with exit 1 on a recipe parse error", () => {
    const recipe = writeRecipe("input = a.csv\nbanana = 1\nout = f.svg\n");
    expect(main(["--recipe", recipe])).toBe(1);
    expect(errs.join("\n")).toContain("unknown key 'banana'");
  });

  it("fails with exit 1 when the recipe file is missing", () => {
    expect(main(["--recipe", join(dir, "nope.recipe")])).toBe(1);
    expect(errs.join("\n")).toContain("figures:");
  });

  it("fails with exit 1 when an input CSV is missing", () => {
    const recipe = writeRecipe(`input = ${join(dir, "absent.csv")}\nout = f.svg\n`);
    expect(main(["--recipe", recipe])).toBe(1);
  });

  it("fails with exit 1 when an overlay does not fit the data kind", () => {
    const recipe = writeRecipe(
      `input = ${FIXTURES}point-xs.csv\noverlays = airy\nout = ${join(dir, "f.svg")}\n`);
    expect(main(["--recipe", recipe])).toBe(1);
    expect(errs.join("\n")).toContain("does not apply");
  });

  it("fails with exit 1 on a metadata gap", () => {
    const csv = join(dir, "bare.csv");
    writeFileSync(csv, "# kind=diff-xs\n# d=2\n# N=10\n# model=hardsphere\n# k=10.0\n" +
      "theta_deg,mean,q1,median,q3\n0.0,1,1,1,1\n1.0,1,1,1,1\n");
    const recipe = writeRecipe(`input = ${csv}\noverlays = born\nout = ${join(dir, "f.svg")}\n`);
    expect(main(["--recipe", recipe])).toBe(1);
    expect(errs.join("\n")).toContain("missing metadata key 'alpha'");
  });

  it("requires --recipe and rejects unknown flags", () => {
    expect(main([])).toBe(1);
    expect(main(["--bogus"])).toBe(1);
    expect(main(["--help"])).toBe(0);
  });
});

describe("compiled entry point", () => {
  it.skipIf(!existsSync(DIST_MAIN))("runs end to end under node", () => {
    const recipe = writeRecipe(
      `input = ${FIXTURES}diffusive-total.csv\noverlays = extinction\n` +
      `out = ${join(dir, "plateau.svg")}\n`);
    const res = spawnSync("node", [DIST_MAIN, "--recipe", recipe], { encoding: "utf8" });
    expect(res.status).toBe(0);
    expect(existsSync(join(dir, "plateau.svg"))).toBe(true);
    const sidecar = readFileSync(join(dir, "plateau.svg.txt"), "utf8");
    expect(sidecar).toMatch(/overlay extinction sha256=[0-9a-f]{64} d=2 N=1000/);
  });
});
