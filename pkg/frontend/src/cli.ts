/** Command line entry: figures --recipe FILE */

import { CsvError } from "./csv.js";
import { OverlayError } from "./overlays.js";
import { readRecipe, RecipeError } from "./recipe.js";
import { GridMismatchError, renderRecipe } from "./render.js";

const USAGE = "usage: figures --recipe FILE";

function isExpected(err: unknown): err is Error {
  return (
    err instanceof RecipeError ||
    err instanceof CsvError ||
    err instanceof OverlayError ||
    err instanceof GridMismatchError ||
    err instanceof RangeError ||
    (err instanceof Error && "code" in err && (err as NodeJS.ErrnoException).code === "ENOENT")
  );
}

export function main(argv: string[]): number {
  let recipePath: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--recipe") {
      recipePath = argv[++i];
    } else if (arg === "-h" || arg === "--help") {
      console.log(USAGE);
      return 0;
    } else {
      console.error(`figures: unknown argument '${arg}'\n${USAGE}`);
      return 1;
    }
  }
  if (recipePath === undefined) {
    console.error(`figures: --recipe is required\n${USAGE}`);
    return 1;
  }
  try {
    const paths = renderRecipe(readRecipe(recipePath));
    console.log(`wrote ${paths.out}`);
    console.log(`wrote ${paths.sidecar}`);
    return 0;
  } catch (err) {
    if (isExpected(err)) {
      console.error(`figures: ${err.message}`);
      return 1;
    }
    throw err;
  }
}
