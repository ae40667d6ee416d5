import { readFileSync, writeFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

import { parseCsv } from "./csv.js";
import { render } from "./figures.js";
import { parseRecipe } from "./recipe.js";

/** Render one recipe: reads the bound CSV, writes the SVG, returns its path. */
export function renderRecipe(recipePath: string): string {
  const recipe = parseRecipe(readFileSync(recipePath, "utf-8"));
  const baseDir = dirname(resolve(recipePath));
  const inputPath = resolve(baseDir, recipe.input);
  const outputPath = resolve(baseDir, recipe.output);
  const table = parseCsv(readFileSync(inputPath, "utf-8"));
  const svg = render(table, recipe); // errors abort before any file is written
  writeFileSync(outputPath, svg, "utf-8");
  return outputPath;
}

export function main(argv: string[]): number {
  if (argv.length === 0) {
    process.stderr.write("usage: render <recipe.json> [more recipes...]\n");
    return 1;
  }
  for (const path of argv) {
    try {
      const out = renderRecipe(path);
      process.stdout.write(`${path} -> ${out}\n`);
    } catch (err) {
      process.stderr.write(`error: ${path}: ${(err as Error).message}\n`);
      return 1;
    }
  }
  return 0;
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
