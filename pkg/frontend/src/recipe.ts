import { z } from "zod";

import type { Table } from "./csv.js";

const base = z.object({
  input: z.string(),
  output: z.string(),
  title: z.string().optional(),
  xLabel: z.string().optional(),
  yLabel: z.string().optional(),
});

const phaseMap = base.extend({
  kind: z.literal("phase-map"),
  x: z.string(),
  y: z.string(),
  value: z.string().default("kind"),
});

const heatmap = base.extend({
  kind: z.literal("heatmap"),
  x: z.string(),
  y: z.string(),
  value: z.string().default("P"),
});

const lines = base.extend({
  kind: z.literal("lines"),
  x: z.string(),
  series: z.array(z.string()).min(1),
});

const iterations = base.extend({
  kind: z.literal("iterations"),
  x: z.string(),
  y: z.string().default("N"),
});

export const recipeSchema = z.discriminatedUnion("kind", [
  phaseMap,
  heatmap,
  lines,
  iterations,
]);

export type Recipe = z.infer<typeof recipeSchema>;

export function parseRecipe(text: string): Recipe {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new Error(`recipe is not valid JSON: ${(err as Error).message}`);
  }
  const parsed = recipeSchema.safeParse(raw);
  if (!parsed.success) {
    const issue = parsed.error.issues[0];
    throw new Error(`bad recipe: ${issue.path.join(".")} ${issue.message}`);
  }
  return parsed.data;
}

/** Columns the recipe binds; every one must exist in the input table. */
export function boundColumns(recipe: Recipe): string[] {
  switch (recipe.kind) {
    case "phase-map":
    case "heatmap":
      return [recipe.x, recipe.y, recipe.value];
    case "lines":
      return [recipe.x, ...recipe.series];
    case "iterations":
      return [recipe.x, recipe.y];
  }
}

/** Abort with a schema diff when a bound column is missing. */
export function checkColumns(recipe: Recipe, table: Table): void {
  const missing = boundColumns(recipe).filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new Error(
      `input schema mismatch: missing column(s) ${missing.join(", ")}; ` +
        `available: ${table.columns.join(", ")}`,
    );
  }
  if (table.rows.length === 0) {
    throw new Error("empty selection: the input table has no data rows");
  }
}
