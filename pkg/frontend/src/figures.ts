import { numericColumn, type Table } from "./csv.js";
import { checkColumns, type Recipe } from "./recipe.js";
import {
  MARGIN,
  PLOT_H,
  PLOT_W,
  colormap,
  document,
  fmt,
  frame,
  linearScale,
  textEl,
  xAxisTicks,
  yAxisTicks,
} from "./svg.js";

const KIND_COLORS: Record<string, string> = {
  Engine: "#d1495b",
  Heater: "#edae49",
  Cooler: "#00798c",
  Indeterminate: "#c8c8c8",
  NonOperational: "#787878",
};

const SERIES_COLORS = [
  "#1f77b4",
  "#e377c2",
  "#7f7f7f",
  "#8c564b",
  "#2ca02c",
  "#9467bd",
  "#d62728",
];

function sortedUnique(values: (number | null)[]): number[] {
  const set = new Set<number>();
  for (const v of values) {
    if (v !== null) {
      set.add(v);
    }
  }
  return [...set].sort((a, b) => a - b);
}

/** Cell-grid geometry shared by the phase map and the heatmap. */
function gridCells(table: Table, xCol: string, yCol: string) {
  const xs = numericColumn(table, xCol);
  const ys = numericColumn(table, yCol);
  const xVals = sortedUnique(xs);
  const yVals = sortedUnique(ys);
  const cellW = PLOT_W / xVals.length;
  const cellH = PLOT_H / yVals.length;
  const xIndex = new Map(xVals.map((v, i) => [v, i]));
  const yIndex = new Map(yVals.map((v, i) => [v, i]));
  const cell = (row: number) => {
    const xi = xIndex.get(xs[row] as number) as number;
    const yi = yIndex.get(ys[row] as number) as number;
    return {
      x: MARGIN.left + xi * cellW,
      y: MARGIN.top + PLOT_H - (yi + 1) * cellH, // y origin at the bottom
      w: cellW,
      h: cellH,
    };
  };
  const xScale = linearScale(xVals[0], xVals[xVals.length - 1], MARGIN.left + cellW / 2,
    MARGIN.left + PLOT_W - cellW / 2);
  const yScale = linearScale(yVals[0], yVals[yVals.length - 1],
    MARGIN.top + PLOT_H - cellH / 2, MARGIN.top + cellH / 2);
  return { cell, xScale, yScale };
}

export function renderPhaseMap(table: Table, recipe: Recipe & { kind: "phase-map" }): string {
  checkColumns(recipe, table);
  const { cell, xScale, yScale } = gridCells(table, recipe.x, recipe.y);
  const rects = table.rows.map((row, i) => {
    const kind = row[recipe.value] || "Indeterminate";
    const color = KIND_COLORS[kind] ?? "#c8c8c8";
    const c = cell(i);
    return (
      `<rect class="cell kind-${kind}" x="${fmt(c.x)}" y="${fmt(c.y)}" ` +
      `width="${fmt(c.w)}" height="${fmt(c.h)}" fill="${color}"/>`
    );
  });
  const legend = ["Engine", "Heater", "Cooler"].map((kind, i) => {
    const y = MARGIN.top + 20 + i * 22;
    const x = MARGIN.left + PLOT_W + 16;
    return (
      `<rect x="${x}" y="${y - 11}" width="14" height="14" fill="${KIND_COLORS[kind]}"/>\n` +
      textEl(x + 20, y, kind)
    );
  });
  const body = [
    ...rects,
    frame(recipe.title, recipe.xLabel ?? recipe.x, recipe.yLabel ?? recipe.y),
    xAxisTicks(xScale),
    yAxisTicks(yScale),
    ...legend,
  ].join("\n");
  return document(body);
}

export function renderHeatmap(table: Table, recipe: Recipe & { kind: "heatmap" }): string {
  checkColumns(recipe, table);
  const { cell, xScale, yScale } = gridCells(table, recipe.x, recipe.y);
  const values = numericColumn(table, recipe.value);
  const present = values.filter((v): v is number => v !== null);
  const lo = Math.min(...present);
  const hi = Math.max(...present);
  const span = hi - lo || 1;
  const rects = table.rows.map((row, i) => {
    const v = values[i];
    const c = cell(i);
    const fill = v === null ? "#f0f0f0" : colormap((v - lo) / span);
    return (
      `<rect class="cell" x="${fmt(c.x)}" y="${fmt(c.y)}" ` +
      `width="${fmt(c.w)}" height="${fmt(c.h)}" fill="${fill}"/>`
    );
  });
  // Colorbar: 40 fixed bands on the right.
  const bar: string[] = [];
  const barX = MARGIN.left + PLOT_W + 24;
  for (let i = 0; i < 40; i += 1) {
    const y = MARGIN.top + PLOT_H - ((i + 1) * PLOT_H) / 40;
    bar.push(
      `<rect x="${barX}" y="${fmt(y)}" width="16" height="${fmt(PLOT_H / 40)}" ` +
      `fill="${colormap((i + 0.5) / 40)}"/>`,
    );
  }
  bar.push(
    textEl(barX + 22, MARGIN.top + PLOT_H, fmt(lo)),
    textEl(barX + 22, MARGIN.top + 10, fmt(hi)),
    textEl(barX + 22, MARGIN.top + PLOT_H / 2, recipe.value),
  );
  const body = [
    ...rects,
    frame(recipe.title, recipe.xLabel ?? recipe.x, recipe.yLabel ?? recipe.y),
    xAxisTicks(xScale),
    yAxisTicks(yScale),
    ...bar,
  ].join("\n");
  return document(body);
}

interface Series {
  name: string;
  points: [number, number][];
}

function collectSeries(table: Table, xCol: string, yCols: string[]): Series[] {
  const xs = numericColumn(table, xCol);
  return yCols.map((name) => {
    const ys = numericColumn(table, name);
    const points: [number, number][] = [];
    for (let i = 0; i < xs.length; i += 1) {
      if (xs[i] !== null && ys[i] !== null) {
        points.push([xs[i] as number, ys[i] as number]);
      }
    }
    points.sort((a, b) => a[0] - b[0]);
    return { name, points };
  });
}

function renderSeriesPanel(
  series: Series[],
  recipe: { title?: string; xLabel?: string; yLabel?: string; x: string },
  yLabelDefault: string,
  withMarkers: boolean,
): string {
  const allX = series.flatMap((s) => s.points.map((p) => p[0]));
  const allY = series.flatMap((s) => s.points.map((p) => p[1]));
  if (allX.length === 0) {
    throw new Error("empty selection: no plottable points in the bound columns");
  }
  const xScale = linearScale(Math.min(...allX), Math.max(...allX),
    MARGIN.left, MARGIN.left + PLOT_W);
  const ySpan = Math.max(...allY) - Math.min(...allY);
  const pad = ySpan === 0 ? Math.abs(allY[0]) * 0.1 + 1e-12 : ySpan * 0.05;
  const yScale = linearScale(Math.min(...allY) - pad, Math.max(...allY) + pad,
    MARGIN.top + PLOT_H, MARGIN.top);
  const lines = series.map((s, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    const coords = s.points
      .map(([x, y]) => `${fmt(xScale(x))},${fmt(yScale(y))}`)
      .join(" ");
    let markers = "";
    if (withMarkers) {
      markers = s.points
        .map(
          ([x, y]) =>
            `<circle cx="${fmt(xScale(x))}" cy="${fmt(yScale(y))}" r="2.5" fill="${color}"/>`,
        )
        .join("\n");
    }
    return (
      `<polyline class="series series-${s.name}" points="${coords}" ` +
      `fill="none" stroke="${color}" stroke-width="1.8"/>` +
      (markers ? `\n${markers}` : "")
    );
  });
  const legend = series.map((s, i) => {
    const y = MARGIN.top + 20 + i * 22;
    const x = MARGIN.left + PLOT_W + 16;
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    return (
      `<line x1="${x}" y1="${y - 4}" x2="${x + 18}" y2="${y - 4}" ` +
      `stroke="${color}" stroke-width="2"/>\n` + textEl(x + 24, y, s.name)
    );
  });
  const body = [
    frame(recipe.title, recipe.xLabel ?? recipe.x, recipe.yLabel ?? yLabelDefault),
    xAxisTicks(xScale),
    yAxisTicks(yScale),
    ...lines,
    ...legend,
  ].join("\n");
  return document(body);
}

export function renderLines(table: Table, recipe: Recipe & { kind: "lines" }): string {
  checkColumns(recipe, table);
  const series = collectSeries(table, recipe.x, recipe.series);
  return renderSeriesPanel(series, recipe, recipe.series.join(", "), false);
}

export function renderIterations(
  table: Table,
  recipe: Recipe & { kind: "iterations" },
): string {
  checkColumns(recipe, table);
  const series = collectSeries(table, recipe.x, [recipe.y]);
  return renderSeriesPanel(series, recipe, recipe.y, true);
}

export function render(table: Table, recipe: Recipe): string {
  switch (recipe.kind) {
    case "phase-map":
      return renderPhaseMap(table, recipe);
    case "heatmap":
      return renderHeatmap(table, recipe);
    case "lines":
      return renderLines(table, recipe);
    case "iterations":
      return renderIterations(table, recipe);
  }
}
