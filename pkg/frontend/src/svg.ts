/**
 * Deterministic SVG primitives: fixed canvas, pinned font, fixed-precision
 * number formatting.  Rendering the same data twice yields byte-identical
 * markup.
 */

export const WIDTH = 860;
export const HEIGHT = 560;
export const MARGIN = { left: 80, right: 150, top: 50, bottom: 60 };
export const FONT = "DejaVu Sans, Helvetica, sans-serif";

export const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
export const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

/** Fixed-precision coordinate/label formatting (no locale, no exponent drift). */
export function fmt(x: number): string {
  if (!Number.isFinite(x)) {
    return "0";
  }
  const rounded = Number(x.toPrecision(6));
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

export interface Scale {
  (value: number): number;
  min: number;
  max: number;
}

export function linearScale(min: number, max: number, lo: number, hi: number): Scale {
  const span = max - min;
  const scale = ((value: number) =>
    span === 0 ? (lo + hi) / 2 : lo + ((value - min) / span) * (hi - lo)) as Scale;
  scale.min = min;
  scale.max = max;
  return scale;
}

/** Round-numbered ticks covering [min, max], at most `count` of them. */
export function ticks(min: number, max: number, count = 6): number[] {
  if (max === min) {
    return [min];
  }
  const rawStep = (max - min) / count;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10];
  let step = candidates[candidates.length - 1] * power;
  for (const c of candidates) {
    if (c * power >= rawStep) {
      step = c * power;
      break;
    }
  }
  const start = Math.ceil(min / step) * step;
  const out: number[] = [];
  for (let v = start; v <= max + step * 1e-9; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface TextOptions {
  anchor?: "start" | "middle" | "end";
  size?: number;
  transform?: string;
}

export function textEl(
  x: number,
  y: number,
  content: string,
  options: TextOptions = {},
): string {
  const anchor = options.anchor ? ` text-anchor="${options.anchor}"` : "";
  const transform = options.transform ? ` transform="${options.transform}"` : "";
  return (
    `<text x="${fmt(x)}" y="${fmt(y)}" font-family="${FONT}" ` +
    `font-size="${options.size ?? 12}" fill="#222"${anchor}${transform}>` +
    `${escapeXml(content)}</text>`
  );
}

export function frame(title: string | undefined, xLabel: string, yLabel: string): string {
  const parts = [
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${PLOT_W}" height="${PLOT_H}" ` +
      `fill="none" stroke="#444" stroke-width="1"/>`,
  ];
  if (title) {
    parts.push(
      textEl(MARGIN.left + PLOT_W / 2, MARGIN.top - 18, title,
             { anchor: "middle", size: 15 }),
    );
  }
  parts.push(
    textEl(MARGIN.left + PLOT_W / 2, HEIGHT - 14, xLabel, { anchor: "middle" }),
    textEl(18, MARGIN.top + PLOT_H / 2, yLabel, {
      anchor: "middle",
      transform: `rotate(-90 18 ${fmt(MARGIN.top + PLOT_H / 2)})`,
    }),
  );
  return parts.join("\n");
}

export function xAxisTicks(scale: Scale): string {
  const y0 = MARGIN.top + PLOT_H;
  return ticks(scale.min, scale.max)
    .map((v) => {
      const x = scale(v);
      return (
        `<line x1="${fmt(x)}" y1="${y0}" x2="${fmt(x)}" y2="${y0 + 5}" stroke="#444"/>\n` +
        textEl(x, y0 + 20, fmt(v), { anchor: "middle" })
      );
    })
    .join("\n");
}

export function yAxisTicks(scale: Scale): string {
  const x0 = MARGIN.left;
  return ticks(scale.min, scale.max)
    .map((v) => {
      const y = scale(v);
      return (
        `<line x1="${fmt(x0 - 5)}" y1="${fmt(y)}" x2="${x0}" y2="${fmt(y)}" stroke="#444"/>\n` +
        textEl(x0 - 8, y + 4, fmt(v), { anchor: "end" })
      );
    })
    .join("\n");
}

export function document(body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}">\n<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>\n` +
    body +
    "\n</svg>\n"
  );
}

/** Five-stop blue-to-yellow colormap, linearly interpolated. */
const STOPS: [number, number, number][] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

export function colormap(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (STOPS.length - 1);
  const i = Math.min(STOPS.length - 2, Math.floor(pos));
  const frac = pos - i;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * frac);
  const [r, g, b] = [0, 1, 2].map((k) => mix(STOPS[i][k], STOPS[i + 1][k]));
  return `rgb(${r},${g},${b})`;
}
