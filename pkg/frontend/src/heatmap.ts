import type { Canvas2D } from "./scatter.js";
import { clamp, divergingColor, extent, rampPosition } from "./scales.js";
import type { TradeoffPoint } from "./types.js";

export type HeatMetric = "spd" | "waod" | "utility_per_applicant";

export interface HeatmapOptions {
  width?: number;
  height?: number;
  padding?: number;
  bins?: number;
  title?: string;
}

const DEFAULTS = { width: 240, height: 240, padding: 26, bins: 40 };

export interface HeatmapGrid {
  bins: number;
  /** Row-major mean metric per cell; NaN marks empty cells. */
  cells: Float64Array;
  valueRange: [number, number];
}

/** Bins threshold pairs on a bins x bins grid over [0,1]^2 and averages the
 * chosen metric per cell. Pure, so tests can assert on cell contents. */
export function binThresholds(
  points: readonly TradeoffPoint[],
  metric: HeatMetric,
  bins = DEFAULTS.bins,
): HeatmapGrid {
  const sums = new Float64Array(bins * bins);
  const counts = new Float64Array(bins * bins);
  for (const p of points) {
    const i = clamp(Math.floor(p.t_unp * bins), 0, bins - 1);
    const j = clamp(Math.floor(p.t_priv * bins), 0, bins - 1);
    const k = j * bins + i;
    sums[k] = (sums[k] ?? 0) + p[metric];
    counts[k] = (counts[k] ?? 0) + 1;
  }
  const cells = new Float64Array(bins * bins);
  for (let k = 0; k < cells.length; k++) {
    const n = counts[k] ?? 0;
    cells[k] = n > 0 ? (sums[k] ?? 0) / n : NaN;
  }
  return { bins, cells, valueRange: extent(points, (p) => p[metric]) };
}

export function drawHeatmap(
  ctx: Canvas2D,
  grid: HeatmapGrid,
  options: HeatmapOptions = {},
): void {
  const width = options.width ?? DEFAULTS.width;
  const height = options.height ?? DEFAULTS.height;
  const padding = options.padding ?? DEFAULTS.padding;
  const { bins, cells, valueRange } = grid;
  const [lo, hi] = valueRange;
  const innerW = width - 2 * padding;
  const innerH = height - 2 * padding;
  const cw = innerW / bins;
  const ch = innerH / bins;

  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#f2f2f2";
  ctx.fillRect(padding, padding, innerW, innerH);
  for (let j = 0; j < bins; j++) {
    for (let i = 0; i < bins; i++) {
      const value = cells[j * bins + i];
      if (value === undefined || Number.isNaN(value)) continue;
      ctx.fillStyle = divergingColor(rampPosition(value, lo, hi, (lo + hi) / 2));
      // Canvas y grows downward; t_priv grows upward.
      ctx.fillRect(padding + i * cw, padding + (bins - 1 - j) * ch, cw + 0.5, ch + 0.5);
    }
  }
  ctx.strokeStyle = "#888";
  ctx.lineWidth = 1;
  ctx.strokeRect(padding, padding, innerW, innerH);
  ctx.fillStyle = "#333";
  ctx.font = "11px sans-serif";
  ctx.fillText(options.title ?? "", padding, padding - 8);
  ctx.fillText("t_unp", width / 2 - 12, height - 6);
}
