import { divergingColor, extent, linearScale, rampPosition, type LinearScale } from "./scales.js";
import type { TradeoffPoint } from "./types.js";

/** The subset of CanvasRenderingContext2D the plots draw with, so tests can
 * substitute a recording stub. */
export interface Canvas2D {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
}

export interface ScatterOptions {
  width?: number;
  height?: number;
  padding?: number;
  pointRadius?: number;
  xLabel?: string;
  yLabel?: string;
}

export interface ScatterLayout {
  width: number;
  height: number;
  padding: number;
  pointRadius: number;
  x: LinearScale;
  y: LinearScale;
  utilityRange: [number, number];
}

const DEFAULTS = { width: 460, height: 360, padding: 42, pointRadius: 2.5 };

/** Geometry only; drawing and hit-testing share it. */
export function scatterLayout(
  points: readonly TradeoffPoint[],
  options: ScatterOptions = {},
): ScatterLayout {
  const width = options.width ?? DEFAULTS.width;
  const height = options.height ?? DEFAULTS.height;
  const padding = options.padding ?? DEFAULTS.padding;
  const [sLo, sHi] = extent(points, (p) => p.spd);
  const [wLo, wHi] = extent(points, (p) => p.waod);
  const pad = (lo: number, hi: number): [number, number] => {
    const m = (hi - lo || 0.02) * 0.05;
    return [lo - m, hi + m];
  };
  return {
    width,
    height,
    padding,
    pointRadius: options.pointRadius ?? DEFAULTS.pointRadius,
    x: linearScale(pad(sLo, sHi), [padding, width - padding]),
    y: linearScale(pad(wLo, wHi), [height - padding, padding]),
    utilityRange: extent(points, (p) => p.utility_per_applicant),
  };
}

export function drawScatter(
  ctx: Canvas2D,
  points: readonly TradeoffPoint[],
  layout: ScatterLayout,
  options: ScatterOptions = {},
  best: TradeoffPoint | null = null,
): void {
  const { width, height, padding, pointRadius, x, y, utilityRange } = layout;
  ctx.clearRect(0, 0, width, height);
  ctx.strokeStyle = "#888";
  ctx.lineWidth = 1;
  ctx.strokeRect(padding, padding, width - 2 * padding, height - 2 * padding);

  const [uLo, uHi] = utilityRange;
  for (const p of points) {
    ctx.fillStyle = divergingColor(rampPosition(p.utility_per_applicant, uLo, uHi));
    ctx.beginPath();
    ctx.arc(x(p.spd), y(p.waod), pointRadius, 0, 2 * Math.PI);
    ctx.fill();
  }

  if (best !== null) {
    ctx.strokeStyle = "#111";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc(x(best.spd), y(best.waod), pointRadius + 4, 0, 2 * Math.PI);
    ctx.stroke();
  }

  ctx.fillStyle = "#333";
  ctx.font = "12px sans-serif";
  ctx.fillText(options.xLabel ?? "SPD", width / 2 - 14, height - 10);
  ctx.fillText(options.yLabel ?? "WAOD", 4, padding - 10);
}

/** Nearest point within `radius` pixels of the cursor, or null. */
export function hitTest(
  points: readonly TradeoffPoint[],
  layout: ScatterLayout,
  px: number,
  py: number,
  radius = 6,
): TradeoffPoint | null {
  let bestPoint: TradeoffPoint | null = null;
  let bestDist = radius * radius;
  for (const p of points) {
    const dx = layout.x(p.spd) - px;
    const dy = layout.y(p.waod) - py;
    const d = dx * dx + dy * dy;
    if (d <= bestDist) {
      bestDist = d;
      bestPoint = p;
    }
  }
  return bestPoint;
}
