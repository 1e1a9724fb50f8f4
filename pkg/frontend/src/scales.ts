/** Pure scale and color helpers for the canvas plots. */

export interface LinearScale {
  (value: number): number;
  readonly domain: [number, number];
  readonly range: [number, number];
  invert(pixel: number): number;
}

/** Maps domain linearly onto range; a degenerate domain maps to mid-range. */
export function linearScale(domain: [number, number], range: [number, number]): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  const scale = ((value: number) => {
    if (span === 0) return (r0 + r1) / 2;
    return r0 + ((value - d0) / span) * (r1 - r0);
  }) as LinearScale;
  Object.assign(scale, {
    domain,
    range,
    invert(pixel: number): number {
      if (r1 - r0 === 0) return d0;
      return d0 + ((pixel - r0) / (r1 - r0)) * span;
    },
  });
  return scale;
}

export function clamp(value: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, value));
}

/** Extent of one numeric field over a list; [0, 1] when the list is empty. */
export function extent<T>(items: readonly T[], pick: (item: T) => number): [number, number] {
  if (items.length === 0) return [0, 1];
  let lo = Infinity;
  let hi = -Infinity;
  for (const item of items) {
    const v = pick(item);
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

/** Diverging red -> pale -> blue ramp; t in [0, 1], 0.5 is the midpoint. */
export function divergingColor(t: number): string {
  const x = clamp(t, 0, 1);
  const lerp = (a: number, b: number, u: number) => Math.round(a + (b - a) * u);
  let r: number;
  let g: number;
  let b: number;
  if (x < 0.5) {
    const u = x / 0.5;
    [r, g, b] = [lerp(202, 245, u), lerp(59, 243, u), lerp(65, 240, u)];
  } else {
    const u = (x - 0.5) / 0.5;
    [r, g, b] = [lerp(245, 33, u), lerp(243, 102, u), lerp(240, 172, u)];
  }
  return `rgb(${r},${g},${b})`;
}

/** Normalizes a value into ramp position, pinning 0.5 to `mid` (e.g. $0). */
export function rampPosition(value: number, lo: number, hi: number, mid = 0): number {
  if (lo === hi) return 0.5;
  if (value >= mid) {
    const span = hi - mid;
    return span <= 0 ? 1 : 0.5 + 0.5 * clamp((value - mid) / span, 0, 1);
  }
  const span = mid - lo;
  return span <= 0 ? 0 : 0.5 - 0.5 * clamp((mid - value) / span, 0, 1);
}
