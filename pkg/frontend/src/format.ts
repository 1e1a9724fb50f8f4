/** Pure display formatting. All inputs are raw service-payload numbers. */

/** 0.946 -> "94.6%" */
export function formatPercent(fraction: number, decimals = 1): string {
  return `${(fraction * 100).toFixed(decimals)}%`;
}

/** 1056.12 -> "$1,056.12"; negative amounts keep the sign before the $. */
export function formatDollars(amount: number, decimals = 2): string {
  const sign = amount < 0 ? "-" : "";
  const abs = Math.abs(amount).toFixed(decimals);
  const [whole, frac] = abs.split(".");
  const grouped = (whole ?? "0").replace(/\B(?=(\d{3})+(?!\d))/g, ",");
  return frac === undefined ? `${sign}$${grouped}` : `${sign}$${grouped}.${frac}`;
}

/** Fixed-point metric value with an explicit sign, e.g. "-0.0855". */
export function formatMetric(value: number | null, decimals = 4): string {
  if (value === null || Number.isNaN(value)) return "undefined";
  if (!Number.isFinite(value)) return value > 0 ? "+inf" : "-inf";
  const text = value.toFixed(decimals);
  return value > 0 ? `+${text}` : text;
}

/** DI ratio is unsigned; null means the privileged selection rate was zero. */
export function formatRatio(value: number | null, decimals = 3): string {
  if (value === null || Number.isNaN(value)) return "undefined";
  if (!Number.isFinite(value)) return "inf";
  return value.toFixed(decimals);
}

export function formatWeight(value: number): string {
  return value.toFixed(2);
}

export function formatCr(value: number): string {
  return `CR = ${value.toFixed(3)}`;
}

/** "1/3" for reciprocal ratings, "3" for whole ones. */
export function formatRating(value: number): string {
  if (value >= 1) return String(Math.round(value));
  return `1/${Math.round(1 / value)}`;
}
