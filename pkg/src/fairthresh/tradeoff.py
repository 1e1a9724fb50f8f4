"""Random exploration of the threshold-pair space.

Samples threshold pairs uniformly from the unit square, evaluates the metric
quadruple at each, and packages the results as an immutable cloud that
downstream consumers filter, summarize, and plot.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .cohort import Cohort
from .fairmetrics import (
    DEFAULT_DI_BOUNDS,
    CostModel,
    MetricPoint,
    ScoreIndex,
    ThresholdPair,
)
from .rng import Xoshiro256

CLOUD_CSV_HEADER = (
    "t_unp",
    "t_priv",
    "spd",
    "waod",
    "di_ratio",
    "utility_total",
    "utility_per_applicant",
    "feasible",
)


@dataclass(frozen=True)
class TradeoffCloud:
    """Evaluated sample of the threshold space.

    ``sample_count`` is the number of pairs drawn; ``kept_count`` is the
    number of feasible points among the retained ``points``.
    """

    points: tuple[MetricPoint, ...]
    sample_count: int
    kept_count: int
    di_bounds: tuple[float, float]
    seed: int


@dataclass(frozen=True)
class CloudFilter:
    """Optional bounds applied conjunctively by filter_cloud.

    ``min_utility`` is a strict lower bound on utility_total; the absolute
    caps and the feasibility flag are inclusive tests.
    """

    min_utility: float | None = None
    max_abs_spd: float | None = None
    max_abs_waod: float | None = None
    feasible_only: bool = False

    def admits(self, point: MetricPoint) -> bool:
        if self.min_utility is not None and not point.utility_total > self.min_utility:
            return False
        if self.max_abs_spd is not None and abs(point.spd) > self.max_abs_spd:
            return False
        if self.max_abs_waod is not None and abs(point.waod) > self.max_abs_waod:
            return False
        if self.feasible_only and not point.feasible:
            return False
        return True


@dataclass(frozen=True)
class MetricRanges:
    """Exact (min, max) extrema per metric over a cloud."""

    spd: tuple[float, float]
    waod: tuple[float, float]
    utility_per_applicant: tuple[float, float]


def sample_cloud(
    cohort: Cohort,
    costs: CostModel,
    n: int,
    di_bounds: tuple[float, float] = DEFAULT_DI_BOUNDS,
    seed: int = 0,
    keep_infeasible: bool = False,
) -> TradeoffCloud:
    """Draw n threshold pairs uniformly from [0,1]^2 and evaluate each.

    Per pair the unprivileged threshold is drawn before the privileged one,
    which fixes the stream layout and makes clouds reproducible for a seed.
    Infeasible points are dropped from ``points`` unless ``keep_infeasible``
    is set; they always count toward ``sample_count``.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    lo, hi = di_bounds
    if not 0.0 <= lo <= hi:
        raise ValueError(f"di_bounds must satisfy 0 <= lo <= hi, got ({lo}, {hi})")
    rng = Xoshiro256(seed)
    index = ScoreIndex(cohort)
    points = []
    kept = 0
    for _ in range(n):
        pair = ThresholdPair(t_unp=rng.uniform(), t_priv=rng.uniform())
        point = index.evaluate(pair, costs, di_bounds)
        if point.feasible:
            kept += 1
        if point.feasible or keep_infeasible:
            points.append(point)
    return TradeoffCloud(
        points=tuple(points),
        sample_count=n,
        kept_count=kept,
        di_bounds=di_bounds,
        seed=seed,
    )


def filter_cloud(cloud: TradeoffCloud, predicate: CloudFilter) -> TradeoffCloud:
    """Return the sub-cloud admitted by ``predicate``; the input is untouched.

    ``sample_count`` still records the original draw size; ``kept_count`` is
    recounted over the retained points.
    """
    points = tuple(p for p in cloud.points if predicate.admits(p))
    return TradeoffCloud(
        points=points,
        sample_count=cloud.sample_count,
        kept_count=sum(1 for p in points if p.feasible),
        di_bounds=cloud.di_bounds,
        seed=cloud.seed,
    )


def metric_ranges(cloud: TradeoffCloud) -> MetricRanges:
    """Exact extrema of spd, waod, and utility_per_applicant over the cloud."""
    if not cloud.points:
        raise ValueError("no points")
    spds = [p.spd for p in cloud.points]
    waods = [p.waod for p in cloud.points]
    utils = [p.utility_per_applicant for p in cloud.points]
    return MetricRanges(
        spd=(min(spds), max(spds)),
        waod=(min(waods), max(waods)),
        utility_per_applicant=(min(utils), max(utils)),
    )


def export_cloud(cloud: TradeoffCloud, path: str | Path) -> None:
    """Write the cloud as CSV with 6-decimal fixed formatting."""
    lines = [",".join(CLOUD_CSV_HEADER)]
    for p in cloud.points:
        lines.append(
            f"{p.thresholds.t_unp:.6f},{p.thresholds.t_priv:.6f},"
            f"{p.spd:.6f},{p.waod:.6f},{p.di_ratio:.6f},"
            f"{p.utility_total:.6f},{p.utility_per_applicant:.6f},"
            f"{'true' if p.feasible else 'false'}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
