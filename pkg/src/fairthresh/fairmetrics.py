"""Group-conditional confusion statistics and the four headline metrics.

Sign conventions, fixed project-wide:

* ``spd`` is favorable_rate(unprivileged) minus favorable_rate(privileged),
  so negative values signal bias against the unprivileged group.
* ``di_ratio`` is favorable_rate(unprivileged) over favorable_rate(privileged).
  It is +inf when only the privileged rate is zero and NaN (undefined) when
  both rates are zero. An undefined ratio is never feasible: a model that
  grants nobody anything is not evidence of parity.
* ``waod`` averages the FPR gap and the TPR gap weighted by the error costs
  w_fp and w_tp; negative values again signal bias against the unprivileged
  group.
* ``utility_total`` multiplies the group TPR/FPR by the whole group count,
  not by the label-positive or label-negative count. That is the modeling
  choice this engine standardizes on, and utility_per_applicant divides it
  by the cohort size.

A record is predicted favorable only when its score is strictly above its
group's threshold; a score exactly at the threshold is unfavorable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cohort import Cohort, Group

#: Inclusive disparate-impact band implementing the four-fifths rule
#: symmetrically (1/0.8 = 1.25).
DEFAULT_DI_BOUNDS = (0.8, 1.25)


@dataclass(frozen=True)
class ThresholdPair:
    """Decision thresholds per group; the optimization variable."""

    t_unp: float
    t_priv: float

    def __post_init__(self) -> None:
        for name, value in (("t_unp", self.t_unp), ("t_priv", self.t_priv)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0,1], got {value}")


@dataclass(frozen=True)
class CostModel:
    """Monetary consequences of decisions plus the WAOD error weights."""

    expected_profit: float = 2000.0
    expected_cost: float = 10000.0
    w_fp: float = 5.0
    w_tp: float = 1.0

    def __post_init__(self) -> None:
        if self.expected_profit < 0.0 or self.expected_cost < 0.0:
            raise ValueError("expected_profit and expected_cost must be non-negative")
        if self.w_fp <= 0.0 or self.w_tp <= 0.0:
            raise ValueError("w_fp and w_tp must be positive")


@dataclass(frozen=True)
class GroupConfusion:
    """Confusion counts for one group at one threshold."""

    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def tpr(self) -> float:
        return self.tp / (self.tp + self.fn)

    @property
    def fpr(self) -> float:
        return self.fp / (self.fp + self.tn)

    @property
    def favorable_rate(self) -> float:
        return (self.tp + self.fp) / (self.tp + self.fp + self.tn + self.fn)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class MetricPoint:
    """SPD, DI ratio, WAOD, and utility evaluated at one threshold pair."""

    thresholds: ThresholdPair
    spd: float
    di_ratio: float
    waod: float
    utility_total: float
    utility_per_applicant: float
    feasible: bool


def confusion(cohort: Cohort, thresholds: ThresholdPair) -> tuple[GroupConfusion, GroupConfusion]:
    """Count the per-group confusion cells at a threshold pair.

    Returns (privileged, unprivileged). Counts partition each group exactly.
    """
    cells = {g: [0, 0, 0, 0] for g in Group}  # [tp, fp, tn, fn]
    cutoff = {Group.PRIVILEGED: thresholds.t_priv, Group.UNPRIVILEGED: thresholds.t_unp}
    for rec in cohort.records:
        favorable = rec.score > cutoff[rec.group]
        cell = cells[rec.group]
        if rec.label == 1:
            cell[0 if favorable else 3] += 1
        else:
            cell[1 if favorable else 2] += 1
    conf = {g: GroupConfusion(tp=c[0], fp=c[1], tn=c[2], fn=c[3]) for g, c in cells.items()}
    return conf[Group.PRIVILEGED], conf[Group.UNPRIVILEGED]


def spd(conf_p: GroupConfusion, conf_unp: GroupConfusion) -> float:
    """Statistical parity difference, unprivileged minus privileged."""
    return conf_unp.favorable_rate - conf_p.favorable_rate


def di_ratio(conf_p: GroupConfusion, conf_unp: GroupConfusion) -> float:
    """Disparate impact ratio; +inf or NaN when the denominator vanishes."""
    rate_p = conf_p.favorable_rate
    rate_unp = conf_unp.favorable_rate
    if rate_p > 0.0:
        return rate_unp / rate_p
    return math.inf if rate_unp > 0.0 else math.nan


def waod(conf_p: GroupConfusion, conf_unp: GroupConfusion, costs: CostModel) -> float:
    """Weighted average odds difference.

    With w_fp = w_tp this reduces to the plain average odds difference.
    """
    fpr_gap = conf_p.fpr - conf_unp.fpr
    tpr_gap = conf_unp.tpr - conf_p.tpr
    return (costs.w_fp * fpr_gap + costs.w_tp * tpr_gap) / (costs.w_fp + costs.w_tp)


def utility(
    conf_p: GroupConfusion,
    conf_unp: GroupConfusion,
    cohort: Cohort,
    costs: CostModel,
) -> tuple[float, float]:
    """Expected monetary value of the thresholded classifier.

    Returns (utility_total, utility_per_applicant). The rates multiply the
    whole group counts N_p and N_unp.
    """
    return _utility(conf_p, conf_unp, cohort.n_priv, cohort.n_unp, costs)


def _utility(
    conf_p: GroupConfusion,
    conf_unp: GroupConfusion,
    n_p: int,
    n_unp: int,
    costs: CostModel,
) -> tuple[float, float]:
    gain = costs.expected_profit * (conf_p.tpr * n_p + conf_unp.tpr * n_unp)
    loss = costs.expected_cost * (conf_p.fpr * n_p + conf_unp.fpr * n_unp)
    total = gain - loss
    return total, total / (n_p + n_unp)


def is_feasible(di: float, di_bounds: tuple[float, float]) -> bool:
    """True when the DI ratio is defined and inside the inclusive band."""
    return not math.isnan(di) and di_bounds[0] <= di <= di_bounds[1]


def metric_point(
    conf_p: GroupConfusion,
    conf_unp: GroupConfusion,
    thresholds: ThresholdPair,
    costs: CostModel,
    di_bounds: tuple[float, float] = DEFAULT_DI_BOUNDS,
) -> MetricPoint:
    """Assemble a MetricPoint from already-counted confusions."""
    di = di_ratio(conf_p, conf_unp)
    total, per_applicant = _utility(conf_p, conf_unp, conf_p.total, conf_unp.total, costs)
    return MetricPoint(
        thresholds=thresholds,
        spd=spd(conf_p, conf_unp),
        di_ratio=di,
        waod=waod(conf_p, conf_unp, costs),
        utility_total=total,
        utility_per_applicant=per_applicant,
        feasible=is_feasible(di, di_bounds),
    )


def evaluate_point(
    cohort: Cohort,
    thresholds: ThresholdPair,
    costs: CostModel,
    di_bounds: tuple[float, float] = DEFAULT_DI_BOUNDS,
) -> MetricPoint:
    """Evaluate all four metrics plus feasibility at one threshold pair."""
    lo, hi = di_bounds
    if not 0.0 <= lo <= hi:
        raise ValueError(f"di_bounds must satisfy 0 <= lo <= hi, got ({lo}, {hi})")
    conf_p, conf_unp = confusion(cohort, thresholds)
    return metric_point(conf_p, conf_unp, thresholds, costs, di_bounds)


class ScoreIndex:
    """Sorted per-(group, label) score arrays for fast repeated thresholding.

    Confusion counts at a threshold reduce to binary searches, so evaluating
    many threshold pairs over a fixed cohort costs O(log n) each instead of a
    full scan. Counts are integers, so the indexed path and the scan path
    feed identical numbers to the metric formulas and agree bit for bit.
    """

    def __init__(self, cohort: Cohort) -> None:
        by_cell: dict[tuple[Group, int], list[float]] = {
            (g, y): [] for g in Group for y in (0, 1)
        }
        for rec in cohort.records:
            by_cell[(rec.group, rec.label)].append(rec.score)
        self._pos = {
            g: np.sort(np.asarray(by_cell[(g, 1)], dtype=np.float64)) for g in Group
        }
        self._neg = {
            g: np.sort(np.asarray(by_cell[(g, 0)], dtype=np.float64)) for g in Group
        }

    def group_confusion(self, group: Group, threshold: float) -> GroupConfusion:
        pos, neg = self._pos[group], self._neg[group]
        tp = int(len(pos) - np.searchsorted(pos, threshold, side="right"))
        fp = int(len(neg) - np.searchsorted(neg, threshold, side="right"))
        return GroupConfusion(tp=tp, fp=fp, tn=len(neg) - fp, fn=len(pos) - tp)

    def confusion_at(self, thresholds: ThresholdPair) -> tuple[GroupConfusion, GroupConfusion]:
        return (
            self.group_confusion(Group.PRIVILEGED, thresholds.t_priv),
            self.group_confusion(Group.UNPRIVILEGED, thresholds.t_unp),
        )

    def evaluate(
        self,
        thresholds: ThresholdPair,
        costs: CostModel,
        di_bounds: tuple[float, float] = DEFAULT_DI_BOUNDS,
    ) -> MetricPoint:
        conf_p, conf_unp = self.confusion_at(thresholds)
        return metric_point(conf_p, conf_unp, thresholds, costs, di_bounds)
