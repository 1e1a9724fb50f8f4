"""Scalarized threshold optimization under the disparate-impact constraint.

The objective combines the three metrics with elicited weights over their
elicitation scales:

    -U * w_util / s_util + |spd| * w_spd / s_spd + |waod| * w_waod / s_waod

where U is utility per applicant. Per-applicant rather than total utility
enters the objective because the scales are derived from per-applicant
ranges; callers wanting a different basis can rescale s_util.

Threshold pairs whose disparate-impact ratio leaves the legal band do not
receive an objective value at all: the trial is recorded with Infeasible
status and steers the optimizer away from the illegal region. Keeping such
trials in the history (instead of discarding them) is what lets the TPE bad
density learn the constraint boundary.

Three minimizers share the Trial/OptimizationResult contract: a from-scratch
Tree-of-Parzen-Estimators optimizer, an exhaustive grid oracle, and a pure
random-search baseline. TPE is sequential by nature; each post-startup trial
refits per-dimension Parzen mixtures over the good and bad histories and
proposes the candidate maximizing the density log-ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy.special import ndtr

from .cohort import Cohort, Group
from .fairmetrics import (
    DEFAULT_DI_BOUNDS,
    CostModel,
    MetricPoint,
    ScoreIndex,
    ThresholdPair,
    metric_point,
)
from .rng import Xoshiro256

#: Default scalarization scales (S_util, S_spd, S_waod), matching a cloud
#: whose per-applicant utility spans $200 and whose fairness gaps span 0.2,
#: split into two elicitation intervals.
DEFAULT_SCALES = (100.0, 0.1, 0.1)

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Objective:
    """Preference weights, elicitation scales, and the legal DI band."""

    weights: tuple[float, float, float]
    scales: tuple[float, float, float] = DEFAULT_SCALES
    di_bounds: tuple[float, float] = DEFAULT_DI_BOUNDS

    def __post_init__(self) -> None:
        if any(w < 0.0 for w in self.weights):
            raise ValueError(f"weights must be non-negative, got {self.weights}")
        if not math.isclose(sum(self.weights), 1.0, abs_tol=1e-9):
            raise ValueError(f"weights must sum to 1, got {self.weights}")
        if any(s <= 0.0 for s in self.scales):
            raise ValueError(f"scales must be positive, got {self.scales}")
        lo, hi = self.di_bounds
        if not 0.0 <= lo <= hi:
            raise ValueError(f"di_bounds must satisfy 0 <= lo <= hi, got ({lo}, {hi})")


class TrialStatus(str, Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Trial:
    """One evaluated threshold pair in an optimization history."""

    index: int
    point: MetricPoint
    objective_value: float | None
    status: TrialStatus

    @property
    def thresholds(self) -> ThresholdPair:
        return self.point.thresholds


@dataclass(frozen=True)
class TpeConfig:
    n_trials: int = 500
    n_startup: int = 20
    gamma: float = 0.25
    n_candidates: int = 24
    seed: int = 0
    bandwidth_floor_divisor: int = 100

    def __post_init__(self) -> None:
        if self.n_trials < 1:
            raise ValueError(f"n_trials must be at least 1, got {self.n_trials}")
        if not 0 < self.n_startup < self.n_trials:
            raise ValueError(
                f"n_startup must lie in [1, n_trials), got {self.n_startup} of {self.n_trials}"
            )
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie in (0,1), got {self.gamma}")
        if self.n_candidates < 1:
            raise ValueError(f"n_candidates must be at least 1, got {self.n_candidates}")
        if self.bandwidth_floor_divisor < 1:
            raise ValueError(
                f"bandwidth_floor_divisor must be at least 1, got {self.bandwidth_floor_divisor}"
            )


@dataclass(frozen=True)
class OptimizationResult:
    """Best feasible trial plus the complete evaluation history."""

    best: Trial | None
    history: tuple[Trial, ...]
    config: dict = field(default_factory=dict)
    diagnostic: str | None = None


def scalarize(point: MetricPoint, objective: Objective) -> float | None:
    """Scalarized objective value, or None for infeasible points."""
    if not point.feasible:
        return None
    w_util, w_spd, w_waod = objective.weights
    s_util, s_spd, s_waod = objective.scales
    return (
        -point.utility_per_applicant * w_util / s_util
        + abs(point.spd) * w_spd / s_spd
        + abs(point.waod) * w_waod / s_waod
    )


def _trial(index: int, point: MetricPoint, objective: Objective) -> Trial:
    value = scalarize(point, objective)
    status = TrialStatus.FEASIBLE if value is not None else TrialStatus.INFEASIBLE
    return Trial(index=index, point=point, objective_value=value, status=status)


def _best_of(history: Sequence[Trial]) -> Trial | None:
    # Strict < keeps the first-found trial on ties, for reproducibility.
    best = None
    for trial in history:
        if trial.status is not TrialStatus.FEASIBLE:
            continue
        if best is None or trial.objective_value < best.objective_value:
            best = trial
    return best


def _result(history: list[Trial], config: dict) -> OptimizationResult:
    best = _best_of(history)
    diagnostic = None
    if best is None:
        diagnostic = (
            f"no feasible trial in {len(history)} evaluations; "
            "widen di_bounds or rerun with another seed"
        )
    return OptimizationResult(
        best=best, history=tuple(history), config=config, diagnostic=diagnostic
    )


class ParzenMixture:
    """Equal-weight mixture of [0,1]-truncated Gaussians for one dimension.

    One component sits on each observation with bandwidth equal to the larger
    gap to its sorted neighbors (a lone observation takes the full domain
    width), clipped to [width/floor_divisor, width]. A wide prior component
    at 0.5 with bandwidth 1.0 joins the mixture so the density never starves
    anywhere in the domain, even with zero observations.
    """

    def __init__(self, observations: Sequence[float], floor_divisor: int = 100) -> None:
        obs = np.sort(np.asarray(observations, dtype=np.float64))
        if obs.size == 0:
            widths = np.empty(0)
        elif obs.size == 1:
            widths = np.array([1.0])
        else:
            gaps = np.diff(obs)
            left = np.concatenate(([0.0], gaps))
            right = np.concatenate((gaps, [0.0]))
            widths = np.maximum(left, right)
        widths = np.clip(widths, 1.0 / floor_divisor, 1.0)
        self._mu = np.concatenate((obs, [0.5]))
        self._sigma = np.concatenate((widths, [1.0]))
        # Probability mass each untruncated Gaussian leaves inside [0,1].
        self._mass = ndtr((1.0 - self._mu) / self._sigma) - ndtr(-self._mu / self._sigma)

    def pdf(self, xs: np.ndarray) -> np.ndarray:
        z = (np.asarray(xs, dtype=np.float64)[:, None] - self._mu) / self._sigma
        comp = np.exp(-0.5 * z * z) / (_SQRT_2PI * self._sigma * self._mass)
        return comp.mean(axis=1)

    def log_pdf(self, xs: np.ndarray) -> np.ndarray:
        # The prior component keeps the mixture bounded away from zero on
        # [0,1], so the plain log is safe.
        return np.log(self.pdf(xs))

    def sample(self, rng: Xoshiro256) -> float:
        """Draw one point: pick a component uniformly, then rejection-sample
        its truncated Gaussian. Consumes a variable but seed-determined
        number of rng draws."""
        m = len(self._mu)
        comp = min(int(rng.uniform() * m), m - 1)
        mu, sigma = float(self._mu[comp]), float(self._sigma[comp])
        for _ in range(1000):
            x = mu + sigma * rng.normal()
            if 0.0 <= x <= 1.0:
                return x
        # Unreachable in practice: acceptance stays above 1/3 for all
        # component shapes this mixture constructs.
        return min(1.0, max(0.0, mu))


def _split_history(
    history: Sequence[Trial], gamma: float
) -> tuple[list[Trial], list[Trial]]:
    feasible = sorted(
        (t for t in history if t.status is TrialStatus.FEASIBLE),
        key=lambda t: (t.objective_value, t.index),
    )
    infeasible = [t for t in history if t.status is TrialStatus.INFEASIBLE]
    n_good = max(1, math.ceil(gamma * len(feasible))) if feasible else 0
    good = feasible[:n_good]
    bad = feasible[n_good:] + infeasible
    return good, bad


def _propose(
    history: Sequence[Trial], config: TpeConfig, rng: Xoshiro256
) -> ThresholdPair:
    good, bad = _split_history(history, config.gamma)
    divisor = config.bandwidth_floor_divisor
    mixtures = {}
    for dim, pick in (("unp", lambda t: t.thresholds.t_unp), ("priv", lambda t: t.thresholds.t_priv)):
        mixtures[dim] = (
            ParzenMixture([pick(t) for t in good], divisor),
            ParzenMixture([pick(t) for t in bad], divisor),
        )
    # Candidate draws: all unprivileged-dimension values first, then all
    # privileged-dimension values, in candidate order.
    cand_unp = np.array([mixtures["unp"][0].sample(rng) for _ in range(config.n_candidates)])
    cand_priv = np.array([mixtures["priv"][0].sample(rng) for _ in range(config.n_candidates)])
    score = (
        mixtures["unp"][0].log_pdf(cand_unp)
        - mixtures["unp"][1].log_pdf(cand_unp)
        + mixtures["priv"][0].log_pdf(cand_priv)
        - mixtures["priv"][1].log_pdf(cand_priv)
    )
    pick = int(np.argmax(score))
    return ThresholdPair(t_unp=float(cand_unp[pick]), t_priv=float(cand_priv[pick]))


def tpe_minimize(
    cohort: Cohort,
    costs: CostModel,
    objective: Objective,
    config: TpeConfig = TpeConfig(),
    progress: Callable[[int, int], None] | None = None,
) -> OptimizationResult:
    """Minimize the scalarized objective with the TPE strategy.

    The first n_startup trials sample the unit square uniformly (t_unp drawn
    before t_priv). Every later trial splits the feasible history at the
    gamma quantile into good and bad sets, adds all infeasible trials to the
    bad set, fits per-dimension Parzen mixtures l and g, draws n_candidates
    points from l, and evaluates the candidate with the largest
    log l(x) - log g(x). Fixed seeds give identical histories.

    ``progress`` is called as progress(completed, total) after each trial.
    """
    rng = Xoshiro256(config.seed)
    index = ScoreIndex(cohort)
    history: list[Trial] = []
    for i in range(config.n_trials):
        if i < config.n_startup:
            pair = ThresholdPair(t_unp=rng.uniform(), t_priv=rng.uniform())
        else:
            pair = _propose(history, config, rng)
        point = index.evaluate(pair, costs, objective.di_bounds)
        history.append(_trial(i, point, objective))
        if progress is not None:
            progress(i + 1, config.n_trials)
    return _result(
        history,
        {
            "method": "tpe",
            "n_trials": config.n_trials,
            "n_startup": config.n_startup,
            "gamma": config.gamma,
            "n_candidates": config.n_candidates,
            "seed": config.seed,
            "bandwidth_floor_divisor": config.bandwidth_floor_divisor,
        },
    )


def grid_minimize(
    cohort: Cohort,
    costs: CostModel,
    objective: Objective,
    step: float = 0.005,
) -> OptimizationResult:
    """Exhaustively evaluate the lattice {0, step, ..., 1} squared.

    Serves as the independent oracle for TPE acceptance. Iteration order is
    t_unp outer and t_priv inner, both ascending, so equal objectives break
    toward the lower t_unp and then the lower t_priv.
    """
    if not 0.0 < step <= 0.5:
        raise ValueError(f"step must lie in (0, 0.5], got {step}")
    k = round(1.0 / step)
    if math.isclose(k * step, 1.0, rel_tol=1e-9):
        # Exact lattice endpoints when step divides 1.
        values = [i / k for i in range(k + 1)]
    else:
        values = [i * step for i in range(math.floor(1.0 / step) + 1)]
    index = ScoreIndex(cohort)
    conf_unp = {v: index.group_confusion(Group.UNPRIVILEGED, v) for v in values}
    conf_priv = {v: index.group_confusion(Group.PRIVILEGED, v) for v in values}
    history: list[Trial] = []
    i = 0
    for t_unp in values:
        cu = conf_unp[t_unp]
        for t_priv in values:
            point = metric_point(
                conf_priv[t_priv],
                cu,
                ThresholdPair(t_unp=t_unp, t_priv=t_priv),
                costs,
                objective.di_bounds,
            )
            history.append(_trial(i, point, objective))
            i += 1
    return _result(history, {"method": "grid", "step": step})


def random_minimize(
    cohort: Cohort,
    costs: CostModel,
    objective: Objective,
    n: int,
    seed: int = 0,
) -> OptimizationResult:
    """Uniform random search baseline with the same trial contract."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    rng = Xoshiro256(seed)
    index = ScoreIndex(cohort)
    history: list[Trial] = []
    for i in range(n):
        pair = ThresholdPair(t_unp=rng.uniform(), t_priv=rng.uniform())
        point = index.evaluate(pair, costs, objective.di_bounds)
        history.append(_trial(i, point, objective))
    return _result(history, {"method": "random", "n": n, "seed": seed})


def _json_float(value: float) -> float | None:
    return value if math.isfinite(value) else None


def trial_to_dict(trial: Trial) -> dict:
    """JSON-safe mapping for one trial; non-finite DI ratios become null."""
    p = trial.point
    return {
        "index": trial.index,
        "t_unp": p.thresholds.t_unp,
        "t_priv": p.thresholds.t_priv,
        "spd": p.spd,
        "waod": p.waod,
        "di_ratio": _json_float(p.di_ratio),
        "utility_total": p.utility_total,
        "utility_per_applicant": p.utility_per_applicant,
        "feasible": p.feasible,
        "objective": trial.objective_value,
        "status": trial.status.value,
    }


def result_to_dict(result: OptimizationResult, include_history: bool = False) -> dict:
    """JSON-safe mapping for a whole optimization result."""
    out = {
        "best": None if result.best is None else trial_to_dict(result.best),
        "config": result.config,
        "n_trials": len(result.history),
        "n_feasible": sum(
            1 for t in result.history if t.status is TrialStatus.FEASIBLE
        ),
    }
    if result.diagnostic is not None:
        out["diagnostic"] = result.diagnostic
    if include_history:
        out["trials"] = [trial_to_dict(t) for t in result.history]
    return out


def export_history(result: OptimizationResult, path: str | Path) -> None:
    """Write the trial history as CSV: cloud columns plus index, objective, status."""
    lines = [
        "t_unp,t_priv,spd,waod,di_ratio,utility_total,utility_per_applicant,"
        "feasible,index,objective,status"
    ]
    for t in result.history:
        p = t.point
        objective = "" if t.objective_value is None else f"{t.objective_value:.6f}"
        lines.append(
            f"{p.thresholds.t_unp:.6f},{p.thresholds.t_priv:.6f},"
            f"{p.spd:.6f},{p.waod:.6f},{p.di_ratio:.6f},"
            f"{p.utility_total:.6f},{p.utility_per_applicant:.6f},"
            f"{'true' if p.feasible else 'false'},{t.index},{objective},{t.status.value}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
