"""Preference weighting via the Analytic Hierarchy Process.

Three pairwise importance ratings over (utility, SPD, WAOD) are assembled
into a reciprocal comparison matrix whose principal eigenvector, normalized
to sum 1, is the preference weight vector. The matrix's top eigenvalue also
measures how coherent the ratings are: the consistency ratio divides the
consistency index (lambda_max - 3)/2 by 0.58, the random index for 3x3
matrices, and ratings with a ratio above 0.1 should be re-elicited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tradeoff import MetricRanges

#: Saaty random index for 3x3 comparison matrices.
RANDOM_INDEX_3 = 0.58
#: Consistency ratios above this call for re-rating.
CONSISTENCY_LIMIT = 0.1

_SCALE = tuple(float(k) for k in range(1, 10)) + tuple(1.0 / k for k in range(2, 10))


def on_rating_scale(value: float) -> bool:
    """Whether a value is one of the discrete ratings 1..9 or 1/2..1/9."""
    return any(math.isclose(value, s, rel_tol=1e-9) for s in _SCALE)


@dataclass(frozen=True)
class AhpRatings:
    """The three pairwise ratings, each on the 1..9 scale or its reciprocals.

    A rating above 1 favors the first-named metric; a rating below 1 is the
    inverted form favoring the second.
    """

    util_vs_spd: float
    util_vs_waod: float
    spd_vs_waod: float

    def __post_init__(self) -> None:
        for name in ("util_vs_spd", "util_vs_waod", "spd_vs_waod"):
            value = getattr(self, name)
            if not 1.0 / 9.0 - 1e-12 <= value <= 9.0 + 1e-12:
                raise ValueError(f"{name} must lie in [1/9, 9], got {value}")
            if not on_rating_scale(value):
                raise ValueError(
                    f"{name} must be an integer 1..9 or a reciprocal 1/2..1/9, got {value}"
                )


@dataclass(frozen=True)
class ComparisonMatrix:
    """Reciprocal positive 3x3 matrix over (utility, SPD, WAOD)."""

    m: tuple[tuple[float, float, float], ...]

    def __post_init__(self) -> None:
        if len(self.m) != 3 or any(len(row) != 3 for row in self.m):
            raise ValueError("comparison matrix must be 3x3")
        for i in range(3):
            if self.m[i][i] != 1.0:
                raise ValueError("comparison matrix diagonal must be 1")
            for j in range(3):
                if self.m[i][j] <= 0.0:
                    raise ValueError("comparison matrix entries must be positive")
                if not math.isclose(self.m[j][i], 1.0 / self.m[i][j], rel_tol=1e-9):
                    raise ValueError("comparison matrix must be reciprocal")

    @classmethod
    def from_upper(cls, a: float, b: float, c: float) -> "ComparisonMatrix":
        """Build from the upper triangle: a = util:spd, b = util:waod, c = spd:waod."""
        return cls(
            (
                (1.0, a, b),
                (1.0 / a, 1.0, c),
                (1.0 / b, 1.0 / c, 1.0),
            )
        )

    @property
    def upper(self) -> tuple[float, float, float]:
        return self.m[0][1], self.m[0][2], self.m[1][2]


@dataclass(frozen=True)
class AhpResult:
    """Weights plus the consistency diagnostics derived from one matrix."""

    matrix: ComparisonMatrix
    weights: tuple[float, float, float]
    lambda_max: float
    consistency_index: float
    consistency_ratio: float
    consistent: bool


def build_matrix(ratings: AhpRatings) -> ComparisonMatrix:
    """Assemble the ratings into the reciprocal comparison matrix."""
    return ComparisonMatrix.from_upper(
        ratings.util_vs_spd, ratings.util_vs_waod, ratings.spd_vs_waod
    )


def principal_eigen(
    matrix: ComparisonMatrix, tol: float = 1e-10, max_iter: int = 10000
) -> AhpResult:
    """Extract weights as the principal eigenvector via power iteration.

    Iteration starts from the uniform vector and renormalizes by component
    sum each step until successive vectors differ by less than ``tol`` in
    max-norm. lambda_max is the mean Rayleigh quotient (M w)_i / w_i, floored
    at 3, the exact value for perfectly consistent matrices.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    m = np.asarray(matrix.m, dtype=np.float64)
    w = np.full(3, 1.0 / 3.0)
    for _ in range(max_iter):
        v = m @ w
        w_next = v / v.sum()
        done = bool(np.max(np.abs(w_next - w)) < tol)
        w = w_next
        if done:
            break
    else:
        raise ArithmeticError(f"power iteration did not converge in {max_iter} steps")
    lambda_max = max(float(np.mean((m @ w) / w)), 3.0)
    ci = (lambda_max - 3.0) / 2.0
    cr = ci / RANDOM_INDEX_3
    return AhpResult(
        matrix=matrix,
        weights=(float(w[0]), float(w[1]), float(w[2])),
        lambda_max=lambda_max,
        consistency_index=ci,
        consistency_ratio=cr,
        consistent=cr <= CONSISTENCY_LIMIT,
    )


def check_consistency(result: AhpResult) -> tuple[bool, str]:
    """Gate on the consistency ratio, with a diagnostic for the failing case.

    For a 3x3 matrix the single transitivity relation is a*c = b over the
    upper triangle, so the diagnostic spells out how far the rated b sits
    from the product implied by a and c.
    """
    if result.consistent:
        return True, f"ratings are consistent (CR = {result.consistency_ratio:.4f})"
    a, b, c = result.matrix.upper
    return False, (
        f"ratings are inconsistent (CR = {result.consistency_ratio:.4f} > "
        f"{CONSISTENCY_LIMIT}): utility vs SPD ({a:g}) and SPD vs WAOD ({c:g}) "
        f"imply utility vs WAOD near {a * c:g}, but it is rated {b:g}; re-rating is needed"
    )


def aggregate(ratings_list: list[AhpRatings]) -> ComparisonMatrix:
    """Combine several raters by the element-wise geometric mean.

    The mean of reciprocal matrices is reciprocal, so the result drops into
    principal_eigen unchanged. Opposing ratings x and 1/x cancel to 1.
    """
    if not ratings_list:
        raise ValueError("ratings_list must not be empty")
    uppers = np.array([build_matrix(r).upper for r in ratings_list], dtype=np.float64)
    gm = np.exp(np.mean(np.log(uppers), axis=0))
    return ComparisonMatrix.from_upper(float(gm[0]), float(gm[1]), float(gm[2]))


def elicitation_scales(
    cloud_ranges: MetricRanges, intervals: int = 2
) -> tuple[float, float, float]:
    """Derive the scalarization scales (S_util, S_spd, S_waod) from a cloud.

    Each metric's observed range is divided into ``intervals`` equal slices;
    the slice width is that metric's scale.
    """
    if intervals < 1:
        raise ValueError(f"intervals must be at least 1, got {intervals}")
    scales = []
    for name, (lo, hi) in (
        ("utility_per_applicant", cloud_ranges.utility_per_applicant),
        ("spd", cloud_ranges.spd),
        ("waod", cloud_ranges.waod),
    ):
        if hi == lo:
            raise ValueError(f"degenerate {name} range ({lo}, {hi})")
        scales.append((hi - lo) / intervals)
    return scales[0], scales[1], scales[2]
