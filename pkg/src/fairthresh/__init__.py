"""Joint fairness-utility optimization of group-specific decision thresholds.

The package post-processes an already-scored binary classifier: it evaluates
independence, separation, and utility metrics over a cohort at any threshold
pair, elicits preference weights over the three metrics with the Analytic
Hierarchy Process, and minimizes the preference-weighted objective under the
disparate-impact constraint with a Tree-of-Parzen-Estimators optimizer.
"""

from .ahp import (
    AhpRatings,
    AhpResult,
    ComparisonMatrix,
    aggregate,
    build_matrix,
    check_consistency,
    elicitation_scales,
    on_rating_scale,
    principal_eigen,
)
from .cohort import (
    Cohort,
    CohortError,
    Group,
    ScoredRecord,
    SyntheticSpec,
    generate_cohort,
    load_cohort,
    parse_cohort,
    save_cohort,
)
from .fairmetrics import (
    DEFAULT_DI_BOUNDS,
    CostModel,
    GroupConfusion,
    MetricPoint,
    ScoreIndex,
    ThresholdPair,
    confusion,
    di_ratio,
    evaluate_point,
    spd,
    utility,
    waod,
)
from .optimizer import (
    DEFAULT_SCALES,
    Objective,
    OptimizationResult,
    TpeConfig,
    Trial,
    TrialStatus,
    grid_minimize,
    random_minimize,
    scalarize,
    tpe_minimize,
)
from .tradeoff import (
    CloudFilter,
    MetricRanges,
    TradeoffCloud,
    export_cloud,
    filter_cloud,
    metric_ranges,
    sample_cloud,
)

__version__ = "0.1.0"

__all__ = [
    "AhpRatings",
    "AhpResult",
    "CloudFilter",
    "Cohort",
    "CohortError",
    "ComparisonMatrix",
    "CostModel",
    "DEFAULT_DI_BOUNDS",
    "DEFAULT_SCALES",
    "Group",
    "GroupConfusion",
    "MetricPoint",
    "MetricRanges",
    "Objective",
    "OptimizationResult",
    "ScoreIndex",
    "ScoredRecord",
    "SyntheticSpec",
    "ThresholdPair",
    "TpeConfig",
    "TradeoffCloud",
    "Trial",
    "TrialStatus",
    "aggregate",
    "build_matrix",
    "check_consistency",
    "confusion",
    "di_ratio",
    "elicitation_scales",
    "evaluate_point",
    "export_cloud",
    "filter_cloud",
    "generate_cohort",
    "grid_minimize",
    "load_cohort",
    "metric_ranges",
    "on_rating_scale",
    "parse_cohort",
    "principal_eigen",
    "random_minimize",
    "sample_cloud",
    "save_cohort",
    "scalarize",
    "spd",
    "tpe_minimize",
    "utility",
    "waod",
]
