"""Shared fixtures for the test suite."""

import pytest

from fairthresh.cohort import Cohort, Group, ScoredRecord, SyntheticSpec, generate_cohort
from fairthresh.fairmetrics import CostModel


def make_cohort(priv_rows, unp_rows) -> Cohort:
    """Build a cohort from (score, label) pairs for each group."""
    records = [ScoredRecord(s, y, Group.PRIVILEGED) for s, y in priv_rows]
    records += [ScoredRecord(s, y, Group.UNPRIVILEGED) for s, y in unp_rows]
    return Cohort(records=tuple(records))


@pytest.fixture
def eight_record_cohort() -> Cohort:
    # Two correct positives and two correct negatives per group once the
    # thresholds sit at (t_unp=0.45, t_priv=0.65).
    return make_cohort(
        priv_rows=[(0.9, 1), (0.7, 1), (0.6, 0), (0.2, 0)],
        unp_rows=[(0.8, 1), (0.5, 1), (0.4, 0), (0.3, 0)],
    )


@pytest.fixture(scope="session")
def default_cohort() -> Cohort:
    return generate_cohort(SyntheticSpec())


@pytest.fixture(scope="session")
def default_costs() -> CostModel:
    return CostModel()
