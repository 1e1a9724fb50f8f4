"""Scored binary-classification cohorts with a two-group protected attribute.

A cohort is an ordered list of already-scored records; this module ingests
them from CSV, synthesizes them from a parametric generator, and writes them
back out. Classifier training is out of scope: the engine starts from scores.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .rng import Xoshiro256

CSV_HEADER = ("score", "label", "group")


class Group(str, Enum):
    PRIVILEGED = "privileged"
    UNPRIVILEGED = "unprivileged"


#: Accepts the canonical tokens written by save_cohort.
CANONICAL_GROUP_MAP = {
    "privileged": Group.PRIVILEGED,
    "unprivileged": Group.UNPRIVILEGED,
}


class CohortError(ValueError):
    """A cohort file or record set violates the data contract."""

    def __init__(self, message: str, row: int | None = None) -> None:
        self.row = row
        super().__init__(message if row is None else f"{message} at row {row}")


@dataclass(frozen=True)
class ScoredRecord:
    """One individual's classifier score, ground-truth label, and group."""

    score: float
    label: int
    group: Group

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise CohortError(f"score out of range: {self.score}")
        if self.label not in (0, 1):
            raise CohortError(f"label must be 0 or 1, got {self.label}")


@dataclass(frozen=True)
class Cohort:
    """Immutable validated record collection; both groups must carry both labels."""

    records: tuple[ScoredRecord, ...]
    n_priv: int = field(init=False)
    n_unp: int = field(init=False)

    def __post_init__(self) -> None:
        counts = {g: [0, 0] for g in Group}  # per group: [label-0, label-1]
        for rec in self.records:
            counts[rec.group][rec.label] += 1
        for group in Group:
            n0, n1 = counts[group]
            if n0 + n1 == 0:
                raise CohortError(f"group {group.value} has no records")
            if n1 == 0:
                raise CohortError(f"group {group.value} has no label-1 records")
            if n0 == 0:
                raise CohortError(f"group {group.value} has no label-0 records")
        object.__setattr__(self, "n_priv", sum(counts[Group.PRIVILEGED]))
        object.__setattr__(self, "n_unp", sum(counts[Group.UNPRIVILEGED]))

    def __len__(self) -> int:
        return len(self.records)

    def group_records(self, group: Group) -> list[ScoredRecord]:
        return [r for r in self.records if r.group is group]

    def positive_rate(self, group: Group) -> float:
        """Fraction of ground-truth favorable labels within a group."""
        recs = self.group_records(group)
        return sum(r.label for r in recs) / len(recs)


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of the synthetic cohort generator.

    The defaults mimic a 1000-applicant credit cohort in which 190 applicants
    belong to the unprivileged group and its favorable-label rate sits 21%
    relatively below the privileged group's (0.5726 = 0.79 * 0.7249). The four
    (group, label) score cells are Beta-shaped; defaults skew scores against
    the unprivileged group.
    """

    n_total: int = 1000
    unprivileged_fraction: float = 0.19
    positive_rate_priv: float = 0.7249
    positive_rate_unp: float = 0.5726
    priv_pos_shape: tuple[float, float] = (6.0, 2.0)
    priv_neg_shape: tuple[float, float] = (2.0, 4.0)
    unp_pos_shape: tuple[float, float] = (5.0, 3.0)
    unp_neg_shape: tuple[float, float] = (2.0, 5.0)
    seed: int = 7

    def __post_init__(self) -> None:
        if self.n_total < 2:
            raise CohortError(f"n_total must be at least 2, got {self.n_total}")
        if not 0.0 < self.unprivileged_fraction < 1.0:
            raise CohortError(
                f"unprivileged_fraction must be in (0,1), got {self.unprivileged_fraction}"
            )
        for name in ("positive_rate_priv", "positive_rate_unp"):
            rate = getattr(self, name)
            if not 0.0 < rate < 1.0:
                raise CohortError(f"{name} must be in (0,1), got {rate}")
        for name in ("priv_pos_shape", "priv_neg_shape", "unp_pos_shape", "unp_neg_shape"):
            a, b = getattr(self, name)
            if a <= 0.0 or b <= 0.0:
                raise CohortError(f"{name} parameters must be positive, got ({a}, {b})")


def generate_cohort(spec: SyntheticSpec) -> Cohort:
    """Synthesize a cohort deterministically from ``spec``.

    Record layout is fixed: the privileged block precedes the unprivileged
    block, and within each block the label-1 records come first. Group sizes
    are ``round(n_total * fraction)`` (unprivileged side), label-1 counts are
    ``round(size * positive_rate)``, and scores are drawn record-by-record in
    layout order from the (group, label) Beta cell, clipped to [0, 1].
    """
    rng = Xoshiro256(spec.seed)
    n_unp = round(spec.n_total * spec.unprivileged_fraction)
    n_priv = spec.n_total - n_unp
    blocks = (
        (Group.PRIVILEGED, n_priv, spec.positive_rate_priv, spec.priv_pos_shape, spec.priv_neg_shape),
        (Group.UNPRIVILEGED, n_unp, spec.positive_rate_unp, spec.unp_pos_shape, spec.unp_neg_shape),
    )
    records = []
    for group, size, rate, pos_shape, neg_shape in blocks:
        n_pos = round(size * rate)
        for i in range(size):
            label = 1 if i < n_pos else 0
            a, b = pos_shape if label == 1 else neg_shape
            score = min(1.0, max(0.0, rng.beta(a, b)))
            records.append(ScoredRecord(score=score, label=label, group=group))
    return Cohort(tuple(records))


def parse_cohort(text: str, group_map: dict[str, Group] | None = None) -> Cohort:
    """Parse CSV text with header ``score,label,group`` into a validated Cohort.

    Row numbers in error messages count the header as row 1. Out-of-range
    scores are rejected, never clipped: ingestion must not alter user data.
    """
    if group_map is None:
        group_map = CANONICAL_GROUP_MAP
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CohortError(f"empty file: expected header {','.join(CSV_HEADER)}") from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise CohortError(
            f"missing column: expected header {','.join(CSV_HEADER)}, got {','.join(header)}",
            row=1,
        )
    records = []
    for row_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise CohortError(f"expected 3 fields, got {len(row)}", row=row_no)
        raw_score, raw_label, raw_group = (f.strip() for f in row)
        try:
            score = float(raw_score)
        except ValueError:
            raise CohortError(f"unparsable score {raw_score!r}", row=row_no) from None
        if not 0.0 <= score <= 1.0:
            raise CohortError("score out of range", row=row_no)
        if raw_label not in ("0", "1"):
            raise CohortError(f"unparsable label {raw_label!r}", row=row_no)
        if raw_group not in group_map:
            raise CohortError(f"unmapped group value {raw_group!r}", row=row_no)
        records.append(
            ScoredRecord(score=score, label=int(raw_label), group=group_map[raw_group])
        )
    return Cohort(tuple(records))


def load_cohort(path: str | Path, group_map: dict[str, Group] | None = None) -> Cohort:
    """Load and validate a cohort CSV file. See :func:`parse_cohort`."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_cohort(text, group_map)


def save_cohort(cohort: Cohort, path: str | Path) -> None:
    """Write a cohort as CSV with canonical group tokens.

    Scores are written with 12 significant digits, so a load of the saved
    file reproduces them to that precision.
    """
    lines = [",".join(CSV_HEADER)]
    for rec in cohort.records:
        lines.append(f"{rec.score:.12g},{rec.label},{rec.group.value}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
