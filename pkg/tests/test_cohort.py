"""Tests for cohort construction, synthesis, and CSV round-trips."""

import math

import pytest

from fairthresh.cohort import (
    CSV_HEADER,
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

from conftest import make_cohort


class TestScoredRecord:
    def test_valid_record(self):
        rec = ScoredRecord(0.5, 1, Group.PRIVILEGED)
        assert rec.score == 0.5
        assert rec.label == 1

    @pytest.mark.parametrize("score", [-0.01, 1.01, 1.3])
    def test_score_out_of_range(self, score):
        with pytest.raises(CohortError):
            ScoredRecord(score, 0, Group.PRIVILEGED)

    @pytest.mark.parametrize("label", [-1, 2, 3])
    def test_bad_label(self, label):
        with pytest.raises(CohortError):
            ScoredRecord(0.5, label, Group.PRIVILEGED)

    def test_boundary_scores_accepted(self):
        ScoredRecord(0.0, 0, Group.UNPRIVILEGED)
        ScoredRecord(1.0, 1, Group.UNPRIVILEGED)


class TestCohortInvariants:
    def test_counts(self, eight_record_cohort):
        assert eight_record_cohort.n_priv == 4
        assert eight_record_cohort.n_unp == 4
        assert len(eight_record_cohort) == 8

    def test_missing_group_rejected(self):
        records = (
            ScoredRecord(0.9, 1, Group.PRIVILEGED),
            ScoredRecord(0.2, 0, Group.PRIVILEGED),
        )
        with pytest.raises(CohortError, match="group unprivileged has no records"):
            Cohort(records=records)

    def test_single_label_group_rejected(self):
        with pytest.raises(CohortError, match="no label-0 records"):
            make_cohort(priv_rows=[(0.9, 1), (0.2, 0)], unp_rows=[(0.8, 1), (0.7, 1)])
        with pytest.raises(CohortError, match="no label-1 records"):
            make_cohort(priv_rows=[(0.9, 1), (0.2, 0)], unp_rows=[(0.8, 0), (0.7, 0)])

    def test_positive_rates(self, eight_record_cohort):
        assert eight_record_cohort.positive_rate(Group.PRIVILEGED) == 0.5
        assert eight_record_cohort.positive_rate(Group.UNPRIVILEGED) == 0.5


class TestSyntheticSpec:
    def test_defaults(self):
        spec = SyntheticSpec()
        assert spec.n_total == 1000
        assert spec.unprivileged_fraction == 0.19
        assert spec.seed == 7

    @pytest.mark.parametrize("frac", [0.0, 1.0, -0.2, 1.5])
    def test_bad_fraction(self, frac):
        with pytest.raises(CohortError):
            SyntheticSpec(unprivileged_fraction=frac)

    def test_bad_shape(self):
        with pytest.raises(CohortError):
            SyntheticSpec(priv_pos_shape=(0.0, 2.0))
        with pytest.raises(CohortError):
            SyntheticSpec(unp_neg_shape=(2.0, -1.0))

    @pytest.mark.parametrize("rate", [0.0, 1.0])
    def test_bad_rate(self, rate):
        with pytest.raises(CohortError):
            SyntheticSpec(positive_rate_priv=rate)


class TestGenerateCohort:
    def test_default_group_sizes(self, default_cohort):
        assert default_cohort.n_priv == 810
        assert default_cohort.n_unp == 190

    def test_label_calibration_exact(self, default_cohort):
        # round(810 * 0.7249) = 587, round(190 * 0.5726) = 109
        priv = default_cohort.group_records(Group.PRIVILEGED)
        unp = default_cohort.group_records(Group.UNPRIVILEGED)
        assert sum(r.label for r in priv) == 587
        assert sum(r.label for r in unp) == 109

    def test_relative_rate_gap_near_21_percent(self, default_cohort):
        rate_p = default_cohort.positive_rate(Group.PRIVILEGED)
        rate_u = default_cohort.positive_rate(Group.UNPRIVILEGED)
        assert rate_u < rate_p
        assert abs(rate_u / rate_p - 0.79) < 0.005

    def test_determinism(self):
        a = generate_cohort(SyntheticSpec())
        b = generate_cohort(SyntheticSpec())
        assert a.records == b.records

    def test_seed_sensitivity(self):
        a = generate_cohort(SyntheticSpec(seed=7))
        b = generate_cohort(SyntheticSpec(seed=8))
        assert sorted(r.score for r in a.records) != sorted(r.score for r in b.records)

    def test_small_even_split(self):
        cohort = generate_cohort(SyntheticSpec(n_total=10, unprivileged_fraction=0.5))
        assert cohort.n_priv == 5
        assert cohort.n_unp == 5

    def test_scores_within_unit_interval(self, default_cohort):
        assert all(0.0 <= r.score <= 1.0 for r in default_cohort.records)

    def test_calibration_for_arbitrary_spec(self):
        spec = SyntheticSpec(n_total=137, unprivileged_fraction=0.3, seed=99)
        cohort = generate_cohort(spec)
        n_unp = round(137 * 0.3)
        assert cohort.n_unp == n_unp
        assert cohort.n_priv == 137 - n_unp
        priv = cohort.group_records(Group.PRIVILEGED)
        unp = cohort.group_records(Group.UNPRIVILEGED)
        assert sum(r.label for r in priv) == round(cohort.n_priv * spec.positive_rate_priv)
        assert sum(r.label for r in unp) == round(cohort.n_unp * spec.positive_rate_unp)


class TestParseCohort:
    def test_four_record_file(self):
        text = "score,label,group\n0.9,1,old\n0.2,0,old\n0.8,1,young\n0.3,0,young\n"
        cohort = parse_cohort(text, {"old": Group.PRIVILEGED, "young": Group.UNPRIVILEGED})
        assert cohort.n_priv == 2
        assert cohort.n_unp == 2

    def test_score_out_of_range_reports_row(self):
        text = (
            "score,label,group\n"
            "1.3,1,privileged\n"
            "0.2,0,privileged\n"
            "0.8,1,unprivileged\n"
            "0.3,0,unprivileged\n"
        )
        with pytest.raises(CohortError, match="at row 2") as excinfo:
            parse_cohort(text)
        assert excinfo.value.row == 2

    def test_error_row_counts_from_header(self):
        text = (
            "score,label,group\n"
            "0.9,1,privileged\n"
            "0.2,0,privileged\n"
            "bogus,1,unprivileged\n"
        )
        with pytest.raises(CohortError, match="at row 4") as excinfo:
            parse_cohort(text)
        assert excinfo.value.row == 4

    def test_single_label_group_named_in_error(self):
        text = (
            "score,label,group\n"
            "0.9,1,privileged\n"
            "0.2,0,privileged\n"
            "0.8,1,unprivileged\n"
            "0.7,1,unprivileged\n"
        )
        with pytest.raises(CohortError, match="group unprivileged has no label-0 records"):
            parse_cohort(text)

    def test_missing_header(self):
        with pytest.raises(CohortError, match="header"):
            parse_cohort("0.9,1,privileged\n0.2,0,privileged\n")

    def test_unmapped_group_value(self):
        text = "score,label,group\n0.9,1,martian\n"
        with pytest.raises(CohortError, match="martian"):
            parse_cohort(text)

    def test_bad_label_reports_row(self):
        text = "score,label,group\n0.9,7,privileged\n"
        with pytest.raises(CohortError, match="at row 2"):
            parse_cohort(text)

    def test_record_order_preserved(self):
        text = "score,label,group\n0.9,1,old\n0.2,0,old\n0.8,1,young\n0.3,0,young\n"
        cohort = parse_cohort(text, {"old": Group.PRIVILEGED, "young": Group.UNPRIVILEGED})
        assert [r.score for r in cohort.records] == [0.9, 0.2, 0.8, 0.3]


class TestRoundTrip:
    def test_save_line_count(self, eight_record_cohort, tmp_path):
        path = tmp_path / "cohort.csv"
        save_cohort(eight_record_cohort, path)
        lines = path.read_text().splitlines()
        assert len(lines) == 9
        assert lines[0] == ",".join(CSV_HEADER)

    def test_round_trip_preserves_everything(self, default_cohort, tmp_path):
        path = tmp_path / "cohort.csv"
        save_cohort(default_cohort, path)
        loaded = load_cohort(path)
        assert loaded.n_priv == default_cohort.n_priv
        assert loaded.n_unp == default_cohort.n_unp
        for orig, back in zip(default_cohort.records, loaded.records):
            assert back.label == orig.label
            assert back.group is orig.group
            assert math.isclose(back.score, orig.score, rel_tol=1e-12, abs_tol=1e-12)

    def test_round_trip_score_multisets(self, default_cohort, tmp_path):
        path = tmp_path / "c.csv"
        save_cohort(default_cohort, path)
        loaded = load_cohort(path)
        for group in Group:
            orig = sorted(f"{r.score:.12g}" for r in default_cohort.group_records(group))
            back = sorted(f"{r.score:.12g}" for r in loaded.group_records(group))
            assert orig == back

    def test_save_to_unwritable_path_raises(self, eight_record_cohort, tmp_path):
        with pytest.raises(OSError):
            save_cohort(eight_record_cohort, tmp_path / "missing_dir" / "c.csv")

    def test_load_missing_file_raises(self, tmp_path):
        with pytest.raises(OSError):
            load_cohort(tmp_path / "nope.csv")
