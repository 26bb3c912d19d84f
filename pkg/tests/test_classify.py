"""
Tests for property verdicts, Birkhoff probes and the classification report
"""
from fractions import Fraction

import pytest

from src.classify import (
    NO,
    UNKNOWN,
    YES,
    BirkhoffProbe,
    birkhoff_gap,
    birkhoff_witness_sft,
    classify,
    covering_time,
    equicontinuity_modulus,
    ergodicity_probe,
    find_nonrecurrent,
    is_minimal,
    is_transitive,
    stay_away_pair,
)
from src.classify.report import FAIL
from src.errors import BadArgs, NotFinite, NotMinimal
from src.systems import CandidatePool, grid_pool, zoo_system
from src.systems.recurrence import returns
from src.utils import to_jsonable


class TestTransitivity:
    def test_full_shift(self, full2):
        verdict = is_transitive(full2)
        assert verdict.value == YES
        assert "1->0" in verdict.certificate["path_table"]

    def test_disjoint_loops(self, disjoint):
        verdict = is_transitive(disjoint)
        assert verdict.value == NO
        assert verdict.certificate["unreachable_pair"] == [0, 1]

    def test_rotation_with_common_factor(self, rotation):
        verdict = is_transitive(rotation)
        assert verdict.value == NO
        assert verdict.certificate["largest_orbit"] == 3

    def test_coprime_rotation(self, rotation7):
        assert is_transitive(rotation7).value == YES

    def test_odometer(self, odometer5):
        assert is_transitive(odometer5).value == YES

    def test_thue_morse_is_word_level(self, thue_morse):
        verdict = is_transitive(thue_morse, word_cap=4)
        assert verdict.value == YES and not verdict.exact


class TestMinimality:
    def test_full_shift_is_not_minimal(self, full2):
        verdict = is_minimal(full2)
        assert verdict.value == NO
        assert verdict.certificate["radius"] > 0

    def test_single_cycle_shift(self, two_cycle):
        assert is_minimal(two_cycle).value == YES

    def test_coprime_rotation(self, rotation7):
        assert is_minimal(rotation7).value == YES

    def test_rotation_cycles_miss_balls(self, rotation):
        verdict = is_minimal(rotation)
        assert verdict.value == NO
        assert verdict.certificate["cycle_length"] == 3

    def test_coarse_balls_hide_cosets(self, rotation):
        # every ball of radius 1/4 holds a point of each coset
        assert is_minimal(rotation, resolution=Fraction(1, 4)).value == YES

    def test_thue_morse_is_uniformly_recurrent(self, thue_morse):
        verdict = is_minimal(thue_morse, recurrence_cap=16)
        assert verdict.value == YES
        assert all(v is not None for v in verdict.certificate["recurrence_function"].values())


class TestEquicontinuity:
    def test_isometry(self, odometer10):
        modulus = equicontinuity_modulus(odometer10, Fraction(1, 8))
        assert modulus.status == YES and modulus.delta == Fraction(1, 8)

    def test_full_shift_pairs_split(self, full2):
        eps = Fraction(1, 2)
        modulus = equicontinuity_modulus(full2, eps)
        assert modulus.status == NO
        pair = modulus.counterexample
        assert pair["distance"] < eps
        n = pair["n"]
        assert full2.distance(full2.apply(pair["x"], n), full2.apply(pair["y"], n)) >= eps

    def test_horizon_must_be_positive(self, full2):
        with pytest.raises(BadArgs):
            equicontinuity_modulus(full2, Fraction(1, 2), horizon=0)


class TestRecurrenceSearch:
    def test_full_shift_has_nonrecurrent_point(self, full2):
        found = find_nonrecurrent(full2, Fraction(1, 2))
        assert found is not None and found.exact
        assert not returns(full2, found.point, Fraction(1, 2)).found

    def test_periodic_grid_has_none(self, rotation):
        assert find_nonrecurrent(rotation, Fraction(1, 24)) is None

    def test_stay_away_pair(self, full2):
        pair = stay_away_pair(full2, Fraction(1, 2))
        assert pair is not None
        assert pair.conditions["holds"]
        assert full2.distance(pair.x, pair.y) >= Fraction(1, 2)

    def test_minimal_grid_has_no_pair(self, rotation7):
        assert stay_away_pair(rotation7, Fraction(1, 7)) is None


class TestCoveringTime:
    def test_rotation(self, rotation7):
        assert covering_time(rotation7, Fraction(1, 7)) == 6

    @pytest.mark.parametrize("eps,expected", [("1/2", 1), ("1/4", 3), ("1/8", 7)])
    def test_odometer(self, odometer10, eps, expected):
        assert covering_time(odometer10, Fraction(eps)) == expected

    def test_non_minimal_rotation(self, rotation):
        with pytest.raises(NotMinimal):
            covering_time(rotation, Fraction(1, 24))

    def test_needs_grid(self, full2):
        with pytest.raises(NotFinite):
            covering_time(full2, Fraction(1, 2))


class TestBirkhoff:
    def test_rotation_average(self, rotation7):
        probe = BirkhoffProbe(0, Fraction(1, 7))
        assert birkhoff_gap(rotation7, 0, probe, 7) == Fraction(3, 7)

    def test_symbolic_average(self, full2, spike, zeros):
        probe = BirkhoffProbe(zeros, Fraction(1, 2))
        assert birkhoff_gap(full2, spike, probe, 2) == Fraction(1, 2)

    def test_probe_radius_positive(self):
        with pytest.raises(BadArgs):
            BirkhoffProbe(0, 0)

    def test_witness_visits_often(self, full2, spike):
        witness = birkhoff_witness_sft(full2, spike, 1, repeats=4)
        assert witness.holds
        assert witness.floor == Fraction(1, witness.m + 1)
        assert witness.n == sum(witness.gaps) + 1

    def test_rotation_averages_agree(self, rotation7):
        result = ergodicity_probe(rotation7, BirkhoffProbe(0, Fraction(1, 7)), grid_pool(rotation7), 7, 700)
        assert result["spread"] == pytest.approx(0)

    def test_full_shift_averages_differ(self, full2, zeros, ones):
        pool = CandidatePool((zeros, ones), "two fixed points")
        result = ergodicity_probe(full2, BirkhoffProbe(zeros, Fraction(1, 4)), pool, 2, 16)
        assert result["spread"] == 1


class TestClassify:
    def test_full_shift(self, full2, config):
        report = classify(full2, config)
        assert report.verdicts["transitive"].value == YES
        assert report.verdicts["minimal"].value == NO
        assert report.verdicts["equicontinuous"].value == NO
        assert report.verdicts["gluing"].value == YES
        assert not report.failures
        checks = {c.id: c.status for c in report.theorem_checks}
        assert checks["T1"] == "pass"
        assert checks["T4.2"] == "pass"
        assert set(report.tables) >= {"entropy", "gluing", "periodic"}

    def test_odometer(self, odometer10, config):
        report = classify(odometer10, config)
        assert report.verdicts["minimal"].value == YES
        assert report.verdicts["equicontinuous"].value == YES
        assert report.verdicts["gluing"].value == UNKNOWN
        assert all(c.status != FAIL for c in report.theorem_checks)
        checks = {c.id: c.status for c in report.theorem_checks}
        assert checks["T5a"] == "pass" and checks["T5b"] == "pass"

    def test_rotation_with_common_factor(self, rotation, config):
        report = classify(rotation, config)
        assert report.verdicts["transitive"].value == NO
        assert report.verdicts["gluing"].value == NO
        assert not report.failures

    def test_summary_table(self, golden, config):
        report = classify(golden, config)
        table = report.summary_table()
        assert list(table.columns) == ["item", "value", "scope"]
        assert "gluing" in set(table["item"])

    def test_golden_mean_averages_differ(self, golden, config):
        report = classify(golden, config)
        check = {c.id: c for c in report.theorem_checks}["T4.1"]
        assert check.status == "pass"
        assert check.details["x_average"] == 0
        assert check.details["witness"].average > 0

    def test_report_is_deterministic(self, config):
        first = to_jsonable(classify(zoo_system("rotation_7_3"), config))
        again = to_jsonable(classify(zoo_system("rotation_7_3"), config))
        assert first == again
