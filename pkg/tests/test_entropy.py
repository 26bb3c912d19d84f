"""
Tests for separated sets, entropy estimates, periodic counts and the 2^n construction
"""
import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.entropy import (
    block_bounds,
    dichotomy_construction,
    entropy_estimate,
    least_period_count,
    mobius,
    n_schedule,
    periodic_counts,
    separated_count,
    separated_set,
    separation_window,
    sft_entropy_oracle,
    spec_bound_check,
    spec_entropy_bound,
    verify_separated,
)
from src.errors import BadArgs, GluingFailed, NotAnSft, StayAwayViolated
from src.systems import SymbolicSystem, zoo_system
from src.systems.graph import trace_power

GOLDEN_H = math.log((1 + math.sqrt(5)) / 2)
THREE_STATE = [[0, 1, 0], [0, 0, 1], [1, 1, 0]]


def _words_by_enumeration(A, length):
    m = len(A)
    return sum(
        all(A[a][b] for a, b in zip(word, word[1:]))
        for word in product(range(m), repeat=length)
    )


def _fibonacci(n):
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


class TestSeparatedSets:
    def test_full_shift_counts(self, full2):
        assert separated_count(full2, 3, Fraction(1, 2)).count == 8
        assert separated_count(full2, 3, Fraction(1, 4)).count == 32

    def test_golden_counts_are_fibonacci(self, golden):
        counts = [separated_count(golden, n, Fraction(1, 2)).count for n in range(1, 17)]
        assert counts[:6] == [2, 3, 5, 8, 13, 21]
        assert counts == [_fibonacci(n + 2) for n in range(1, 17)]

    @pytest.mark.parametrize("transitions,two_sided,limit", [
        ([[1, 1], [1, 1]], True, 14),
        ([[1, 1], [1, 0]], True, 14),
        ([[1, 0], [0, 1]], True, 14),
        (THREE_STATE, True, 12),
        ([[1, 1], [1, 0]], False, 14),
    ])
    def test_counts_match_word_enumeration(self, transitions, two_sided, limit):
        system = SymbolicSystem(transitions, two_sided=two_sided)
        for r in range(1, limit // 2 + 1):
            for n in range(1, limit - 2 * r + 1):
                # separation looks r - 1 symbols past each end of the n-window
                length = n + 2 * (r - 1) if two_sided else n + r - 1
                count = separated_count(system, n, Fraction(1, 2 ** r)).count
                assert count == _words_by_enumeration(transitions, length), (r, n)

    def test_coarse_scale_separates_nothing(self, full2):
        assert separation_window(full2, 4, 1) is None
        assert separated_count(full2, 4, 1).count == 1

    def test_materialized_set_verifies(self, golden):
        result = separated_set(golden, 4, Fraction(1, 2))
        assert len(result.points) == 8
        ok, pair = verify_separated(golden, result.points, 4, Fraction(1, 2))
        assert ok and pair is None

    def test_duplicate_points_are_reported(self, full2, zeros, spike):
        ok, pair = verify_separated(full2, [zeros, spike, zeros], 2, Fraction(1, 2))
        assert not ok
        assert pair == (0, 2)

    def test_rotation_packs_balls(self, rotation):
        result = separated_set(rotation, 5, Fraction(1, 4))
        assert result.exact and result.count == 3
        assert verify_separated(rotation, result.points, 5, Fraction(1, 4))[0]

    def test_thue_morse_uses_factor_counts(self, thue_morse):
        assert separated_count(thue_morse, 3, Fraction(1, 2)).count == 6

    def test_square_map_greedy_is_separated(self, square):
        result = separated_set(square, 4, Fraction(1, 8))
        assert not result.exact
        assert verify_separated(square, result.points, 4, Fraction(1, 8))[0]

    def test_rejects_bad_arguments(self, full2):
        with pytest.raises(BadArgs):
            separated_count(full2, 0, Fraction(1, 2))
        with pytest.raises(BadArgs):
            separated_count(full2, 2, 0)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 5), st.sampled_from([Fraction(1, 2), Fraction(1, 4), Fraction(3, 8)]))
    def test_counts_grow_with_n_and_shrink_with_eps(self, n, eps):
        golden = zoo_system("golden")
        s = separated_count(golden, n, eps).count
        assert separated_count(golden, n + 1, eps).count >= s
        assert separated_count(golden, n, eps / 2).count >= s


class TestEntropyEstimate:
    def test_full_shift(self, full2, config):
        report = entropy_estimate(full2, ["1/2", "1/4"], 12, config=config)
        assert report.h_estimate == pytest.approx(math.log(2))
        assert report.oracle.contains(report.h_estimate, 1e-9)
        assert not report.lower_bound

    def test_golden_mean_approaches_oracle(self, golden, config):
        report = entropy_estimate(golden, ["1/2", "1/4"], 16, config=config)
        assert report.h_estimate == pytest.approx(GOLDEN_H, abs=0.01)

    def test_odometer_has_zero_entropy(self, odometer10):
        report = entropy_estimate(odometer10, ["1/2", "1/4", "1/8"], 32)
        assert report.h_estimate == 0

    def test_grid_estimates_are_lower_bounds(self, square, config):
        report = entropy_estimate(square, ["1/2", "1/4"], 8, config=config)
        assert report.lower_bound
        assert report.n_values == n_schedule(8, False)

    def test_eps_must_decrease(self, full2):
        with pytest.raises(BadArgs):
            entropy_estimate(full2, ["1/4", "1/2"], 4)

    def test_n_schedule(self):
        assert n_schedule(4, True) == [1, 2, 3, 4]
        assert n_schedule(12, False) == [1, 2, 4, 6, 8, 12]


class TestOracle:
    def test_full_shift(self, full2):
        assert sft_entropy_oracle(full2).contains(math.log(2))

    def test_golden_mean(self, golden):
        interval = sft_entropy_oracle(golden)
        assert interval.contains(GOLDEN_H)
        assert interval.width <= 1e-6

    def test_reducible_graph_uses_largest_block(self, disjoint):
        interval = sft_entropy_oracle(disjoint)
        assert interval.upper == 0 and len(interval.blocks) == 2

    def test_iteration_cap_keeps_a_valid_bracket(self, caplog):
        with caplog.at_level("WARNING", logger="src.entropy.oracle"):
            lo, hi = block_bounds([[1, 1], [1, 0]], width=1e-12, max_iter=2)
        assert (lo, hi) == (Fraction(3, 2), Fraction(5, 3))
        assert lo <= (1 + math.sqrt(5)) / 2 <= hi
        assert "after 2 iterations" in caplog.text
        with pytest.raises(BadArgs):
            block_bounds([[1]], max_iter=0)

    def test_needs_sft(self, rotation):
        with pytest.raises(NotAnSft):
            sft_entropy_oracle(rotation)


class TestPeriodicCounts:
    def test_golden_counts(self, golden):
        report = periodic_counts(golden, 6)
        assert [report.p[n] for n in (1, 2, 3)] == [1, 3, 6]
        assert report.cross_checked

    def test_golden_counts_follow_lucas_numbers(self, golden):
        # trace of A^k for the golden mean graph is the Lucas number L_k
        lucas = {1: 1, 2: 3}
        for k in range(3, 17):
            lucas[k] = lucas[k - 1] + lucas[k - 2]
        least = {}
        for d in range(1, 17):
            least[d] = lucas[d] - sum(least[e] for e in range(1, d) if d % e == 0)
        report = periodic_counts(golden, 16)
        assert [report.p[n] for n in range(1, 17)] == [
            sum(least[d] for d in range(1, n + 1)) for n in range(1, 17)
        ]
        assert [report.p[n] for n in (1, 2, 3, 4)] == [1, 3, 6, 10]

    def test_full_shift_counts(self, full2):
        report = periodic_counts(full2, 4)
        assert [report.p[n] for n in (1, 2, 3, 4)] == [2, 4, 10, 22]
        assert report.p_hat == pytest.approx(math.log(22) / 4)

    def test_one_point_shift(self):
        report = periodic_counts(zoo_system("one_point"), 5)
        assert set(report.p.values()) == {1}
        assert report.p_hat == 0

    def test_trace_formula_takes_over(self, golden):
        report = periodic_counts(golden, 8, enumeration_limit=4)
        assert list(report.table["method"]) == ["cycles"] * 4 + ["trace"] * 4
        assert report.p[8] == sum(least_period_count(d, {k: trace_power(golden.A, k) for k in range(1, 9)})
                                  for d in range(1, 9))

    def test_entropy_never_exceeds_periodic_growth(self, golden, config):
        h = entropy_estimate(golden, ["1/2"], 12, config=config).h_estimate
        assert h <= periodic_counts(golden, 12).p_hat + config["classify"]["tolerance"]

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, -1), (4, 0), (6, 1), (30, -1)])
    def test_mobius(self, n, expected):
        assert mobius(n) == expected


class TestDichotomy:
    def test_single_segment(self, full2, spike, zeros):
        result = dichotomy_construction(full2, spike, zeros, Fraction(1, 2), 1)
        assert result.separated.count == 2
        assert result.verified

    def test_six_segments(self, full2, spike, zeros):
        result = dichotomy_construction(full2, spike, zeros, Fraction(1, 2), 6)
        assert len(result.separated.points) == 64
        assert result.r2 == 3 and result.epsilon2 == Fraction(1, 8)
        assert result.m == 7
        assert result.verified
        assert result.bound == pytest.approx(math.log(2) / 14)
        assert result.bound <= sft_entropy_oracle(full2).upper

    def test_close_points_rejected(self, full2, zeros):
        near = full2.point((0,), (1,), (0,), -3)
        with pytest.raises(StayAwayViolated):
            dichotomy_construction(full2, near, zeros, Fraction(1, 2), 2)

    def test_recurrent_x_rejected(self, full2, zeros, ones):
        with pytest.raises(StayAwayViolated):
            dichotomy_construction(full2, zeros, ones, Fraction(1, 2), 1)

    def test_recurrent_x_fails_before_any_gluing(self, full2, zeros, ones, monkeypatch):
        def boom(*args, **kwargs):
            raise AssertionError("gluing ran for a recurrent x")

        monkeypatch.setattr("src.entropy.dichotomy.decide_gluing_sft", boom)
        monkeypatch.setattr("src.entropy.dichotomy.minimal_max_gap", boom)
        with pytest.raises(StayAwayViolated, match="returns"):
            dichotomy_construction(full2, zeros, ones, Fraction(1, 2), 4)

    def test_rotation_cosets_fail_to_glue(self, rotation):
        with pytest.raises(GluingFailed):
            dichotomy_construction(rotation, 0, 1, Fraction(1, 12), 2, M_max=100)


class TestSpecificationBound:
    def test_bound_value(self):
        assert spec_entropy_bound(2, 3) == pytest.approx(math.log(2) / 3)

    def test_bound_arguments(self):
        with pytest.raises(BadArgs):
            spec_entropy_bound(1, 3)
        with pytest.raises(BadArgs):
            spec_entropy_bound(2, 0)

    @pytest.mark.parametrize("name", ["full2", "golden"])
    def test_bound_below_oracle(self, name, config):
        result = spec_bound_check(zoo_system(name), config=config)
        assert result["r"] == 2 and result["N"] == 2
        assert result["holds"]
