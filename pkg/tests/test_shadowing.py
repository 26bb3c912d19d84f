"""
Tests for orbit sequences, schedules, shadow verification and shadow search
"""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import BadArgs, NotAnSft, PoolRequired, RankMismatch
from src.shadowing import (
    Gap,
    OrbitSequence,
    find_gap_and_shadow,
    find_shadow_sft,
    lex_gap_search,
    minimal_max_gap,
    schedule,
    verify_shadow,
)
from src.systems import CandidatePool, extend_word, grid_pool, periodic_point, zoo_system
from src.systems.graph import admissible_words


def brute_force_shadowable(sft, C, g, r):
    """Some admissible word on the whole window agrees with every segment"""
    sched = schedule(C, g)
    lo = -r
    hi = sched.starts[-1] + C.lengths[-1] - 1 + r
    constraints = {}
    for (x, m), s in zip(C.entries, sched.starts):
        for c in range(s - r, s + m + r):
            constraints.setdefault(c, set()).add(x.symbol(c - s))
    if any(len(v) > 1 for v in constraints.values()):
        return False
    for word in admissible_words(sft.A, hi - lo + 1):
        if all(word[c - lo] in v for c, v in constraints.items()):
            return True
    return False


class TestSchedule:
    def test_rank_one(self, full2, zeros):
        assert schedule(OrbitSequence(((zeros, 3),)), Gap(())).starts == (0,)

    def test_two_segments(self, zeros, ones):
        C = OrbitSequence(((zeros, 2), (ones, 2)))
        assert schedule(C, Gap((1,))).starts == (0, 2)

    def test_three_segments(self, zeros, ones):
        C = OrbitSequence(((zeros, 3), (ones, 1), (zeros, 4)))
        assert schedule(C, Gap((2, 5))).starts == (0, 4, 9)

    def test_rank_mismatch(self, zeros, ones):
        C = OrbitSequence(((zeros, 2), (ones, 2)))
        with pytest.raises(RankMismatch):
            schedule(C, Gap((1, 1)))

    def test_gap_entries_positive(self):
        with pytest.raises(BadArgs):
            Gap((0,))

    @given(st.lists(st.integers(1, 6), min_size=1, max_size=5), st.data())
    def test_schedule_is_monotone(self, lengths, data):
        gaps = data.draw(st.lists(st.integers(1, 6), min_size=len(lengths) - 1, max_size=len(lengths) - 1))
        C = OrbitSequence(tuple((None, m) for m in lengths))
        starts = schedule(C, Gap(tuple(gaps))).starts
        for j in range(len(lengths) - 1):
            assert starts[j + 1] - starts[j] == lengths[j] + gaps[j] - 1 >= lengths[j]


class TestVerifyShadow:
    def test_point_shadows_itself(self, full2, spike):
        C = OrbitSequence(((spike, 5),))
        assert verify_shadow(full2, C, Gap(()), spike, Fraction(1, 8))

    def test_gap_three_accepted(self, full2, zeros, ones):
        C = OrbitSequence(((zeros, 2), (ones, 2)))
        # 0 up to coordinate 2, 1 from coordinate 3 on
        z = extend_word(full2, (0, 0, 0, 0, 1, 1, 1, 1), -1)
        assert verify_shadow(full2, C, Gap((3,)), z, Fraction(1, 2))

    def test_gap_one_rejected_at_second_segment(self, full2, zeros, ones):
        C = OrbitSequence(((zeros, 2), (ones, 2)))
        verdict = verify_shadow(full2, C, Gap((1,)), zeros, Fraction(1, 2))
        assert not verdict
        assert (verdict.j, verdict.l, verdict.distance) == (2, 0, 1)

    def test_grid_shadowing(self, rotation):
        C = OrbitSequence(((0, 1), (4, 2)))
        assert verify_shadow(rotation, C, Gap((1,)), 0, Fraction(1, 24))


class TestFindShadowSft:
    def test_gap_three_has_witness(self, full2, zeros, ones):
        C = OrbitSequence(((zeros, 2), (ones, 2)))
        result = find_shadow_sft(full2, C, Gap((3,)), 1)
        assert result
        assert verify_shadow(full2, C, Gap((3,)), result.witness.z, Fraction(1, 2))

    def test_gap_two_conflicts(self, full2, zeros, ones):
        C = OrbitSequence(((zeros, 2), (ones, 2)))
        result = find_shadow_sft(full2, C, Gap((2,)), 1)
        assert not result
        assert result.conflict["coordinate"] == 2
        assert sorted(result.conflict["letters"]) == [0, 1]

    def test_golden_orbit_shadows_itself(self, golden):
        p = periodic_point(golden, (0, 1))
        C = OrbitSequence(((p, 1), (p, 1)))
        result = find_shadow_sft(golden, C, Gap((1,)), 0)
        assert result
        assert result.witness.z.symbol(0) == 0

    def test_needs_sft(self, rotation):
        with pytest.raises(NotAnSft):
            find_shadow_sft(rotation, OrbitSequence(((0, 1),)), Gap(()), 1)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_matches_window_enumeration(self, data):
        name = data.draw(st.sampled_from(["full2", "golden"]))
        sft = zoo_system(name)
        cycles = [(0,), (0, 1), (0, 0, 1)] + ([(1,)] if name == "full2" else [])
        r = data.draw(st.integers(0, 2))
        rank = data.draw(st.integers(1, 3))
        entries = []
        for _ in range(rank):
            word = data.draw(st.sampled_from(cycles))
            phase = data.draw(st.integers(0, len(word) - 1))
            entries.append((periodic_point(sft, word, phase), data.draw(st.integers(1, 3))))
        C = OrbitSequence(tuple(entries))
        g = Gap(tuple(data.draw(st.integers(1, 3)) for _ in range(rank - 1)))
        if schedule(C, g).span + 2 * r > 12:
            return
        result = find_shadow_sft(sft, C, g, r)
        assert bool(result) == brute_force_shadowable(sft, C, g, r)
        if result:
            assert verify_shadow(sft, C, g, result.witness.z, Fraction(1, 2 ** r))


class TestGapSearch:
    def test_rank_one_needs_no_gap(self, full2, spike):
        gap, z = find_gap_and_shadow(full2, OrbitSequence(((spike, 4),)), Fraction(1, 2), 1)
        assert gap.gaps == () and z == spike

    def test_first_gap_is_three(self, full2, zeros, ones):
        C = OrbitSequence(((zeros, 2), (ones, 2)))
        gap, z = find_gap_and_shadow(full2, C, Fraction(1, 2), 3)
        assert gap.gaps == (3,)
        assert verify_shadow(full2, C, gap, z, Fraction(1, 2))

    def test_minimal_max_gap_is_tight(self, full2, zeros, ones):
        C = OrbitSequence(((zeros, 2), (ones, 2)))
        B, gap, _ = minimal_max_gap(full2, C, Fraction(1, 2), 8)
        assert B == 3
        assert find_gap_and_shadow(full2, C, Fraction(1, 2), B - 1) is None

    def test_rotation_cosets_never_glue(self, rotation):
        C = OrbitSequence(((0, 1), (1, 1)))
        assert find_gap_and_shadow(rotation, C, Fraction(1, 24), 100, grid_pool(rotation)) is None

    def test_grid_search_needs_pool(self, rotation):
        C = OrbitSequence(((0, 1), (4, 1)))
        with pytest.raises(PoolRequired):
            find_gap_and_shadow(rotation, C, Fraction(1, 24), 4, CandidatePool((), "empty"))

    def test_grid_witness_verifies(self, odometer5):
        C = OrbitSequence(((3, 2), (10, 3)))
        gap, z = find_gap_and_shadow(odometer5, C, Fraction(1, 8), 16, grid_pool(odometer5))
        assert verify_shadow(odometer5, C, gap, z, Fraction(1, 8))

    def test_three_segments_on_a_rotation(self, rotation7):
        # f(x) = x + 3 mod 7: 3 t1 = 3 and 3 (1 + t2) = 5 mod 7
        C = OrbitSequence(((0, 1), (3, 1), (5, 1)))
        gap, z = find_gap_and_shadow(rotation7, C, Fraction(1, 14), 7, grid_pool(rotation7))
        assert gap.gaps == (1, 3) and z == 0
        assert verify_shadow(rotation7, C, gap, z, Fraction(1, 14))

    def test_array_results_are_kept(self):
        def feasible(prefix):
            mask = np.array([sum(prefix) >= 3, False])
            return mask if mask.any() else None

        gaps, mask = lex_gap_search(3, 4, feasible)
        assert gaps == (3, 1)
        assert mask.tolist() == [True, False]

    def test_false_prunes_like_none(self):
        gaps, result = lex_gap_search(2, 5, lambda prefix: prefix == (4,))
        assert gaps == (4,) and result is True
        assert lex_gap_search(2, 3, lambda prefix: False) == (None, None)

    def test_full_shift_gaps_are_monotone(self, full2, zeros, ones, spike):
        C = OrbitSequence(((zeros, 2), (spike, 1), (ones, 2)))
        for t1 in range(1, 6):
            for t2 in range(1, 6):
                if find_shadow_sft(full2, C, Gap((t1, t2)), 1):
                    assert find_shadow_sft(full2, C, Gap((t1 + 1, t2)), 1)
                    assert find_shadow_sft(full2, C, Gap((t1, t2 + 1)), 1)
