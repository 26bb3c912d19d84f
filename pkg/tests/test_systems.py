"""
Tests for system construction, metrics, points and pools
"""
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src import systems
from src.errors import (
    BadArgs,
    InvalidSpec,
    NegativeIterateOnOneSided,
    SystemMismatch,
)
from src.systems import (
    SymbolicSystem,
    SystemSpec,
    build_system,
    excursion_point,
    extend_word,
    grid_pool,
    load_spec,
    periodic_point,
    periodic_pool,
    probe_pool,
    sampled_pool,
    zoo_names,
    zoo_system,
)
from src.systems.graph import (
    PathOracle,
    admissible_words,
    count_words,
    is_irreducible,
    lyndon_cycles,
    path_table,
    period,
    trace_power,
    unreachable_pair,
)
from src.systems.recurrence import returns, separation_time, stay_away_conditions
from src.utils import ordered_map


def brute_words(A, length):
    n = A.shape[0]
    return [w for w in product(range(n), repeat=length) if all(A[w[i], w[i + 1]] for i in range(length - 1))]


points_full2 = st.builds(
    lambda left, core, right, offset: (tuple(left), tuple(core), tuple(right), offset),
    st.lists(st.integers(0, 1), min_size=1, max_size=3),
    st.lists(st.integers(0, 1), max_size=5),
    st.lists(st.integers(0, 1), min_size=1, max_size=3),
    st.integers(-4, 8),
)


class TestBuildSystem:
    def test_full_shift(self):
        system = build_system({"kind": "sft", "parameters": {"transitions": [[1, 1], [1, 1]]}})
        assert system.alphabet_size == 2
        assert system.irreducible and system.primitive

    def test_golden_mean_counts(self, golden):
        assert [count_words(golden.A, n) for n in range(1, 7)] == [2, 3, 5, 8, 13, 21]

    def test_rotation_orbits(self, rotation):
        assert rotation.orbit_segment(0, 4) == [0, 4, 8, 0]

    def test_zero_row_rejected(self):
        with pytest.raises(InvalidSpec) as info:
            build_system({"kind": "sft", "parameters": {"transitions": [[1, 1], [0, 0]]}})
        assert "transitions" in info.value.path

    def test_erasing_substitution_rejected(self):
        with pytest.raises(InvalidSpec):
            build_system({"kind": "substitution_subshift", "parameters": {"rules": {"0": [0, 1], "1": []}}})

    def test_odometer_needs_power_of_two(self):
        with pytest.raises(InvalidSpec):
            build_system({"kind": "circle_grid", "parameters": {"grid_size": 12, "map": "odometer"}})

    def test_unknown_kind_names_field(self):
        with pytest.raises(InvalidSpec) as info:
            SystemSpec.from_dict({"kind": "flow"})
        assert info.value.path == "kind"

    def test_load_spec_reports_json_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"kind": "sft",')
        with pytest.raises(InvalidSpec) as info:
            load_spec(path)
        assert "line" in str(info.value)

    def test_product_of_full_shifts(self):
        spec = {
            "kind": "product",
            "parameters": {"factors": [
                {"kind": "sft", "parameters": {"transitions": [[1, 1], [1, 1]]}},
                {"kind": "sft", "parameters": {"transitions": [[1, 1], [1, 0]]}},
            ]},
        }
        system = build_system(spec)
        assert system.alphabet_size == 4
        assert count_words(system.A, 3) == 8 * 5

    def test_every_zoo_entry_builds(self):
        for name in zoo_names():
            assert zoo_system(name).label == name


class TestApplyAndDistance:
    def test_fixed_point(self, full2, zeros):
        assert full2.apply(zeros, 5) == zeros

    def test_golden_shift_reindexes(self, golden):
        p = periodic_point(golden, (0, 1))
        q = golden.apply(p, 1)
        assert q == periodic_point(golden, (1, 0))
        assert q.symbol(0) == 1

    def test_odometer_wraps(self):
        system = build_system({"kind": "circle_grid", "parameters": {"map": "odometer", "depth": 3}})
        assert system.apply(7, 1) == 0
        assert system.orbit_segment(0, 4) == [0, 1, 2, 3]

    def test_module_level_helpers(self, rotation):
        assert systems.apply_map(rotation, 0, 2) == 8
        assert systems.orbit_segment(rotation, 4, 3) == [4, 8, 0]
        assert systems.distance(rotation, 0, 4) == Fraction(4, 12)

    def test_one_sided_rejects_negative_iterate(self):
        system = SymbolicSystem([[1, 1], [1, 1]], two_sided=False)
        with pytest.raises(NegativeIterateOnOneSided):
            system.apply(periodic_point(system, (0,)), -1)

    def test_distances(self, full2, zeros, ones):
        assert full2.distance(zeros, zeros) == 0
        assert full2.distance(zeros, ones) == 1
        spike2 = excursion_point(full2, (0,), (1,), (0,), 2)
        assert full2.distance(zeros, spike2) == Fraction(1, 4)

    def test_circle_distance(self, rotation):
        assert rotation.distance(1, 11) == Fraction(2, 12)
        assert rotation.distance(0, 6) == Fraction(1, 2)

    def test_two_adic_distance(self, odometer5):
        assert odometer5.distance(0, 1) == Fraction(1, 2)
        assert odometer5.distance(0, 8) == Fraction(1, 16)

    def test_mismatched_points(self, full2):
        other = SymbolicSystem([[1, 1], [1, 1]], two_sided=False)
        with pytest.raises(SystemMismatch):
            full2.distance(periodic_point(full2, (0,)), periodic_point(other, (0,)))

    def test_inadmissible_point_rejected(self, golden):
        with pytest.raises(BadArgs):
            periodic_point(golden, (1,))

    def test_golden_orbit_segment(self, golden):
        p = periodic_point(golden, (0, 0, 1))
        segment = golden.orbit_segment(p, 3)
        assert segment == [periodic_point(golden, (0, 0, 1), k) for k in range(3)]

    @settings(max_examples=60, deadline=None)
    @given(points_full2, points_full2, points_full2)
    def test_metric_axioms(self, a, b, c):
        system = zoo_system("full2")
        x, y, z = (system.point(*p) for p in (a, b, c))
        assert system.distance(x, y) == system.distance(y, x)
        assert (system.distance(x, y) == 0) == (x == y)
        assert system.distance(x, z) <= max(system.distance(x, y), system.distance(y, z))

    @settings(max_examples=40, deadline=None)
    @given(points_full2, st.integers(-6, 6), st.integers(-6, 6))
    def test_iterates_compose(self, a, j, k):
        system = zoo_system("full2")
        p = system.point(*a)
        assert system.apply(system.apply(p, j), k) == system.apply(p, j + k)

    @settings(max_examples=40, deadline=None)
    @given(points_full2, points_full2, st.integers(-5, 5))
    def test_shifted_distance_matches_coordinates(self, a, b, k):
        system = zoo_system("full2")
        x, y = system.point(*a), system.point(*b)
        if x == y:
            return
        index = next(i for i in range(200) if x.symbol(i) != y.symbol(i) or x.symbol(-i) != y.symbol(-i))
        disagreements = [i for i in range(-index - 60, index + 60) if x.symbol(i) != y.symbol(i)]
        expected = Fraction(1, 2 ** min(abs(i - k) for i in disagreements))
        assert system.distance(system.apply(x, k), system.apply(y, k)) == expected


class TestPoints:
    def test_extend_word_places_word(self, golden):
        p = extend_word(golden, (1, 0, 1), 3)
        assert p.word(3, 5) == (1, 0, 1)
        assert golden.is_admissible(p)

    def test_one_sided_extend_needs_origin(self):
        system = SymbolicSystem([[1, 1], [1, 1]], two_sided=False)
        with pytest.raises(BadArgs):
            extend_word(system, (1,), 2)

    def test_json_round_trip(self, full2, spike):
        assert full2.parse_point(full2.point_to_json(spike)) == spike

    def test_grid_points_parse_fractions(self, rotation):
        assert rotation.parse_point("1/3") == 4


class TestGraph:
    @pytest.mark.parametrize("matrix", [[[1, 1], [1, 1]], [[1, 1], [1, 0]], [[0, 1, 0], [0, 0, 1], [1, 1, 0]]])
    def test_words_match_brute_force(self, matrix):
        A = np.array(matrix, dtype=bool)
        for length in range(1, 7):
            words = list(admissible_words(A, length))
            assert words == brute_words(A, length)
            assert count_words(A, length) == len(words)

    def test_path_table_certifies_irreducibility(self, golden):
        for (i, j), path in path_table(golden.A).items():
            assert path[0] == i and path[-1] == j
            assert golden.word_admissible(path)

    def test_unreachable_pair(self, disjoint):
        assert unreachable_pair(disjoint.A) == (0, 1)
        assert not is_irreducible(disjoint.A)

    def test_periods(self, full2, two_cycle):
        assert period(full2.A) == 1
        assert period(two_cycle.A) == 2

    def test_lyndon_cycles_count_least_periods(self, golden):
        # least-period point counts are 1, 2, 3 for the golden mean shift
        assert [len(lyndon_cycles(golden.A, n)) * n for n in (1, 2, 3)] == [1, 2, 3]
        assert [trace_power(golden.A, n) for n in (1, 2, 3)] == [1, 3, 4]

    def test_concurrent_power_queries_agree(self):
        n = 40
        A = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            A[i, (i + 1) % n] = 1
            A[i, (7 * i + 3) % n] = 1
        shared = PathOracle(A)
        ks = [36 - (i % 37) for i in range(200)]
        results = ordered_map(shared.reach, ks, threads=8)
        serial = PathOracle(A)
        for k, R in zip(ks, results):
            assert np.array_equal(R, serial.reach(k))
        assert len(shared._powers) == 37


class TestPools:
    def test_grid_pool_is_every_point(self, rotation):
        assert list(grid_pool(rotation)) == list(range(12))

    def test_periodic_pool_phases(self, full2):
        pool = periodic_pool(full2, 2)
        assert len(pool) == 4

    def test_probe_pool_holds_spikes(self, full2, spike):
        pool = probe_pool(full2, depth=6)
        assert spike in pool.points
        assert excursion_point(full2, (0,), (1,), (0,), -6) in pool.points

    def test_sampling_is_seeded(self, square):
        pool = grid_pool(square)
        first = sampled_pool(pool, 16, seed=3)
        again = sampled_pool(pool, 16, seed=3)
        assert first.points == again.points
        assert list(first.points) == sorted(first.points)
        assert "seed 3" in first.descriptor


class TestRecurrence:
    def test_spike_never_returns(self, full2, spike):
        hit = returns(full2, spike, Fraction(1, 2))
        assert not hit.found and hit.exact

    def test_separation_time_of_far_spike(self, full2, zeros):
        far = excursion_point(full2, (0,), (1,), (0,), 5)
        # the 1 reaches coordinate 1 after four steps
        assert separation_time(full2, zeros, far, Fraction(1, 2)).n == 4

    def test_stay_away_conditions_for_spike_pair(self, full2, spike):
        pair = excursion_point(full2, (0,), (1, 1), (0,), -1)
        conditions = stay_away_conditions(full2, spike, pair, Fraction(1, 2))
        assert conditions["holds"] and conditions["exact"]

    def test_spike_comes_close_to_zero(self, full2, spike, zeros):
        conditions = stay_away_conditions(full2, spike, zeros, Fraction(1, 2))
        assert conditions["inequalities"]["x_to_y"] == 2
        assert not conditions["holds"]

    def test_returns_only_look_forward(self, full2):
        # (010)^inf . 1 0^inf: the backward orbit comes back, the forward one never does
        x = full2.point((0, 1, 0), (1,), (0,), 0)
        assert full2.distance(full2.apply(x, -2), x) == Fraction(1, 4)
        assert not returns(full2, x, Fraction(1, 2)).found

    def test_rotation_points_return(self, rotation):
        assert returns(rotation, 0, Fraction(1, 24)).n == 3
