"""
Tests for gluing, periodic gluing and specification profiles
"""
from fractions import Fraction

import pytest

from src.classify import YES, is_transitive
from src.errors import BadArgs, NotAnSft, PoolRequired
from src.gluing import (
    EXCEEDS,
    connector_growth,
    decide_gluing_sft,
    gluing_profile,
    length_ladder,
    periodic_gluing_sft,
    periodic_witness,
    pool_family,
    sft_family,
    sft_stabilization,
    specification_profile_sft,
)
from src.shadowing import Gap, OrbitSequence, schedule, verify_shadow
from src.systems import CandidatePool, SymbolicSystem, grid_pool, zoo_names, zoo_spec, zoo_system
from src.utils import to_jsonable


class TestFamilies:
    def test_length_ladder(self):
        assert length_ladder(1) == [1]
        assert length_ladder(4) == [1, 2, 4]
        assert length_ladder(6) == [1, 2, 4, 6]

    def test_sft_family_ranks(self, full2):
        family, P = sft_family(full2, 2, 3)
        assert P == 4
        assert {inst.C.rank for inst in family} == {1, 2, 3}
        assert all(max(inst.C.lengths) <= 2 for inst in family)

    def test_pool_family_is_seeded(self, square):
        pool = grid_pool(square)
        first = pool_family(pool, 2, 2, sample_size=4, seed=5)
        again = pool_family(pool, 2, 2, sample_size=4, seed=5)
        assert [inst.label for inst in first] == [inst.label for inst in again]


class TestDecideGluingSft:
    def test_full_shift_needs_gap_three(self, full2, config):
        profile = decide_gluing_sft(full2, 1, 4, 3, config)
        assert profile.M_required == 3
        assert profile.exact
        assert profile.certificate["verified"] and profile.certificate["tight"]

    @pytest.mark.parametrize("r,expected", [(0, 1), (1, 3), (2, 5)])
    def test_full_shift_bound_grows_with_radius(self, full2, config, r, expected):
        assert decide_gluing_sft(full2, r, 3, 2, config).M_required == expected

    def test_golden_mean_is_finite(self, golden, config):
        profile = decide_gluing_sft(golden, 1, 4, 2, config)
        assert profile.finite
        assert profile.certificate["verified"]

    def test_reducible_graph_exceeds(self, disjoint, config):
        profile = decide_gluing_sft(disjoint, 1, 4, 2, config)
        assert not profile.finite and profile.exact
        assert profile.to_dict()["M_required"] == EXCEEDS
        assert profile.certificate["reason"] == "no path between communicating classes"

    def test_worst_instance_glues_at_reported_gap(self, full2, config):
        profile = decide_gluing_sft(full2, 1, 2, 2, config)
        table = profile.per_instance
        assert table["min_max_gap"].max() == profile.M_required
        assert len(table) == len(sft_family(full2, 2, 2)[0])

    def test_rejects_bad_arguments(self, full2, rotation):
        with pytest.raises(BadArgs):
            decide_gluing_sft(full2, -1, 4, 2)
        with pytest.raises(NotAnSft):
            decide_gluing_sft(rotation, 1, 4, 2)

    def test_threads_do_not_change_the_profile(self, config):
        n = 32
        ring = [[1 if j == (i + 1) % n else 0 for j in range(n)] for i in range(n)]
        ring[0][0] = ring[n // 2][n // 2] = 1
        serial = decide_gluing_sft(SymbolicSystem(ring, label="ring32"), 1, 2, 2, config)
        parallel = decide_gluing_sft(SymbolicSystem(ring, label="ring32"), 1, 2, 2, config, threads=8)
        assert serial.finite
        assert to_jsonable(serial) == to_jsonable(parallel)

    @pytest.mark.parametrize("name", [name for name in zoo_names() if zoo_spec(name).kind == "sft"])
    def test_bound_is_finite_exactly_for_transitive_graphs(self, config, name):
        system = zoo_system(name)
        profile = decide_gluing_sft(system, 1, 2, 2, config)
        assert profile.finite == (is_transitive(system).value == YES)


class TestPeriodicGluing:
    def test_full_shift_periodic_witness(self, full2, config):
        profile = periodic_gluing_sft(full2, 1, 4, 2, config)
        assert profile.finite
        assert profile.certificate["verified"]
        assert profile.certificate["period_matches"]

    def test_periodic_bound_dominates_gluing(self, golden, config):
        periodic = periodic_gluing_sft(golden, 1, 2, 2, config)
        plain = decide_gluing_sft(golden, 1, 2, 2, config)
        assert periodic.M_required >= plain.M_required

    def test_periodic_witness_has_requested_period(self, full2, zeros, ones):
        C = OrbitSequence(((zeros, 2), (ones, 2)))
        z, period = periodic_witness(full2, C, 1, (3,), 3)
        assert period == 4 + 2 + 3
        assert full2.apply(z, period) == z
        assert verify_shadow(full2, C, Gap((3,)), z, Fraction(1, 2))

    def test_every_instance_has_a_witness_of_its_period(self, golden, config):
        profile = periodic_gluing_sft(golden, 1, 2, 2, config)
        family, _ = sft_family(golden, 2, 2, config["gluing"]["base_period"], config["gluing"]["max_base_points"])
        rows = profile.per_instance.to_dict("records")
        assert len(rows) == len(family)
        for inst, row in zip(family, rows):
            gaps, t = tuple(int(g) for g in row["gap"]), int(row["t"])
            z, period = periodic_witness(golden, inst.C, 1, gaps, t)
            assert period == schedule(inst.C, Gap(gaps)).span + t
            assert golden.apply(z, period) == z
            assert verify_shadow(golden, inst.C, Gap(gaps), z, Fraction(1, 2)).accepted

    def test_two_cycle_has_no_periodic_witness_of_odd_period(self, two_cycle):
        p = two_cycle.point((0, 1), (), (0, 1), 0)
        C = OrbitSequence(((p, 1),))
        assert periodic_witness(two_cycle, C, 0, (), 0) is None


class TestSpecification:
    def test_full_shift_uniform_gap(self, full2, config):
        profile = specification_profile_sft(full2, 1, 4, 2, 16, config=config)
        assert profile.M_uniform == 3

    @pytest.mark.parametrize("name", ["full2", "golden"])
    def test_uniform_gap_covers_the_gluing_bound(self, config, name):
        system = zoo_system(name)
        uniform = specification_profile_sft(system, 1, 2, 2, 16, config=config)
        plain = decide_gluing_sft(system, 1, 2, 2, config)
        assert uniform.finite and plain.finite
        assert uniform.M_uniform >= plain.M_required

    def test_period_two_graph_fails(self, two_cycle, config):
        profile = specification_profile_sft(two_cycle, 1, 4, 2, 16, config=config)
        assert not profile.finite
        assert profile.certificate["period"] == 2
        assert profile.to_dict()["M_uniform"] == EXCEEDS

    def test_two_cycle_still_glues(self, two_cycle, config):
        assert decide_gluing_sft(two_cycle, 1, 4, 2, config).finite


class TestGluingProfile:
    def test_odometer_profile_is_bounded(self, odometer5, config):
        profile = gluing_profile(odometer5, Fraction(1, 8), 3, 2, grid_pool(odometer5), 64, config)
        assert profile.finite
        assert profile.M_required <= 8
        assert not profile.exact

    def test_rotation_fails_across_cosets(self, rotation, config):
        profile = gluing_profile(rotation, Fraction(1, 24), 2, 2, grid_pool(rotation), 24, config)
        assert not profile.finite
        assert profile.certificate["failing_instance"]

    def test_grid_needs_pool(self, rotation):
        with pytest.raises(PoolRequired):
            gluing_profile(rotation, Fraction(1, 24), 2, 2, CandidatePool((), "empty"))

    def test_sft_bound_above_search_limit_reads_as_exceeded(self, full2, config):
        profile = gluing_profile(full2, Fraction(1, 4), 3, 2, M_max=4, config=config)
        assert not profile.finite
        assert profile.extra["M_found"] == 5

    @pytest.mark.parametrize("name,finite", [("rotation_12_4", False), ("rotation_7_3", True), ("odometer_10", True)])
    def test_grid_profiles_with_higher_ranks(self, config, name, finite):
        system = zoo_system(name)
        eps = Fraction(1, 8) if name.startswith("odometer") else Fraction(1, 24)
        profile = gluing_profile(system, eps, 2, 3, grid_pool(system), 64, config)
        assert profile.finite == finite
        assert (is_transitive(system).value == YES) == finite
        if name == "odometer_10":
            # 2-adic balls of radius 1/8 are residues mod 8
            assert profile.M_required <= 8


class TestGrowth:
    def test_thue_morse_connectors_keep_growing(self, thue_morse):
        growth = connector_growth(thue_morse, Fraction(1, 4), [4, 8, 16])
        assert growth["strictly_increasing"]
        assert all(bound is not None for bound in growth["bounds"].values())

    def test_golden_bound_settles(self, golden, config):
        result = sft_stabilization(golden, 1, [1, 2, 4, 8], config=config)
        values = [result["bounds"][L] for L in (1, 2, 4, 8)]
        # the family for a larger cap contains the smaller one
        assert values == sorted(values)
        assert result["stable_from"] is not None
        assert result["epsilon"] == Fraction(1, 2)
