from collections import Counter

import numpy as np
import pytest

from conftest import random_graph
from ldpc_forge.errors import ContractViolationError, InvalidParameterError
from ldpc_forge.graph import TannerGraph, sample_regular
from ldpc_forge.lift import (LiftingSpec, classify_survival, index_ones, lift,
                             lifted_stopping_sets_up_to, project,
                             sample_lifting_spec)
from ldpc_forge.stopsets import (brute_force_stopping_sets, error_floor_profile,
                                 is_stopping_set)


class TestIndexOnes:
    def test_four_cycle_order(self, four_cycle):
        assert index_ones(four_cycle) == [(1, 1), (2, 1), (1, 2), (2, 2)]

    def test_antidiagonal(self):
        g = TannerGraph.from_matrix([[0, 1], [1, 0]])
        assert index_ones(g) == [(2, 1), (1, 2)]

    def test_length_is_edge_count(self):
        g = sample_regular(18, 3, 6, seed=12)
        assert len(index_ones(g)) == len(g.edges)


class TestLift:
    def test_k1_identity(self, six_ring):
        spec = LiftingSpec(1, (0,) * len(six_ring.edges))
        assert lift(six_ring, spec).same_code(six_ring)

    def test_zero_shifts_give_disjoint_copies(self, four_cycle):
        K = 3
        spec = LiftingSpec(K, (0,) * 4)
        gl = lift(four_cycle, spec)
        assert gl.n_vars == 2 * K and gl.n_checks == 2 * K
        # layer a holds vars {a+1, K+a+1} and checks {a+1, K+a+1}: no edge crosses
        for v, c in gl.edges:
            assert (v - 1) % K == (c - 1) % K

    def test_four_cycle_single_eight_cycle(self, four_cycle):
        gl = lift(four_cycle, LiftingSpec(2, (0, 0, 0, 1)))
        assert set(gl.var_degrees) == {2} and set(gl.check_degrees) == {2}
        profile = error_floor_profile(gl, 4)
        # connected 8-cycle: the only stopping set is everything
        assert (profile.d_stp, profile.m_s) == (4, 1)
        assert profile.min_sets == ((1, 2, 3, 4),)

    def test_degree_scaling(self):
        g = sample_regular(12, 3, 6, seed=13)
        spec = sample_lifting_spec(4, len(g.edges), seed=1)
        gl = lift(g, spec)
        for j in range(g.n_vars):
            for a in range(4):
                assert gl.var_degrees[j * 4 + a] == g.var_degrees[j]

    def test_spec_length_mismatch(self, four_cycle):
        with pytest.raises(InvalidParameterError):
            lift(four_cycle, LiftingSpec(2, (0, 1)))


class TestSampleSpec:
    def test_k1_all_zero(self):
        spec = sample_lifting_spec(1, 10, seed=4)
        assert spec.shifts == (0,) * 10

    def test_uniformity(self):
        # aggregate histogram over many draws: all shifts within 4 sigma
        K, n_e, draws = 8, 25, 4000
        counts = np.zeros(K)
        for i in range(draws):
            spec = sample_lifting_spec(K, n_e, seed=i)
            for s in spec.shifts:
                counts[s] += 1
        total = n_e * draws
        expect = total / K
        sigma = np.sqrt(total * (1 / K) * (1 - 1 / K))
        assert np.all(np.abs(counts - expect) < 4 * sigma)

    def test_seeds_differ(self):
        a = sample_lifting_spec(16, 64, seed=1)
        b = sample_lifting_spec(16, 64, seed=2)
        assert a.shifts != b.shifts


class TestProject:
    def test_repeated_copy(self):
        multiset, support, reps = project([1, 2], 2)
        assert multiset == Counter({1: 2})
        assert support == (1,)
        assert reps == {1: 2}

    def test_distinct_vars(self):
        _, support, reps = project([1, 3], 2)
        assert support == (1, 2)
        assert reps == {1: 1, 2: 1}

    def test_index_formula(self):
        _, support, reps = project([2, 4, 9], 3)
        assert support == (1, 2, 3)
        assert all(r == 1 for r in reps.values())


class TestClassify:
    def test_zero_shift_copy_is_first_order(self, four_cycle):
        spec = LiftingSpec(2, (0, 0, 0, 0))
        surv = classify_survival(four_cycle, spec, [1, 3])  # layer-0 copy of {1,2}
        assert surv.first_order

    def test_eight_cycle_is_high_order(self, four_cycle):
        spec = LiftingSpec(2, (0, 0, 0, 1))
        surv = classify_survival(four_cycle, spec, [1, 2, 3, 4])
        assert not surv.first_order
        assert surv.pattern == {1: 2, 2: 2}

    def test_k1_always_first_order(self, four_cycle):
        spec = LiftingSpec(1, (0, 0, 0, 0))
        assert classify_survival(four_cycle, spec, [1, 2]).first_order

    def test_non_stopping_set_rejected(self, four_cycle):
        spec = LiftingSpec(2, (0, 0, 0, 1))
        with pytest.raises(ContractViolationError):
            classify_survival(four_cycle, spec, [1, 2])


class TestProjectionLemma:
    def test_projections_are_base_stopping_sets(self):
        rng = np.random.default_rng(20)
        checked = 0
        for trial in range(60):
            g = random_graph(rng, int(rng.integers(4, 9)), int(rng.integers(2, 6)))
            K = int(rng.integers(2, 5))
            spec = sample_lifting_spec(K, len(g.edges), seed=trial)
            gl = lift(g, spec)
            for s_l in brute_force_stopping_sets(gl, 5) if gl.n_vars <= 24 else []:
                _, support, _ = project(s_l, K)
                assert is_stopping_set(g, support)
                checked += 1
        assert checked > 50

    def test_lifted_distance_never_smaller(self):
        rng = np.random.default_rng(21)
        for trial in range(25):
            g = random_graph(rng, 6, 4)
            K = int(rng.integers(2, 4))
            spec = sample_lifting_spec(K, len(g.edges), seed=500 + trial)
            gl = lift(g, spec)
            pb = error_floor_profile(g, 6)
            pl = error_floor_profile(gl, 6)
            db = pb.d_stp if pb.d_stp is not None else 7
            dl = pl.d_stp if pl.d_stp is not None else 7
            assert dl >= min(db, 7)

    def test_cyclic_layer_rotation_preserves_stopping_sets(self):
        rng = np.random.default_rng(22)
        g = random_graph(rng, 6, 4)
        K = 3
        spec = sample_lifting_spec(K, len(g.edges), seed=77)
        gl = lift(g, spec)
        sets = brute_force_stopping_sets(gl, 5)
        def rotate(v):
            j, a = (v - 1) // K, (v - 1) % K
            return j * K + (a + 1) % K + 1
        for s in sets:
            assert is_stopping_set(gl, [rotate(v) for v in s])


class TestLiftedSetsViaBase:
    def test_agrees_with_direct_enumeration(self):
        rng = np.random.default_rng(23)
        from ldpc_forge.stopsets import enumerate_stopping_sets
        for trial in range(12):
            g = random_graph(rng, 8, 5)
            K = int(rng.integers(2, 4))
            spec = sample_lifting_spec(K, len(g.edges), seed=900 + trial)
            gl = lift(g, spec)
            assert (lifted_stopping_sets_up_to(g, spec, 6)
                    == enumerate_stopping_sets(gl, 6))
