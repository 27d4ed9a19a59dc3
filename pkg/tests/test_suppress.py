import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_graph
from ldpc_forge.errors import ContractViolationError, InvalidParameterError
from ldpc_forge.graph import TannerGraph, sample_regular
from ldpc_forge.stopsets import (brute_force_stopping_sets, error_floor_profile,
                                 induced_stats)
from ldpc_forge.suppress import (brute_force_survivals,
                                 count_no_singleton_assignments,
                                 expectation_slope, find_ordered_decoding_set,
                                 first_order_expectation, lifted_ensemble_floor,
                                 suppressing_weight, survival_lower_exponent,
                                 survival_order_exponent, survival_upper_exponent)


def complete_pair_graph(n_vars: int) -> TannerGraph:
    """n variables, one degree-2 check per pair (the 4-var case has W_sup 2)."""
    rows = []
    for a, b in itertools.combinations(range(n_vars), 2):
        row = [0] * n_vars
        row[a] = 1
        row[b] = 1
        rows.append(row)
    return TannerGraph.from_matrix(rows)


class TestSuppressingWeight:
    def test_cycle_is_zero(self, four_cycle):
        st = induced_stats(four_cycle, (1, 2))
        assert suppressing_weight(st) == 0

    def test_k4_gadget_is_two(self, k4_gadget):
        assert suppressing_weight(induced_stats(k4_gadget, (1, 2, 3, 4))) == 2

    def test_always_integral(self):
        # sum of induced check degrees has the parity of the odd-check count,
        # so 0.5*#E + 0.5*#C_odd is an integer for every variable subset
        rng = np.random.default_rng(29)
        for _ in range(50):
            g = random_graph(rng, 8, 5)
            s = [v + 1 for v in range(8) if rng.random() < 0.5] or [1]
            assert suppressing_weight(induced_stats(g, s)).denominator == 1

    def test_negative_for_degree_one_members(self, path_graph):
        # {1,2,3} is a stopping set but x1 and x3 have degree 1: W = 2-3+0
        st = induced_stats(path_graph, (1, 2, 3))
        assert suppressing_weight(st) == Fraction(-1)

    def test_lower_bound_for_min_degree_three(self):
        rng = np.random.default_rng(30)
        checked = 0
        while checked < 20:
            g = sample_regular(int(rng.integers(4, 9)) * 2, 3, 6, seed=int(rng.integers(1e6)))
            sets = brute_force_stopping_sets(g, 6) if g.n_vars <= 24 else []
            for s in sets:
                w = suppressing_weight(induced_stats(g, s))
                assert w >= Fraction(len(s), 2)
                checked += 1


class TestNoSingletonCount:
    def test_pairs_must_share(self):
        for K in (1, 2, 3, 7, 20):
            assert count_no_singleton_assignments(2, K) == K

    def test_three_edges_one_layer(self):
        assert count_no_singleton_assignments(3, 2) == 2
        assert count_no_singleton_assignments(3, 3) == 3

    def test_four_edges_two_layers(self):
        assert count_no_singleton_assignments(4, 2) == 8

    def test_against_direct_enumeration(self):
        for d in range(0, 6):
            for K in range(1, 4):
                direct = sum(
                    1 for assign in itertools.product(range(K), repeat=d)
                    if all(assign.count(layer) != 1 for layer in range(K))
                )
                assert count_no_singleton_assignments(d, K) == direct, (d, K)


class TestFirstOrderExpectation:
    def test_cycle_always_one(self, four_cycle):
        for K in (1, 2, 3, 8, 64):
            assert first_order_expectation(four_cycle, (1, 2), K) == 1

    def test_k1_always_one(self, k4_gadget, path_graph):
        assert first_order_expectation(k4_gadget, (1, 2, 3, 4), 1) == 1
        assert first_order_expectation(path_graph, (1, 2, 3), 1) == 1

    def test_k4_gadget_quarter(self, k4_gadget):
        assert first_order_expectation(k4_gadget, (1, 2, 3, 4), 2) == Fraction(1, 4)

    def test_not_a_stopping_set(self, path_graph):
        with pytest.raises(ContractViolationError):
            first_order_expectation(path_graph, (1, 2), 2)

    def test_matches_oracle_small(self):
        rng = np.random.default_rng(31)
        checked = 0
        while checked < 12:
            g = random_graph(rng, 6, 4)
            sets = [s for s in brute_force_stopping_sets(g, 4)
                    if induced_stats(g, s).num_edges <= 8]
            if not sets:
                continue
            s = sets[int(rng.integers(len(sets)))]
            K = int(rng.integers(2, 4))
            census = brute_force_survivals(g, s, K, first_order_only=True)
            assert census.expected_first_order == first_order_expectation(g, s, K)
            checked += 1


class TestOracle:
    def test_four_cycle_census(self, four_cycle):
        census = brute_force_survivals(four_cycle, (1, 2), 2)
        assert census.expected_first_order == 1
        # the odd-total-shift half of the sequences yields the double-cover
        assert census.expected_by_repetition[(2, 2)] == 1

    def test_k1_single_first_order_survival(self, four_cycle):
        census = brute_force_survivals(four_cycle, (1, 2), 1)
        assert census.expected_first_order == 1
        assert census.expected_by_repetition == {(1, 1): Fraction(1)}

    def test_induced_restriction_matches_full_sequences(self):
        # graph with an edge outside the induced subgraph: restricting the
        # sequence enumeration to induced edges must not change the census
        g = TannerGraph.from_matrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]])
        census_fast = brute_force_survivals(g, (1, 2), 2)
        census_full = brute_force_survivals(g, (1, 2), 2, via_lift=True)
        assert census_fast.expected_by_repetition == census_full.expected_by_repetition
        assert census_full.n_sequences == 2**5 and census_fast.n_sequences == 2**4

    def test_size_guards(self, four_cycle):
        with pytest.raises(InvalidParameterError):
            brute_force_survivals(four_cycle, (1, 2), 5)


class TestOrderExponentAndSlope:
    def test_cycle_exponent_zero(self, four_cycle):
        st = induced_stats(four_cycle, (1, 2))
        assert survival_order_exponent(st) == 0

    def test_k4_exponent(self, k4_gadget):
        st = induced_stats(k4_gadget, (1, 2, 3, 4))
        assert survival_order_exponent(st) == -2

    def test_k4_slope(self, k4_gadget):
        slope = expectation_slope(k4_gadget, (1, 2, 3, 4), [4, 8, 16, 32, 64, 128, 256])
        assert slope == pytest.approx(-2, abs=0.05)

    def test_reported_suppressing_factor(self):
        # W_sup = 5 at K = 32: 32^-5 = 2.98e-8
        assert 32.0**-5 == pytest.approx(2.98e-8, rel=0.01)


class TestEnsembleFloorScaling:
    def test_cycle_base(self, four_cycle):
        profile = error_floor_profile(four_cycle, 3)
        floor = lifted_ensemble_floor(profile, four_cycle, 7, mode="exact")
        assert floor.d_stp_cl == 2
        assert floor.m_s_cl == 1
        assert floor.min_w_sup == 0

    def test_k1_identity(self, k4_gadget):
        profile = error_floor_profile(k4_gadget, 5)
        floor = lifted_ensemble_floor(profile, k4_gadget, 1, mode="exact")
        assert floor.d_stp_cl == profile.d_stp
        assert floor.m_s_cl == profile.m_s

    def test_order_mode(self, k4_gadget):
        profile = error_floor_profile(k4_gadget, 5)
        floor = lifted_ensemble_floor(profile, k4_gadget, 4, mode="order")
        assert floor.min_w_sup == 2
        assert floor.m_s_cl == pytest.approx(profile.m_s * 4.0**-2)


class TestBoundExponents:
    def test_first_order_target_matches_w_sup(self, k4_gadget):
        st = induced_stats(k4_gadget, (1, 2, 3, 4))
        # first-order: V_L = V_B, E_L = E_B, C_L = E_B/2 (all even checks)
        exp = survival_lower_exponent(st, (st.num_vars, st.num_edges // 2, st.num_edges))
        assert exp == -2  # tight: equals -W_sup here

    def test_base_side_value(self, k4_gadget):
        st = induced_stats(k4_gadget, (1, 2, 3, 4))
        assert -(st.num_edges - st.num_vars - st.num_checks) == -2

    def test_cycle_first_order_zero(self, four_cycle):
        st = induced_stats(four_cycle, (1, 2))
        assert survival_lower_exponent(st, (2, 2, 4)) == 0


class TestOrderedDecoding:
    def test_connected_uniform_pattern_needs_one(self, k4_gadget):
        x_od = find_ordered_decoding_set(k4_gadget, (1, 2, 3, 4),
                                         {1: 1, 2: 1, 3: 1, 4: 1})
        assert len(x_od) == 1

    def test_singleton_set(self):
        g = TannerGraph.from_matrix([[2]])  # one var doubly joined to one check
        assert find_ordered_decoding_set(g, (1,), {1: 3}) == (1,)

    def test_cycle_uniform(self, four_cycle):
        assert len(find_ordered_decoding_set(four_cycle, (1, 2), {1: 1, 2: 1})) == 1

    def test_upper_exponent_first_order(self, k4_gadget):
        s = (1, 2, 3, 4)
        pattern = {v: 1 for v in s}
        x_od = find_ordered_decoding_set(k4_gadget, s, pattern)
        exp = survival_upper_exponent(k4_gadget, s, pattern, x_od)
        assert exp == -suppressing_weight(induced_stats(k4_gadget, s))

    def test_upper_exponent_parallel_double(self, four_cycle):
        s = (1, 2)
        pattern = {1: 2, 2: 2}
        x_od = find_ordered_decoding_set(four_cycle, s, pattern)
        assert len(x_od) == 1
        assert survival_upper_exponent(four_cycle, s, pattern, x_od) == 1

    def test_invalid_reveal_set_rejected(self, k4_gadget):
        with pytest.raises(ContractViolationError):
            # empty reveal set cannot start the peeling
            survival_upper_exponent(k4_gadget, (1, 2, 3, 4),
                                    {1: 1, 2: 1, 3: 1, 4: 1}, ())

    def test_greedy_reveal_set_always_certifies(self):
        # any reveal set the greedy returns must support a valid ordered
        # decoding of the remainder (survival_upper_exponent re-checks it)
        rng = np.random.default_rng(33)
        checked = 0
        while checked < 25:
            g = random_graph(rng, 8, 5)
            sets = brute_force_stopping_sets(g, 5)
            if not sets:
                continue
            s = sets[int(rng.integers(len(sets)))]
            pattern = {v: int(rng.integers(1, 4)) for v in s}
            x_od = find_ordered_decoding_set(g, s, pattern)
            exp = survival_upper_exponent(g, s, pattern, x_od)
            w = suppressing_weight(induced_stats(g, s))
            assert exp == sum(pattern[v] - 1 for v in x_od) - w
            checked += 1

    def test_bound_sandwich_double_cover(self, four_cycle):
        """Oracle growth of the double-cover class sits between the two
        bound exponents (lower 0, upper 1) for the 4-cycle."""
        xs, ys = [], []
        for K in (2, 3, 4):
            census = brute_force_survivals(four_cycle, (1, 2), K)
            count = census.expected_by_repetition.get((2, 2), Fraction(0))
            xs.append(np.log(K))
            ys.append(np.log(float(count)))
        slope = float(np.polyfit(xs, ys, 1)[0])
        st = induced_stats(four_cycle, (1, 2))
        lower = survival_lower_exponent(st, (4, 4, 8))
        upper = survival_upper_exponent(four_cycle, (1, 2), {1: 2, 2: 2}, (1,))
        assert lower - 0.35 <= slope <= upper + 0.35
