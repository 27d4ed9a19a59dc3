import math
from collections import Counter

import numpy as np
import pytest

from ldpc_forge.errors import EdgeNotFoundError, InvalidParameterError
from ldpc_forge.graph import (DegreeDistribution, TannerGraph, compute_girth,
                              realize_degrees, sample_irregular, sample_regular,
                              swap_edges)

EX2_DIST = DegreeDistribution({2: 0.4187, 3: 0.1626, 6: 0.4187}, {6: 1.0})


class TestSampleRegular:
    def test_example1_sizes(self):
        g = sample_regular(64, 3, 6, seed=1)
        assert g.n_checks == 32
        assert len(g.edges) == 192
        assert set(g.var_degrees) == {3}
        assert set(g.check_degrees) == {6}
        assert not g.has_parallel_edges

    def test_trivial_matching(self):
        g = sample_regular(2, 1, 1, seed=99)
        assert g.n_checks == 2
        assert len(g.edges) == 2
        assert sorted(c for _, c in g.edges) == [1, 2]

    def test_degree_histogram(self):
        g = sample_regular(6, 2, 3, seed=5)
        assert g.n_checks == 4
        assert len(g.edges) == 12
        assert Counter(g.var_degrees) == {2: 6}
        assert Counter(g.check_degrees) == {3: 4}

    def test_divisibility_error(self):
        with pytest.raises(InvalidParameterError):
            sample_regular(63, 3, 6, seed=0)

    def test_deterministic_in_seed(self):
        a = sample_regular(48, 3, 6, seed=123)
        b = sample_regular(48, 3, 6, seed=123)
        c = sample_regular(48, 3, 6, seed=124)
        assert a.edges == b.edges
        assert a.edges != c.edges


class TestSampleIrregular:
    def test_n72_has_216_edges(self):
        g = sample_irregular(72, EX2_DIST, seed=2)
        assert len(g.edges) == 216
        assert g.n_checks == 36
        assert not g.has_parallel_edges

    def test_n576_rounds_to_1726_edges(self):
        var_degs, check_degs = realize_degrees(576, EX2_DIST)
        assert sum(var_degs) == 1726
        assert sum(check_degs) == 1726
        assert len(check_degs) == 288
        # one check absorbs the mismatch between 288*6 and 1726
        assert sorted(Counter(check_degs).items()) == [(4, 1), (6, 287)]

    def test_all_degree_two(self):
        g = sample_irregular(6, DegreeDistribution({2: 1.0}, {2: 1.0}), seed=3)
        assert set(g.var_degrees) == {2}
        assert set(g.check_degrees) == {2}
        assert len(g.edges) == 12

    def test_deterministic(self):
        a = sample_irregular(72, EX2_DIST, seed=42)
        b = sample_irregular(72, EX2_DIST, seed=42)
        assert a.edges == b.edges


class TestSwapEdges:
    def test_basic_cross(self):
        g = TannerGraph(2, 2, ((1, 1), (2, 2)))
        g2 = swap_edges(g, (1, 1), (2, 2))
        assert Counter(g2.edges) == Counter(((1, 2), (2, 1)))

    def test_involution(self, four_cycle):
        g = sample_regular(64, 3, 6, seed=8)
        e_a, e_b = g.edges[0], g.edges[100]
        g2 = swap_edges(g, e_a, e_b)
        g3 = swap_edges(g2, (e_a[0], e_b[1]), (e_b[0], e_a[1]))
        assert Counter(g3.edges) == Counter(g.edges)

    def test_degrees_preserved(self):
        rng = np.random.default_rng(0)
        g = sample_regular(64, 3, 6, seed=9)
        for _ in range(25):
            i, j = rng.integers(len(g.edges), size=2)
            e_a, e_b = g.edges[int(i)], g.edges[int(j)]
            if e_a[0] == e_b[0]:
                continue
            g2 = swap_edges(g, e_a, e_b)
            assert g2.var_degrees == g.var_degrees
            assert g2.check_degrees == g.check_degrees
            g = g2

    def test_missing_edge(self, four_cycle):
        with pytest.raises(EdgeNotFoundError):
            swap_edges(four_cycle, (1, 1), (2, 3))

    def test_same_variable_rejected(self, four_cycle):
        with pytest.raises(InvalidParameterError):
            swap_edges(four_cycle, (1, 1), (1, 2))


class TestGirth:
    def test_four_cycle(self, four_cycle):
        assert compute_girth(four_cycle) == 2

    def test_tree(self, path_graph):
        assert compute_girth(path_graph) == math.inf

    def test_six_ring(self, six_ring):
        assert compute_girth(six_ring) == 3

    def test_parallel_edge(self):
        g = TannerGraph(1, 1, ((1, 1), (1, 1)))
        assert compute_girth(g) == 1


class TestDegreeDistribution:
    def test_must_sum_to_one(self):
        with pytest.raises(InvalidParameterError):
            DegreeDistribution({2: 0.5, 3: 0.4}, {6: 1.0})

    def test_nonnegative(self):
        with pytest.raises(InvalidParameterError):
            DegreeDistribution({2: 1.5, 3: -0.5}, {6: 1.0})

    def test_min_degree(self):
        with pytest.raises(InvalidParameterError):
            DegreeDistribution({0: 1.0}, {6: 1.0})


class TestTannerGraph:
    def test_edge_bounds_checked(self):
        with pytest.raises(InvalidParameterError):
            TannerGraph(2, 2, ((3, 1),))

    def test_adjacency_consistent_with_edges(self):
        g = sample_regular(12, 2, 4, seed=4)
        rebuilt = sorted((v, c) for v in range(1, g.n_vars + 1)
                         for c in g.var_adj[v - 1])
        assert rebuilt == sorted(g.edges)
        total = sum(g.var_degrees)
        assert total == sum(g.check_degrees) == len(g.edges)

    def test_matrix_roundtrip(self, six_ring):
        assert TannerGraph.from_matrix(six_ring.to_matrix().tolist()).same_code(six_ring)
