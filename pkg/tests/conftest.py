import itertools

import numpy as np
import pytest

from ldpc_forge.graph import TannerGraph


@pytest.fixture
def four_cycle():
    """Two variables, two checks, H = [[1,1],[1,1]]."""
    return TannerGraph.from_matrix([[1, 1], [1, 1]])


@pytest.fixture
def path_graph():
    """H = [[1,1,0],[0,1,1]]: x2 sits on both checks."""
    return TannerGraph.from_matrix([[1, 1, 0], [0, 1, 1]])


@pytest.fixture
def six_ring():
    """3 variables and 3 checks in a ring (one 6-edge cycle)."""
    return TannerGraph.from_matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])


@pytest.fixture
def k4_gadget():
    """4 variables of degree 3; 6 checks joining each pair once."""
    rows = []
    for a, b in itertools.combinations(range(4), 2):
        row = [0, 0, 0, 0]
        row[a] = 1
        row[b] = 1
        rows.append(row)
    return TannerGraph.from_matrix(rows)


def random_graph(rng: np.random.Generator, n_vars: int, n_checks: int,
                 density: float = 0.35, min_check_deg: int = 0) -> TannerGraph:
    """Small random bipartite graph for oracle comparisons (simple edges)."""
    while True:
        h = (rng.random((n_checks, n_vars)) < density).astype(int)
        # every variable needs at least one edge for a sensible code
        for v in range(n_vars):
            if h[:, v].sum() == 0:
                h[int(rng.integers(n_checks)), v] = 1
        if min_check_deg and any(h[c].sum() < min_check_deg for c in range(n_checks)):
            continue
        return TannerGraph.from_matrix(h.tolist())
