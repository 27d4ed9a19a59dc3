"""Sparse bipartite Tanner graphs, random code sampling, and edge rewiring.

Graphs are immutable values: variable and check nodes are 1-indexed, the edge
list is an ordered multiset of (var, check) pairs, and every derived view
(adjacency, degrees, CSR arrays for the kernels) is computed from it.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from ._rng import STREAM_GRAPH, make_rng
from .errors import EdgeNotFoundError, InvalidParameterError, RealizationError

_REPAIR_PASSES = 1000


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite multigraph of ``n_vars`` variable and ``n_checks`` check nodes."""

    n_vars: int
    n_checks: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_vars < 0 or self.n_checks < 0:
            raise InvalidParameterError("node counts must be nonnegative")
        for v, c in self.edges:
            if not (1 <= v <= self.n_vars and 1 <= c <= self.n_checks):
                raise InvalidParameterError(f"edge ({v},{c}) out of range")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "TannerGraph":
        """Build from a dense parity-check matrix; rows are checks, entries
        are edge multiplicities."""
        m = len(rows)
        n = len(rows[0]) if m else 0
        edges = []
        for c, row in enumerate(rows, start=1):
            if len(row) != n:
                raise InvalidParameterError("ragged matrix")
            for v, mult in enumerate(row, start=1):
                edges.extend([(v, c)] * int(mult))
        # var-major order is the canonical edge order for constructed graphs
        edges.sort(key=lambda e: (e[0], e[1]))
        return cls(n, m, tuple(edges))

    def to_matrix(self) -> np.ndarray:
        h = np.zeros((self.n_checks, self.n_vars), dtype=np.int64)
        for v, c in self.edges:
            h[c - 1, v - 1] += 1
        return h

    @cached_property
    def var_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_vars)]
        for v, c in self.edges:
            adj[v - 1].append(c)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def check_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_checks)]
        for v, c in self.edges:
            adj[c - 1].append(v)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def var_degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.var_adj)

    @cached_property
    def check_degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.check_adj)

    @cached_property
    def has_parallel_edges(self) -> bool:
        return any(mult > 1 for mult in Counter(self.edges).values())

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """0-based CSR adjacency (var_ptr, var_adj, check_ptr, check_adj)."""
        vp = np.zeros(self.n_vars + 1, dtype=np.int32)
        cp = np.zeros(self.n_checks + 1, dtype=np.int32)
        for i, a in enumerate(self.var_adj):
            vp[i + 1] = vp[i] + len(a)
        for i, a in enumerate(self.check_adj):
            cp[i + 1] = cp[i] + len(a)
        va = np.fromiter((c - 1 for a in self.var_adj for c in a), dtype=np.int32,
                         count=len(self.edges))
        ca = np.fromiter((v - 1 for a in self.check_adj for v in a), dtype=np.int32,
                         count=len(self.edges))
        return vp, va, cp, ca

    def edge_multiset(self) -> Counter:
        return Counter(self.edges)

    def same_code(self, other: "TannerGraph") -> bool:
        """Equality on (sizes, edge multiset); edge order is irrelevant."""
        return (self.n_vars == other.n_vars and self.n_checks == other.n_checks
                and Counter(self.edges) == Counter(other.edges))


@dataclass(frozen=True)
class DegreeDistribution:
    """Edge-perspective degree distributions: maps degree -> edge fraction."""

    lambda_coeffs: Mapping[int, float]
    rho_coeffs: Mapping[int, float]

    def __post_init__(self):
        for name, coeffs in (("lambda", self.lambda_coeffs), ("rho", self.rho_coeffs)):
            if not coeffs:
                raise InvalidParameterError(f"{name} distribution is empty")
            for deg, frac in coeffs.items():
                if int(deg) < 1:
                    raise InvalidParameterError(f"{name} degree {deg} < 1")
                if frac < 0:
                    raise InvalidParameterError(f"{name} coefficient for degree {deg} negative")
            if abs(sum(coeffs.values()) - 1.0) > 1e-12:
                raise InvalidParameterError(f"{name} coefficients must sum to 1")
        object.__setattr__(self, "lambda_coeffs", dict(sorted(self.lambda_coeffs.items())))
        object.__setattr__(self, "rho_coeffs", dict(sorted(self.rho_coeffs.items())))


def _largest_remainder(total: int, weights: Mapping[int, float]) -> dict[int, int]:
    """Apportion ``total`` items to the keys proportionally to ``weights``."""
    z = sum(weights.values())
    quotas = {deg: total * w / z for deg, w in weights.items()}
    counts = {deg: int(math.floor(q)) for deg, q in quotas.items()}
    short = total - sum(counts.values())
    # ties broken toward the smaller degree for determinism
    order = sorted(quotas, key=lambda d: (-(quotas[d] - counts[d]), d))
    for deg in order[:short]:
        counts[deg] += 1
    return {deg: cnt for deg, cnt in counts.items() if cnt > 0}


def _match_sockets(var_degrees: Sequence[int], check_degrees: Sequence[int],
                   rng: np.random.Generator) -> tuple[tuple[int, int], ...]:
    """Configuration-model matching with local repair of parallel edges."""
    n_edges = sum(var_degrees)
    if n_edges != sum(check_degrees):
        raise RealizationError("socket counts differ between sides")
    var_sockets = np.repeat(np.arange(1, len(var_degrees) + 1), var_degrees)
    check_sockets = np.repeat(np.arange(1, len(check_degrees) + 1), check_degrees)
    check_sockets = rng.permutation(check_sockets)
    for _ in range(_REPAIR_PASSES):
        seen: dict[tuple[int, int], int] = {}
        dup_positions = []
        for i in range(n_edges):
            pair = (int(var_sockets[i]), int(check_sockets[i]))
            if pair in seen:
                dup_positions.append(i)
            else:
                seen[pair] = i
        if not dup_positions:
            break
        # re-draw the offending pairings by swapping with random sockets
        for i in dup_positions:
            j = int(rng.integers(n_edges))
            check_sockets[i], check_sockets[j] = check_sockets[j], check_sockets[i]
    else:
        raise RealizationError(
            f"could not remove parallel edges after {_REPAIR_PASSES} repair passes")
    return tuple(sorted(zip(var_sockets.tolist(), check_sockets.tolist())))


def sample_regular(n: int, dv: int, dc: int, seed: int) -> TannerGraph:
    """Random simple (dv, dc)-regular code with n variables.

    Requires n*dv divisible by dc; deterministic in the seed.
    """
    if dv < 1 or dc < 1:
        raise InvalidParameterError("degrees must be >= 1")
    if (n * dv) % dc != 0:
        raise InvalidParameterError(f"n*dv = {n * dv} not divisible by dc = {dc}")
    m = (n * dv) // dc
    rng = make_rng(seed, STREAM_GRAPH)
    edges = _match_sockets([dv] * n, [dc] * m, rng)
    return TannerGraph(n, m, edges)


def realize_degrees(n: int, dist: DegreeDistribution) -> tuple[list[int], list[int]]:
    """Node-degree realization for an irregular ensemble.

    Variable-side counts come from largest-remainder rounding of
    n * (lambda_i / i) / sum_j (lambda_j / j); the check side is sized the
    same way from rho and then one check's degree absorbs the remaining
    edge-count mismatch.
    """
    var_counts = _largest_remainder(n, {d: f / d for d, f in dist.lambda_coeffs.items()})
    var_degrees: list[int] = []
    for deg in sorted(var_counts):
        var_degrees.extend([deg] * var_counts[deg])
    n_edges = sum(var_degrees)

    z_rho = sum(f / d for d, f in dist.rho_coeffs.items())
    m = int(math.floor(n_edges * z_rho + 0.5))
    if m < 1:
        raise RealizationError("check side rounds to zero nodes")
    check_counts = _largest_remainder(m, {d: f / d for d, f in dist.rho_coeffs.items()})
    check_degrees = []
    for deg in sorted(check_counts):
        check_degrees.extend([deg] * check_counts[deg])
    delta = sum(check_degrees) - n_edges
    adjusted = check_degrees[-1] - delta
    if adjusted < 1:
        raise RealizationError(
            f"cannot equalize edge counts: adjusting one check to degree {adjusted}")
    check_degrees[-1] = adjusted
    return var_degrees, check_degrees


def sample_irregular(n: int, dist: DegreeDistribution, seed: int) -> TannerGraph:
    """Random simple code from the irregular ensemble (lambda, rho)."""
    var_degrees, check_degrees = realize_degrees(n, dist)
    rng = make_rng(seed, STREAM_GRAPH)
    edges = _match_sockets(var_degrees, check_degrees, rng)
    return TannerGraph(n, len(check_degrees), edges)


def swap_edges(g: TannerGraph, e_a: tuple[int, int], e_b: tuple[int, int]) -> TannerGraph:
    """Remove e_a=(x_a,y_a) and e_b=(x_b,y_b); add (x_a,y_b) and (x_b,y_a).

    Node degrees are preserved exactly.  The replacement edges take the
    removed edges' positions, so repeated swaps keep a stable edge order.
    """
    (xa, ya), (xb, yb) = e_a, e_b
    if xa == xb:
        raise InvalidParameterError("swap endpoints must be distinct variables")
    edges = list(g.edges)
    try:
        ia = edges.index((xa, ya))
    except ValueError:
        raise EdgeNotFoundError(f"edge {e_a} not in graph") from None
    try:
        ib = edges.index((xb, yb))
    except ValueError:
        raise EdgeNotFoundError(f"edge {e_b} not in graph") from None
    edges[ia] = (xa, yb)
    edges[ib] = (xb, ya)
    return TannerGraph(g.n_vars, g.n_checks, tuple(edges))


def compute_girth(g: TannerGraph) -> int | float:
    """Length of the shortest cycle counted in variable nodes.

    Bipartite cycles have an even number of edges; the returned value is
    (edge length)/2.  A double edge counts as a length-1 cycle.  Forests
    give math.inf.
    """
    n = g.n_vars
    m = g.n_checks
    # unified node ids: vars 0..n-1, checks n..n+m-1; edges get distinct ids
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n + m)]
    for eid, (v, c) in enumerate(g.edges):
        adj[v - 1].append((n + c - 1, eid))
        adj[n + c - 1].append((v - 1, eid))
    best = math.inf
    for root in range(n):
        dist = [-1] * (n + m)
        parent_edge = [-1] * (n + m)
        dist[root] = 0
        frontier = [root]
        while frontier and 2 * dist[frontier[0]] < best:
            nxt = []
            for w in frontier:
                for u, eid in adj[w]:
                    if eid == parent_edge[w]:
                        continue
                    if dist[u] < 0:
                        dist[u] = dist[w] + 1
                        parent_edge[u] = eid
                        nxt.append(u)
                    else:
                        cyc = dist[w] + dist[u] + 1
                        if cyc < best:
                            best = cyc
            frontier = nxt
    return best // 2 if best is not math.inf else math.inf
