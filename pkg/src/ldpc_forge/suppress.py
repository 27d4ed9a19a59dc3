"""Suppressing-effect calculus for cyclically lifted ensembles.

For a base stopping set with induced counts (#V, #E, #C_odd), the suppressing
weight is W_sup = 0.5*#E - #V + 0.5*#C_odd.  Under a uniformly random shift
sequence, the expected number of first-order survivals (lifted stopping sets
hitting each base variable exactly once) has an exact product form and scales
as K^(-W_sup).  High-order survivals (repeated variables) are bracketed by an
algebraic lower bound and an ordered-decoding upper bound.  Everything here
is exact integer/rational arithmetic; floats appear only in slope fits.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import ContractViolationError, InvalidParameterError
from .graph import TannerGraph
from .lift import LiftingSpec, index_ones, lift
from .stopsets import ErrorFloorProfile, InducedStats, induced_stats, is_stopping_set

_CENSUS_WORK_LIMIT = 50_000_000


def suppressing_weight(stats: InducedStats) -> Fraction:
    """0.5*#E - #V + 0.5*#C_odd (a half-integer; >= 0 for stopping sets)."""
    return Fraction(stats.num_edges, 2) - stats.num_vars + Fraction(stats.num_odd_checks, 2)


def count_no_singleton_assignments(d: int, K: int) -> int:
    """Number of ways to drop d labeled edges onto K layers with no layer
    receiving exactly one edge (inclusion-exclusion over singleton layers)."""
    if d < 0 or K < 1:
        raise InvalidParameterError("need d >= 0 and K >= 1")
    total = 0
    for t in range(min(K, d) + 1):
        term = math.comb(d, t) * math.comb(K, t) * math.factorial(t) * (K - t) ** (d - t)
        total += -term if t % 2 else term
    return total


def _induced_check_degrees(g: TannerGraph, s: Sequence[int]) -> list[int]:
    counts: dict[int, int] = {}
    for v in s:
        for c in g.var_adj[v - 1]:
            counts[c] = counts.get(c, 0) + 1
    return sorted(counts.values())


def first_order_expectation(g: TannerGraph, s: Iterable[int], K: int) -> Fraction:
    """Exact expected number of first-order survivals of a base stopping set
    under a uniformly random shift sequence:

        K^(#V - #E) * prod over induced checks of
        sum_t (-1)^t C(deg,t) C(K,t) t! (K-t)^(deg-t)
    """
    s = tuple(sorted(set(int(v) for v in s)))
    if K < 1:
        raise InvalidParameterError("K must be >= 1")
    if not is_stopping_set(g, s):
        raise ContractViolationError("input set is not a stopping set of the base graph")
    degs = _induced_check_degrees(g, s)
    n_edges = sum(degs)
    prod = 1
    for d in degs:
        prod *= count_no_singleton_assignments(d, K)
    return Fraction(prod, K ** (n_edges - len(s)))


def survival_order_exponent(stats: InducedStats) -> Fraction:
    """The exponent of the K^(-W_sup) scaling law: -W_sup."""
    return -suppressing_weight(stats)


def expectation_slope(g: TannerGraph, s: Iterable[int], K_grid: Sequence[int]) -> float:
    """Log-log regression slope of the first-order expectation over K_grid."""
    s = tuple(sorted(set(int(v) for v in s)))
    xs = np.log([float(k) for k in K_grid])
    ys = np.log([float(first_order_expectation(g, s, k)) for k in K_grid])
    return float(np.polyfit(xs, ys, 1)[0])


@dataclass(frozen=True)
class EnsembleFloor:
    """Error-floor parameters of the lifted ensemble."""

    d_stp_cl: int
    m_s_cl: float | Fraction
    min_w_sup: Fraction


def lifted_ensemble_floor(base_profile: ErrorFloorProfile, g: TannerGraph,
                          K: int, mode: str = "exact") -> EnsembleFloor:
    """Ensemble floor after lifting by K.

    The lifted order equals the base stopping distance.  In ``order`` mode
    the multiplicity is K^(-min W_sup) * M_s; in ``exact`` mode it is the
    sum of the exact first-order expectations of the minimum sets.
    """
    if base_profile.d_stp is None:
        raise ContractViolationError("base profile is incomplete (no stopping sets)")
    if mode not in ("order", "exact"):
        raise InvalidParameterError("mode must be 'order' or 'exact'")
    weights = [suppressing_weight(induced_stats(g, s)) for s in base_profile.min_sets]
    min_w = min(weights)
    if mode == "order":
        m = base_profile.m_s * float(K) ** float(-min_w)
    else:
        m = sum((first_order_expectation(g, s, K) for s in base_profile.min_sets),
                Fraction(0))
    return EnsembleFloor(base_profile.d_stp, m, min_w)


def survival_lower_exponent(base_stats: InducedStats,
                            target: tuple[int, int, int]) -> int:
    """Algebraic lower-bound exponent for survivals with lifted counts
    (#V_L, #C_L, #E_L): max of -(#E_L-#V_L-#C_L) and -(#E_B-#V_B-#C_B).
    The multiplicative constant is out of scope."""
    v_l, c_l, e_l = target
    lifted = -(e_l - v_l - c_l)
    base = -(base_stats.num_edges - base_stats.num_vars - base_stats.num_checks)
    return max(lifted, base)


def _induced_adjacency(g: TannerGraph, s: Sequence[int]):
    members = set(s)
    checks_of: dict[int, list[int]] = {v: [] for v in s}
    members_of: dict[int, list[int]] = {}
    for v in s:
        for c in g.var_adj[v - 1]:
            checks_of[v].append(c)
            members_of.setdefault(c, [])
    for c, vs in members_of.items():
        for v in g.check_adj[c - 1]:
            if v in members:
                vs.append(v)
    return checks_of, members_of


def find_ordered_decoding_set(g: TannerGraph, s: Iterable[int],
                              pattern: Mapping[int, int]) -> tuple[int, ...]:
    """Greedy reveal set for ordered decoding of a repetition pattern.

    Peels variables in non-increasing repetition order; a variable decodes
    through an induced check once that check has another member, already
    revealed or decoded, of repetition >= its own.  When stuck, the stuck
    variable of maximum repetition (ties to the lowest index) is revealed.
    Worst case the whole set is revealed.
    """
    s = tuple(sorted(set(int(v) for v in s)))
    if set(pattern) != set(s):
        raise InvalidParameterError("pattern must cover exactly the set members")
    checks_of, members_of = _induced_adjacency(g, s)
    revealed: list[int] = []
    known: set[int] = set()
    undone = set(s)
    last_r = math.inf
    while undone:
        pick = None
        for x in sorted(undone, key=lambda v: (-pattern[v], v)):
            if pattern[x] > last_r:
                continue
            decodable = any(
                other != x and other in known and pattern[other] >= pattern[x]
                for y in checks_of[x] for other in members_of[y])
            if decodable:
                pick = x
                break
        if pick is None:
            stuck = sorted(undone, key=lambda v: (-pattern[v], v))[0]
            revealed.append(stuck)
            known.add(stuck)
            undone.remove(stuck)
        else:
            known.add(pick)
            undone.remove(pick)
            last_r = pattern[pick]
    return tuple(sorted(revealed))


def _certify_ordered_decoding(g: TannerGraph, s: Sequence[int],
                              pattern: Mapping[int, int], x_od: Sequence[int]) -> bool:
    checks_of, members_of = _induced_adjacency(g, s)
    known = set(x_od)
    undone = set(s) - known
    last_r = math.inf
    while undone:
        pick = None
        for x in sorted(undone, key=lambda v: (-pattern[v], v)):
            if pattern[x] > last_r:
                continue
            if any(other != x and other in known and pattern[other] >= pattern[x]
                   for y in checks_of[x] for other in members_of[y]):
                pick = x
                break
        if pick is None:
            return False
        known.add(pick)
        undone.remove(pick)
        last_r = pattern[pick]
    return True


def survival_upper_exponent(g: TannerGraph, s: Iterable[int],
                            pattern: Mapping[int, int],
                            x_od: Sequence[int]) -> Fraction:
    """Ordered-decoding upper-bound exponent:
    sum over x_od of (R(x)-1), minus W_sup.  Constant out of scope."""
    s = tuple(sorted(set(int(v) for v in s)))
    x_od = tuple(sorted(set(int(v) for v in x_od)))
    if not set(x_od) <= set(s):
        raise ContractViolationError("x_od must be a subset of the base set")
    if not _certify_ordered_decoding(g, s, pattern, x_od):
        raise ContractViolationError("x_od does not certify ordered decoding")
    w = suppressing_weight(induced_stats(g, s))
    return Fraction(sum(pattern[x] - 1 for x in x_od)) - w


@dataclass(frozen=True)
class SurvivalCensus:
    """Exact per-sequence average survival counts for one base stopping set.

    ``expected_by_repetition`` is keyed by the sorted multiset of repetition
    values; the all-ones key is the first-order entry.
    """

    K: int
    n_sequences: int
    expected_first_order: Fraction
    expected_by_repetition: dict[tuple[int, ...], Fraction]

    def to_json_dict(self) -> dict:
        return {
            "K": self.K,
            "n_sequences": self.n_sequences,
            "expected_first_order": str(self.expected_first_order),
            "expected_by_repetition": {
                ",".join(map(str, k)): str(v)
                for k, v in sorted(self.expected_by_repetition.items())
            },
        }


def _bfs_var_order(n_sub: int, edges: list[tuple[int, int, int]]) -> list[int]:
    """Order subgraph variables so each new one shares a check with the
    prefix where possible; completed checks then prune the layer DFS early."""
    adj: dict[int, set[int]] = {v: set() for v in range(n_sub)}
    by_check: dict[int, list[int]] = {}
    for v, c, _ in edges:
        by_check.setdefault(c, []).append(v)
    for vs in by_check.values():
        for v in vs:
            adj[v].update(u for u in vs if u != v)
    order: list[int] = []
    seen: set[int] = set()
    for root in range(n_sub):
        if root in seen:
            continue
        frontier = [root]
        seen.add(root)
        while frontier:
            v = frontier.pop(0)
            order.append(v)
            for u in sorted(adj[v]):
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
    return order


def brute_force_survivals(g: TannerGraph, s: Iterable[int], K: int,
                          first_order_only: bool = False,
                          via_lift: bool = False) -> SurvivalCensus:
    """Oracle: average survival counts over every shift assignment.

    By default enumerates the K^#E assignments of the induced subgraph's
    edges (survivals depend only on those) and tests the lifted stopping
    condition directly per check copy.  ``via_lift=True`` instead enumerates
    full length-n_e sequences, builds each lifted graph, and tests candidate
    sets with is_stopping_set, the slow path used to validate the
    induced-edge restriction.  Exact rational output.
    """
    s = tuple(sorted(set(int(v) for v in s)))
    if K < 1 or K > 4:
        raise InvalidParameterError("oracle limited to K in 1..4")
    if not is_stopping_set(g, s):
        raise ContractViolationError("input set is not a stopping set of the base graph")

    ones = index_ones(g)
    induced_idx = [i for i, (v, _) in enumerate(ones) if v in s]
    n_e = len(induced_idx)
    if n_e > 12:
        raise InvalidParameterError("oracle limited to induced #E <= 12")
    nv = len(s)
    var_id = {v: i for i, v in enumerate(s)}
    check_ids = sorted({c for i in induced_idx for c in [ones[i][1]]})
    check_id = {c: j for j, c in enumerate(check_ids)}
    nc = len(check_ids)

    if via_lift:
        loop_idx = list(range(len(ones)))
    else:
        loop_idx = induced_idx
    n_loop = len(loop_idx)
    n_mask_combos = (2**K - 1) ** nv if not first_order_only else K**nv
    if K**n_loop * n_mask_combos > _CENSUS_WORK_LIMIT:
        raise InvalidParameterError("oracle instance too large; reduce K, #E, or #V")

    sub_edges = [(var_id[ones[i][0]], check_id[ones[i][1]], 0) for i in induced_idx]
    order = _bfs_var_order(nv, sub_edges)
    ev = [e[0] for e in sub_edges]
    ec = [e[1] for e in sub_edges]
    pos_in_loop = {edge_i: p for p, edge_i in enumerate(loop_idx)}
    induced_pos = [pos_in_loop[i] for i in induced_idx]

    # per-variable layer masks for the high-order sweep
    var_masks = [m for m in range(1, 2**K)]
    popcount = [bin(m).count("1") for m in range(2**K)]

    totals: Counter = Counter()
    shifts = [0] * n_loop
    while True:
        induced_shifts = [shifts[p] for p in induced_pos]
        if via_lift:
            spec = LiftingSpec(K, tuple(shifts))
            lifted = lift(g, spec)
            copies = {v: [(v - 1) * K + a + 1 for a in range(K)] for v in s}
            import itertools as _it
            for masks in _it.product(var_masks, repeat=nv):
                if first_order_only and any(popcount[m] != 1 for m in masks):
                    continue
                s_l = [copies[v][a]
                       for i, v in enumerate(s) for a in range(K) if masks[i] >> a & 1]
                if is_stopping_set(lifted, s_l):
                    key = tuple(sorted(popcount[m] for m in masks))
                    totals[key] += 1
        else:
            fo = kernels.count_first_order(nv, nc, K, ev, ec, induced_shifts, order)
            totals[(1,) * nv] += fo
            if not first_order_only:
                per_check: dict[int, list[tuple[int, int]]] = {}
                for (v0, c0, _), l in zip(sub_edges, induced_shifts):
                    per_check.setdefault(c0, []).append((v0, l))
                import itertools as _it
                for masks in _it.product(var_masks, repeat=nv):
                    if all(popcount[m] == 1 for m in masks):
                        continue  # first-order handled by the kernel
                    ok = True
                    for c0, edge_list in per_check.items():
                        for b in range(K):
                            cnt = 0
                            for v0, l in edge_list:
                                if masks[v0] >> ((b + l) % K) & 1:
                                    cnt += 1
                            if cnt == 1:
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        key = tuple(sorted(popcount[m] for m in masks))
                        totals[key] += 1
        # next mixed-radix shift assignment
        i = n_loop - 1
        while i >= 0:
            shifts[i] += 1
            if shifts[i] < K:
                break
            shifts[i] = 0
            i -= 1
        if i < 0:
            break

    n_seq = K**n_loop
    expected = {key: Fraction(tot, n_seq) for key, tot in sorted(totals.items())}
    fo_key = (1,) * nv
    expected.setdefault(fo_key, Fraction(0))
    return SurvivalCensus(K, n_seq, expected[fo_key], expected)
