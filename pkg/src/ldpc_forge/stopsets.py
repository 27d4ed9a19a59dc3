"""Stopping-set verification, exhaustive enumeration, and error-floor profiles.

A stopping set is a nonempty variable subset s such that every check adjacent
to s sees at least two edges into s (counting multiplicity).  The minimum
size D_stp and the count of minimum sets M_s determine the error floor on the
erasure channel: M_s * eps^D_stp is its small-eps asymptote.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (ContractViolationError, EnumerationBudgetError,
                     InvalidParameterError)
from .graph import TannerGraph

DEFAULT_BUDGET = 200_000_000


@dataclass(frozen=True)
class InducedStats:
    """Counts over the subgraph induced by a variable subset."""

    num_vars: int
    num_checks: int
    num_edges: int
    num_odd_checks: int


@dataclass(frozen=True)
class ErrorFloorProfile:
    """(D_stp, M_s) plus the minimum stopping sets themselves.

    ``d_stp`` is None when no stopping set of size <= exhaustion_cap exists;
    ``exhaustion_cap`` is the largest size certified exhaustive.
    """

    d_stp: int | None
    m_s: int
    min_sets: tuple[tuple[int, ...], ...]
    exhaustion_cap: int

    def to_json_dict(self) -> dict:
        return {
            "d_stp": self.d_stp,
            "m_s": self.m_s,
            "exhaustion_cap": self.exhaustion_cap,
            "min_sets": [list(s) for s in self.min_sets],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ErrorFloorProfile":
        return cls(d["d_stp"], d["m_s"],
                   tuple(tuple(s) for s in d["min_sets"]), d["exhaustion_cap"])


def _validate_members(g: TannerGraph, members: Iterable[int]) -> tuple[int, ...]:
    s = tuple(sorted(set(int(v) for v in members)))
    if not s:
        raise InvalidParameterError("variable set is empty")
    if s[0] < 1 or s[-1] > g.n_vars:
        raise InvalidParameterError(f"variable index out of range 1..{g.n_vars}")
    return s


def is_stopping_set(g: TannerGraph, members: Iterable[int]) -> bool:
    """True iff every check adjacent to the set has >= 2 edges into it."""
    s = _validate_members(g, members)
    counts: dict[int, int] = {}
    for v in s:
        for c in g.var_adj[v - 1]:
            counts[c] = counts.get(c, 0) + 1
    return all(cnt != 1 for cnt in counts.values())


def induced_stats(g: TannerGraph, members: Iterable[int]) -> InducedStats:
    """#V, #C, #E, #C_odd of the subgraph induced by the set."""
    s = _validate_members(g, members)
    counts: dict[int, int] = {}
    n_edges = 0
    for v in s:
        deg = len(g.var_adj[v - 1])
        n_edges += deg
        for c in g.var_adj[v - 1]:
            counts[c] = counts.get(c, 0) + 1
    odd = sum(1 for cnt in counts.values() if cnt % 2 == 1)
    return InducedStats(len(s), len(counts), n_edges, odd)


def _run_level(g: TannerGraph, d: int, budget: int | None,
               abort_below: int = 0, count_cap: int = 0):
    vp, va, cp, ca = g.csr
    return kernels.enumerate_raw(g.n_vars, g.n_checks, vp, va, cp, ca,
                                 d, budget, abort_below, count_cap)


def enumerate_stopping_sets(g: TannerGraph, d_max: int,
                            budget: int | None = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All stopping sets of size <= d_max, exhaustively (1-indexed tuples).

    Runs the branch-and-bound level by level so that a budget abort can
    report the largest fully exhausted size.  Raises EnumerationBudgetError
    with partial results instead of silently truncating.
    """
    if d_max < 1:
        raise InvalidParameterError("d_max must be >= 1")
    remaining = None if budget is None else int(budget)
    complete_upto = 0
    last: list[tuple[int, ...]] = []
    for d in range(1, min(d_max, g.n_vars) + 1):
        sets, used, status = _run_level(g, d, remaining)
        if remaining is not None:
            remaining -= used
        if status == kernels.STATUS_BUDGET:
            partial = sorted(set(last) | set(sets), key=lambda t: (len(t), t))
            partial = [tuple(v + 1 for v in t) for t in partial]
            raise EnumerationBudgetError(
                f"enumeration budget exhausted during size-{d} pass",
                partial_sets=partial, complete_upto=complete_upto,
                expansions=(budget - remaining) if budget is not None else 0)
        last = sets
        complete_upto = d
    return [tuple(v + 1 for v in t) for t in last]


def error_floor_profile(g: TannerGraph, d_cap: int,
                        budget: int | None = DEFAULT_BUDGET) -> ErrorFloorProfile:
    """Smallest d <= d_cap with a nonempty stopping-set family, plus all
    sets of that size.  Reports d_stp=None (m_s=0) when none exist."""
    if d_cap < 1:
        raise InvalidParameterError("d_cap must be >= 1")
    remaining = None if budget is None else int(budget)
    for d in range(1, min(d_cap, g.n_vars) + 1):
        sets, used, status = _run_level(g, d, remaining)
        if remaining is not None:
            remaining -= used
        if status == kernels.STATUS_BUDGET:
            raise EnumerationBudgetError(
                f"enumeration budget exhausted during size-{d} pass",
                partial_sets=[tuple(v + 1 for v in t) for t in sets],
                complete_upto=d - 1,
                expansions=(budget - remaining) if budget is not None else 0)
        if sets:
            min_sets = tuple(tuple(v + 1 for v in t) for t in sets)
            return ErrorFloorProfile(d, len(min_sets), min_sets, d)
    return ErrorFloorProfile(None, 0, (), min(d_cap, g.n_vars))


def floor_asymptote(profile, eps: float) -> float:
    """M_s * eps^D_stp, the dominant error-floor term at small eps.

    ``profile`` is an ErrorFloorProfile or a bare (d_stp, m_s) pair; the
    multiplicity may be fractional (ensemble estimates).
    """
    if not 0 < eps < 1:
        raise InvalidParameterError("eps must be in (0, 1)")
    if isinstance(profile, ErrorFloorProfile):
        if profile.d_stp is None:
            raise ContractViolationError("profile has no stopping sets up to its cap")
        d, m = profile.d_stp, profile.m_s
    else:
        d, m = profile
    return float(m) * float(eps) ** int(d)


def brute_force_stopping_sets(g: TannerGraph, d_max: int) -> list[tuple[int, ...]]:
    """Oracle: test all C(n, <=d_max) subsets directly (requires n <= 24)."""
    if g.n_vars > 24:
        raise InvalidParameterError("brute force limited to 24 variables")
    if d_max < 1:
        raise InvalidParameterError("d_max must be >= 1")
    n = g.n_vars
    mult = np.zeros((n, g.n_checks), dtype=np.int64)
    for v, c in g.edges:
        mult[v - 1, c - 1] += 1
    out: list[tuple[int, ...]] = []
    for k in range(1, min(d_max, n) + 1):
        combos = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
        if combos.size == 0:
            continue
        counts = mult[combos].sum(axis=1)
        ok = ~np.any(counts == 1, axis=1)
        out.extend(tuple(int(v) + 1 for v in row) for row in combos[ok])
    return sorted(out, key=lambda t: (len(t), t))


def ensemble_floor_estimate(profiles: Sequence[ErrorFloorProfile]) -> tuple[int, float]:
    """Ensemble (order, multiplicity): the minimum D_stp over the sample and
    the mean count of stopping sets at that order."""
    if not profiles:
        raise InvalidParameterError("no profiles given")
    found = [p.d_stp for p in profiles if p.d_stp is not None]
    if not found:
        raise ContractViolationError("no sampled code has a stopping set within its cap")
    d_c = min(found)
    for p in profiles:
        if p.d_stp is None and p.exhaustion_cap < d_c:
            raise ContractViolationError(
                "a profile cannot certify emptiness at the ensemble order")
    m_c = sum(p.m_s for p in profiles if p.d_stp == d_c) / len(profiles)
    return d_c, m_c
