"""Cyclic lifting of base codes and projection of lifted stopping sets.

A lift replaces each 1 of H by a K x K circulant permutation (shifting the
identity left by the edge's shift value) and each 0 by the zero block.  The
shift sequence is indexed by the canonical ordering of H's 1's: row by row
(check index ascending), column ascending within a row, parallel edges in
insertion order.  Lifted node layout is base-major, layer-minor:
variable (j, a) -> (j-1)*K + a + 1, and likewise for checks.  Edge
(check r, var j, shift l) connects check layer a to variable layer
(a + l) mod K for every a.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from ._rng import STREAM_LIFT, make_rng
from .errors import ContractViolationError, InvalidParameterError
from .graph import TannerGraph
from .stopsets import is_stopping_set


@dataclass(frozen=True)
class LiftingSpec:
    """Lifting factor K and one shift per canonically indexed 1 of H."""

    K: int
    shifts: tuple[int, ...]

    def __post_init__(self):
        if self.K < 1:
            raise InvalidParameterError("K must be >= 1")
        for l in self.shifts:
            if not 0 <= l < self.K:
                raise InvalidParameterError(f"shift {l} out of range 0..{self.K - 1}")

    def to_json_dict(self) -> dict:
        return {"K": self.K, "shifts": list(self.shifts)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "LiftingSpec":
        return cls(int(d["K"]), tuple(int(x) for x in d["shifts"]))


@dataclass(frozen=True)
class Survival:
    """Classification of a lifted stopping set against its base projection."""

    first_order: bool
    pattern: dict[int, int]  # base var -> repetition R(x)


def index_ones(g: TannerGraph) -> list[tuple[int, int]]:
    """Canonical (check, var) order of H's 1's; length equals the edge count.

    Returned as (var, check) pairs in canonical order, parallel edges kept
    in edge-list insertion order.  This ordering is the file-format contract
    for shift sequences.
    """
    order = sorted(range(len(g.edges)), key=lambda i: (g.edges[i][1], g.edges[i][0], i))
    return [g.edges[i] for i in order]


def lift(base: TannerGraph, spec: LiftingSpec) -> TannerGraph:
    """Lifted graph with K*n variables and K*m checks."""
    ones = index_ones(base)
    if len(spec.shifts) != len(ones):
        raise InvalidParameterError(
            f"spec has {len(spec.shifts)} shifts for {len(ones)} edges")
    K = spec.K
    edges = []
    for (v, c), l in zip(ones, spec.shifts):
        vb = (v - 1) * K
        cb = (c - 1) * K
        for a in range(K):
            edges.append((vb + (a + l) % K + 1, cb + a + 1))
    return TannerGraph(base.n_vars * K, base.n_checks * K, tuple(edges))


def sample_lifting_spec(K: int, n_edges: int, seed: int) -> LiftingSpec:
    """I.i.d. uniform shifts; deterministic in the seed."""
    if K < 1:
        raise InvalidParameterError("K must be >= 1")
    rng = make_rng(seed, STREAM_LIFT)
    shifts = tuple(int(x) for x in rng.integers(0, K, size=n_edges))
    return LiftingSpec(K, shifts)


def project(s_lifted: Iterable[int], K: int) -> tuple[Counter, tuple[int, ...], dict[int, int]]:
    """Project lifted variable indices to the base code.

    Returns (multiset of base vars, support as a sorted tuple, repetition map).
    Lifted index i maps to base var (i-1)//K + 1.
    """
    if K < 1:
        raise InvalidParameterError("K must be >= 1")
    multiset = Counter((int(i) - 1) // K + 1 for i in s_lifted)
    support = tuple(sorted(multiset))
    return multiset, support, dict(multiset)


def lifted_stopping_sets_up_to(base: TannerGraph, spec: LiftingSpec,
                               size_cap: int,
                               base_budget: int | None = None,
                               base_sets=None) -> list[tuple[int, ...]]:
    """All stopping sets of the lifted code with size <= size_cap, exactly.

    Every lifted stopping set projects onto a base stopping set of no larger
    size and lives entirely inside the lifted copy of that set's induced
    subgraph.  Enumerating base sets up to the cap and searching each small
    induced lift is therefore exhaustive, and far cheaper than searching the
    full lifted graph.  Returns 1-indexed lifted variable tuples.

    ``base_sets`` short-circuits the base enumeration when the caller has
    already exhausted sizes <= size_cap (certifying many lifts of one base).
    """
    from . import kernels
    from .stopsets import DEFAULT_BUDGET, enumerate_stopping_sets

    if base_budget is None:
        base_budget = DEFAULT_BUDGET
    ones = index_ones(base)
    if len(spec.shifts) != len(ones):
        raise InvalidParameterError("spec does not match the base graph")
    K = spec.K
    if base_sets is None:
        base_sets = enumerate_stopping_sets(base, min(size_cap, base.n_vars), base_budget)
    found: set[tuple[int, ...]] = set()
    for s_b in base_sets:
        members = set(s_b)
        var_id = {v: i for i, v in enumerate(s_b)}
        sub_edges = []
        check_id: dict[int, int] = {}
        for (v, c), l in zip(ones, spec.shifts):
            if v in members:
                cid = check_id.setdefault(c, len(check_id))
                sub_edges.append((var_id[v] + 1, cid + 1, l))
        sub = TannerGraph(len(s_b), len(check_id),
                          tuple((v, c) for v, c, _ in sub_edges))
        sub_order = sorted(range(len(sub_edges)),
                           key=lambda i: (sub_edges[i][1], sub_edges[i][0], i))
        sub_spec = LiftingSpec(K, tuple(sub_edges[i][2] for i in sub_order))
        lifted_sub = lift(sub, sub_spec)
        vp, va, cp, ca = lifted_sub.csr
        sets, _, status = kernels.enumerate_raw(
            lifted_sub.n_vars, lifted_sub.n_checks, vp, va, cp, ca,
            min(size_cap, lifted_sub.n_vars), None, 0, 0)
        assert status == kernels.STATUS_COMPLETE
        for t in sets:
            # translate subgraph copy ids back into full lifted variable ids
            full = tuple(sorted((s_b[i // K] - 1) * K + (i % K) + 1 for i in t))
            found.add(full)
    return sorted(found, key=lambda t: (len(t), t))


def classify_survival(g_base: TannerGraph, spec: LiftingSpec,
                      s_lifted: Iterable[int]) -> Survival:
    """First-order iff the projected multiset has no repeated base variable.

    Raises ContractViolationError when s_lifted is not a stopping set of the
    lifted graph.
    """
    s_lifted = tuple(sorted(set(int(v) for v in s_lifted)))
    lifted = lift(g_base, spec)
    if not is_stopping_set(lifted, s_lifted):
        raise ContractViolationError("set is not a stopping set of the lifted graph")
    _, _, pattern = project(s_lifted, spec.K)
    return Survival(all(r == 1 for r in pattern.values()), pattern)
