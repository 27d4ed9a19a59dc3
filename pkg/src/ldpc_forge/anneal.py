"""Code annealing: randomized edge-swap hill climbing on (D_stp, M_s).

The target order d starts at 1.  S holds every stopping set of size d.  A
trial draws s from S, a member x_a and one of its edges e_a=(x_a,y_a), then
a variable x_b outside s and one of its edges e_b=(x_b,y_b); the swap
replaces e_a, e_b with (x_a,y_b), (x_b,y_a).  The new graph is kept only when
its (D_stp, M_s) strictly improves on (d, |S|): larger order, or equal order
with strictly fewer sets.  When S empties, d advances.  Degrees never change,
so the ensemble's waterfall behavior is untouched.

The degree-augmentation transform temporarily attaches, to each variable x
of degree >= 3, d_u*(deg(x)-2) auxiliary pairs (one degree-1 variable plus a
degree-2 check wired to x), which makes annealing weight high-degree
variables more and drives up the suppressing weight of the de-augmented
graph.  A lifting-sequence variant keeps the graph fixed and re-draws one
circulant shift per trial instead.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from ._rng import RNG_ALGORITHM, STREAM_ANNEAL, make_rng
from .errors import ContractViolationError, InvalidParameterError
from .graph import TannerGraph
from .lift import LiftingSpec, index_ones, lift
from .stopsets import ErrorFloorProfile, error_floor_profile


@dataclass(frozen=True)
class AnnealConfig:
    """Budgets and seeds for one annealing run.

    Termination: d_target reached (all stopping sets smaller than d_target
    removed), max_trials proposals spent, or time_budget_s exceeded.  Runs
    are deterministic in the seed unless the wall clock is the binding
    limit.  per_d_attempt_cap bounds rejected trials at one order before
    the run advances anyway (recorded as a stall).
    """

    seed: int = 0
    d_start: int = 1
    d_target: int | None = None
    max_trials: int | None = None
    time_budget_s: float | None = None
    per_d_attempt_cap: int = 5000
    enumeration_budget: int = 50_000_000

    def __post_init__(self):
        if self.d_start < 1:
            raise InvalidParameterError("d_start must be >= 1")
        if self.d_target is not None and self.d_target < self.d_start:
            raise InvalidParameterError("d_target must be >= d_start")
        if self.max_trials is not None and self.max_trials < 0:
            raise InvalidParameterError("max_trials must be >= 0")
        if self.per_d_attempt_cap < 0:
            raise InvalidParameterError("per_d_attempt_cap must be >= 0")
        if self.enumeration_budget < 1:
            raise InvalidParameterError("enumeration_budget must be >= 1")
        if self.d_target is None and self.max_trials is None and self.time_budget_s is None:
            raise InvalidParameterError("set at least one of d_target/max_trials/time_budget_s")


@dataclass(frozen=True)
class AnnealReport:
    initial_profile: ErrorFloorProfile
    final_profile: ErrorFloorProfile
    swaps_accepted: int
    swaps_rejected: int
    edges_touched: int
    trajectory: tuple[tuple[int, int], ...]  # (d, |S|) after each acceptance
    stalls: tuple[int, ...]                  # orders abandoned at the attempt cap
    partial: bool                            # stopped by a budget, not by d_target
    enum_budget_hits: int
    rng_algorithm: str = RNG_ALGORITHM

    def to_json_dict(self) -> dict:
        return {
            "initial_profile": self.initial_profile.to_json_dict(),
            "final_profile": self.final_profile.to_json_dict(),
            "swaps_accepted": self.swaps_accepted,
            "swaps_rejected": self.swaps_rejected,
            "edges_touched": self.edges_touched,
            "trajectory": [list(t) for t in self.trajectory],
            "stalls": list(self.stalls),
            "partial": self.partial,
            "enum_budget_hits": self.enum_budget_hits,
            "rng_algorithm": self.rng_algorithm,
        }


def improves(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Strict improvement order on (order, multiplicity) pairs:
    (d1, m1) beats (d2, m2) iff d1 > d2, or d1 == d2 and m1 < m2."""
    return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


def _profile_key(p: ErrorFloorProfile) -> tuple[int, int]:
    d = p.d_stp if p.d_stp is not None else p.exhaustion_cap + 1
    return (d, p.m_s)


class _EdgeState:
    """Mutable CSR adjacency; degrees are fixed so only values change."""

    def __init__(self, g: TannerGraph):
        vp, va, cp, ca = g.csr
        self.vp = vp
        self.va = va.copy()
        self.cp = cp
        self.ca = ca.copy()
        self.n = g.n_vars
        self.m = g.n_checks

    def _replace(self, ptr, adj, node, old, new):
        for i in range(ptr[node], ptr[node + 1]):
            if adj[i] == old:
                adj[i] = new
                return
        raise AssertionError("adjacency entry vanished")  # internal invariant

    def has_edge(self, v, c) -> bool:
        for i in range(self.vp[v], self.vp[v + 1]):
            if self.va[i] == c:
                return True
        return False

    def apply_swap(self, xa, ya, xb, yb):
        """All ids 0-based; replaces (xa,ya),(xb,yb) with (xa,yb),(xb,ya)."""
        self._replace(self.vp, self.va, xa, ya, yb)
        self._replace(self.vp, self.va, xb, yb, ya)
        self._replace(self.cp, self.ca, ya, xa, xb)
        self._replace(self.cp, self.ca, yb, xb, xa)

    def revert_swap(self, xa, ya, xb, yb):
        self.apply_swap(xa, yb, xb, ya)

    def to_graph(self) -> TannerGraph:
        edges = []
        for v in range(self.n):
            for i in range(self.vp[v], self.vp[v + 1]):
                edges.append((v + 1, int(self.va[i]) + 1))
        return TannerGraph(self.n, self.m, tuple(edges))


def _level_sets(state: _EdgeState, d: int, budget: int):
    return kernels.enumerate_raw(state.n, state.m, state.vp, state.va,
                                 state.cp, state.ca, d, budget, 0, 0)


def _count_edges_touched(before: TannerGraph, after: TannerGraph) -> int:
    gone = Counter(before.edges) - Counter(after.edges)
    return sum(gone.values())


def anneal(g: TannerGraph, cfg: AnnealConfig,
           n_core_vars: int | None = None,
           n_core_checks: int | None = None) -> tuple[TannerGraph, AnnealReport]:
    """Run code annealing; returns the rewired graph and a report.

    When core bounds are given (degree-augmented graphs), edges touching
    auxiliary nodes are never swap candidates; a draw that lands on one is a
    rejected attempt, like any other empty choice set.
    """
    n_core = g.n_vars if n_core_vars is None else n_core_vars
    m_core = g.n_checks if n_core_checks is None else n_core_checks
    rng = make_rng(cfg.seed, STREAM_ANNEAL)
    state = _EdgeState(g)
    profile_budget = max(cfg.enumeration_budget * 10, 100_000_000)
    profile_cap = max(cfg.d_target or 0, cfg.d_start) + 4

    deadline = None if cfg.time_budget_s is None else time.monotonic() + cfg.time_budget_s
    trials_left = math.inf if cfg.max_trials is None else cfg.max_trials

    accepted = 0
    rejected = 0
    enum_budget_hits = 0
    trajectory: list[tuple[int, int]] = []
    stalls: list[int] = []
    partial = False

    d = cfg.d_start
    out_of_budget = False
    while True:
        if cfg.d_target is not None and d >= cfg.d_target:
            break
        if d > g.n_vars:
            break
        sets, _, status = _level_sets(state, d, cfg.enumeration_budget)
        if status != kernels.STATUS_COMPLETE:
            enum_budget_hits += 1
            partial = True
            break
        S = [t for t in sets if len(t) == d]
        attempts = 0
        while S:
            if trials_left <= 0 or (deadline is not None and time.monotonic() > deadline):
                out_of_budget = True
                break
            if attempts >= cfg.per_d_attempt_cap:
                stalls.append(d)
                break
            trials_left -= 1
            s = S[int(rng.integers(len(S)))]
            xa = s[int(rng.integers(len(s)))]
            # candidate edges of x_a restricted to the swappable core
            if xa < n_core:
                pool_a = [int(state.va[i]) for i in range(state.vp[xa], state.vp[xa + 1])
                          if state.va[i] < m_core]
            else:
                pool_a = []
            if not pool_a:
                rejected += 1
                attempts += 1
                continue
            ya = pool_a[int(rng.integers(len(pool_a)))]
            in_s = set(s)
            if len(in_s) >= state.n:
                rejected += 1
                attempts += 1
                continue
            xb = int(rng.integers(state.n))
            while xb in in_s:
                xb = int(rng.integers(state.n))
            if xb < n_core:
                pool_b = [int(state.va[i]) for i in range(state.vp[xb], state.vp[xb + 1])
                          if state.va[i] < m_core]
            else:
                pool_b = []
            if not pool_b:
                rejected += 1
                attempts += 1
                continue
            yb = pool_b[int(rng.integers(len(pool_b)))]
            if ya == yb:
                # swapping within one check is the identity; never an improvement
                rejected += 1
                attempts += 1
                continue
            if state.has_edge(xa, yb) or state.has_edge(xb, ya):
                # keep the code inside the simple-graph ensemble: a parallel
                # edge would change the effective degree sequence on the BEC
                rejected += 1
                attempts += 1
                continue
            state.apply_swap(xa, ya, xb, yb)
            new_sets, _, status = kernels.enumerate_raw(
                state.n, state.m, state.vp, state.va, state.cp, state.ca,
                d, cfg.enumeration_budget, d, len(S))
            if status == kernels.STATUS_COMPLETE and len(new_sets) < len(S):
                accepted += 1
                S = new_sets
                trajectory.append((d, len(S)))
            else:
                if status == kernels.STATUS_BUDGET:
                    enum_budget_hits += 1
                state.revert_swap(xa, ya, xb, yb)
                rejected += 1
                attempts += 1
        if out_of_budget:
            partial = True
            break
        d += 1

    final_graph = state.to_graph()
    initial_profile = error_floor_profile(g, profile_cap, profile_budget)
    final_profile = error_floor_profile(final_graph, profile_cap, profile_budget)
    if improves(_profile_key(initial_profile), _profile_key(final_profile)):
        raise AssertionError("annealing must never make the profile worse")
    report = AnnealReport(initial_profile, final_profile, accepted, rejected,
                          _count_edges_touched(g, final_graph),
                          tuple(trajectory), tuple(stalls), partial,
                          enum_budget_hits)
    return final_graph, report


# ---------------------------------------------------------------------------
# Degree augmentation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AugmentedGraph:
    """A graph plus bookkeeping for its auxiliary variable/check pairs."""

    graph: TannerGraph
    aux_pairs: tuple[tuple[int, int, int], ...]  # (x, x_aux, y_aux)
    d_u: int
    n_core_vars: int
    n_core_checks: int


def degree_augment(g: TannerGraph, d_u: int) -> AugmentedGraph:
    """Attach d_u*(deg(x)-2) auxiliary pairs to every variable of degree >= 3.

    Each pair adds one degree-1 variable x_aux and one degree-2 check y_aux
    wired to x and x_aux.  Original edges are untouched.
    """
    if d_u < 1:
        raise InvalidParameterError("d_u must be >= 1")
    edges = list(g.edges)
    aux: list[tuple[int, int, int]] = []
    nv = g.n_vars
    nc = g.n_checks
    for x in range(1, g.n_vars + 1):
        deg = len(g.var_adj[x - 1])
        for _ in range(d_u * max(deg - 2, 0)):
            nv += 1
            nc += 1
            edges.append((x, nc))
            edges.append((nv, nc))
            aux.append((x, nv, nc))
    return AugmentedGraph(TannerGraph(nv, nc, tuple(edges)), tuple(aux),
                          d_u, g.n_vars, g.n_checks)


def remove_augment(ag: AugmentedGraph) -> TannerGraph:
    """Strip the auxiliary pairs, restoring the original node ranges.

    Raises ContractViolationError if any auxiliary wiring was disturbed
    (annealing restricted to core edges never does this).
    """
    g = ag.graph
    adj_check = g.check_adj
    adj_var = g.var_adj
    for x, x_aux, y_aux in ag.aux_pairs:
        if Counter(adj_check[y_aux - 1]) != Counter((x, x_aux)):
            raise ContractViolationError(f"auxiliary check {y_aux} wiring corrupted")
        if tuple(adj_var[x_aux - 1]) != (y_aux,):
            raise ContractViolationError(f"auxiliary variable {x_aux} wiring corrupted")
    core_edges = []
    for v, c in g.edges:
        if v <= ag.n_core_vars and c <= ag.n_core_checks:
            core_edges.append((v, c))
        elif v > ag.n_core_vars and c <= ag.n_core_checks:
            raise ContractViolationError(f"edge ({v},{c}) crosses the core boundary")
    if len(core_edges) + 2 * len(ag.aux_pairs) != len(g.edges):
        raise ContractViolationError("edge accounting does not match the augmentation")
    return TannerGraph(ag.n_core_vars, ag.n_core_checks, tuple(core_edges))


# ---------------------------------------------------------------------------
# Lifting-sequence annealing
# ---------------------------------------------------------------------------

def anneal_lifting_sequence(base: TannerGraph, K: int, shifts: Sequence[int],
                            cfg: AnnealConfig) -> tuple[LiftingSpec, AnnealReport]:
    """Same accept/reject skeleton as edge annealing, but proposals re-draw
    one shift (for an edge incident to the chosen minimum set's projection)
    uniformly from {0..K-1}; evaluation runs on the lifted graph."""
    spec = LiftingSpec(K, tuple(int(x) for x in shifts))
    ones = index_ones(base)
    if len(spec.shifts) != len(ones):
        raise InvalidParameterError("shift sequence length mismatch")
    rng = make_rng(cfg.seed, STREAM_ANNEAL)
    shifts = list(spec.shifts)
    lifted = lift(base, LiftingSpec(K, tuple(shifts)))
    state = _EdgeState(lifted)
    profile_budget = max(cfg.enumeration_budget * 10, 100_000_000)
    profile_cap = max(cfg.d_target or 0, cfg.d_start) + 4

    deadline = None if cfg.time_budget_s is None else time.monotonic() + cfg.time_budget_s
    trials_left = math.inf if cfg.max_trials is None else cfg.max_trials

    accepted = 0
    rejected = 0
    enum_budget_hits = 0
    trajectory: list[tuple[int, int]] = []
    stalls: list[int] = []
    partial = False
    initial_shifts = tuple(shifts)
    initial_lifted = lifted

    d = cfg.d_start
    out_of_budget = False
    while True:
        if cfg.d_target is not None and d >= cfg.d_target:
            break
        if d > state.n:
            break
        sets, _, status = _level_sets(state, d, cfg.enumeration_budget)
        if status != kernels.STATUS_COMPLETE:
            enum_budget_hits += 1
            partial = True
            break
        S = [t for t in sets if len(t) == d]
        attempts = 0
        while S:
            if trials_left <= 0 or (deadline is not None and time.monotonic() > deadline):
                out_of_budget = True
                break
            if attempts >= cfg.per_d_attempt_cap:
                stalls.append(d)
                break
            trials_left -= 1
            s = S[int(rng.integers(len(S)))]
            support = {v // K for v in s}  # 0-based base vars
            candidates = [i for i, (v, _) in enumerate(ones) if (v - 1) in support]
            idx = candidates[int(rng.integers(len(candidates)))]
            new_shift = int(rng.integers(K))
            if new_shift == shifts[idx]:
                rejected += 1
                attempts += 1
                continue
            old_shift = shifts[idx]
            shifts[idx] = new_shift
            lifted = lift(base, LiftingSpec(K, tuple(shifts)))
            state = _EdgeState(lifted)
            new_sets, _, status = kernels.enumerate_raw(
                state.n, state.m, state.vp, state.va, state.cp, state.ca,
                d, cfg.enumeration_budget, d, len(S))
            if status == kernels.STATUS_COMPLETE and len(new_sets) < len(S):
                accepted += 1
                S = new_sets
                trajectory.append((d, len(S)))
            else:
                if status == kernels.STATUS_BUDGET:
                    enum_budget_hits += 1
                shifts[idx] = old_shift
                lifted = lift(base, LiftingSpec(K, tuple(shifts)))
                state = _EdgeState(lifted)
                rejected += 1
                attempts += 1
        if out_of_budget:
            partial = True
            break
        d += 1

    final_spec = LiftingSpec(K, tuple(shifts))
    final_lifted = lift(base, final_spec)
    initial_profile = error_floor_profile(initial_lifted, profile_cap, profile_budget)
    final_profile = error_floor_profile(final_lifted, profile_cap, profile_budget)
    if improves(_profile_key(initial_profile), _profile_key(final_profile)):
        raise AssertionError("annealing must never make the profile worse")
    touched = sum(1 for a, b in zip(initial_shifts, shifts) if a != b)
    report = AnnealReport(initial_profile, final_profile, accepted, rejected,
                          touched, tuple(trajectory), tuple(stalls), partial,
                          enum_budget_hits)
    return final_spec, report
