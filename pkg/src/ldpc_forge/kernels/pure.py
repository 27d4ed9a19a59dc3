"""Pure-Python kernels for the hot inner loops.

These are the reference implementations: the compiled extension in
``_speedups.pyx`` mirrors them operation for operation (including the RNG
stream), so both backends produce bit-identical results.  The pure versions
are selected automatically when the extension is not built and double as the
baseline in ``benchmarks/bench_kernels.py``.

All graph inputs are CSR-style adjacency over 0-based indices:
``var_ptr[v]:var_ptr[v+1]`` slices ``var_adj`` to the checks of variable
``v`` (entries repeat for parallel edges), and symmetrically for checks.
"""

from __future__ import annotations

import sys
from collections import deque

STATUS_COMPLETE = 0
STATUS_BUDGET = 1
STATUS_ABORT_BELOW = 2
STATUS_COUNT_CAP = 3

_UND, _IN, _OUT = 0, 1, 2
_U64 = (1 << 64) - 1
_BIG = 1 << 62


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _U64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _U64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _U64
    return state, z ^ (z >> 31)


def _u01(state: int) -> tuple[int, float]:
    state, z = _splitmix64(state)
    return state, (z >> 11) * (1.0 / 9007199254740992.0)


class _Search:
    """Depth-first enumeration of stopping sets of size <= d_max.

    Variables carry three states (undecided / in / out).  A check with
    exactly one 'in' edge is violated; a branch dies when a violated check
    has no undecided edge left.  Unit propagation forces the single
    undecided neighbor of a violated check.  The size bound prunes with
    ceil(#violated / max_var_degree) additional variables needed.
    """

    def __init__(self, n_vars, n_checks, var_ptr, var_adj, check_ptr, check_adj,
                 d_max, budget, abort_below, count_cap):
        self.n = int(n_vars)
        self.m = int(n_checks)
        self.vp = [int(x) for x in var_ptr]
        self.va = [int(x) for x in var_adj]
        self.cp = [int(x) for x in check_ptr]
        self.ca = [int(x) for x in check_adj]
        self.d_max = int(d_max)
        self.budget = _BIG if budget is None else int(budget)
        self.abort_below = int(abort_below)
        self.count_cap = _BIG if count_cap is None or count_cap <= 0 else int(count_cap)
        self.state = bytearray(self.n)
        self.cnt_in = [0] * self.m
        self.cnt_und = [self.cp[c + 1] - self.cp[c] for c in range(self.m)]
        self.in_stack: list[int] = []
        self.trail: list[int] = []
        self.viol: set[int] = set()
        self.queue: deque[int] = deque()
        self.queued = bytearray(self.m)
        self.max_deg = max((self.vp[v + 1] - self.vp[v] for v in range(self.n)), default=1)
        if self.max_deg < 1:
            self.max_deg = 1
        self.found: list[tuple[int, ...]] = []
        self.expansions = 0
        self.status = STATUS_COMPLETE

    def set_var(self, v: int, st: int) -> bool:
        self.state[v] = st
        self.trail.append(v)
        if st == _IN:
            self.in_stack.append(v)
        dead = False
        for c in self.va[self.vp[v]:self.vp[v + 1]]:
            self.cnt_und[c] -= 1
            if st == _IN:
                ci = self.cnt_in[c] + 1
                self.cnt_in[c] = ci
                if ci == 1:
                    self.viol.add(c)
                elif ci == 2:
                    self.viol.discard(c)
            if self.cnt_in[c] == 1:
                cu = self.cnt_und[c]
                if cu == 0:
                    dead = True
                elif cu == 1 and not self.queued[c]:
                    self.queued[c] = 1
                    self.queue.append(c)
        return dead

    def unset_var(self, v: int) -> None:
        st = self.state[v]
        self.state[v] = _UND
        if st == _IN:
            self.in_stack.pop()
        for c in self.va[self.vp[v]:self.vp[v + 1]]:
            self.cnt_und[c] += 1
            if st == _IN:
                ci = self.cnt_in[c]
                self.cnt_in[c] = ci - 1
                if ci == 1:
                    self.viol.discard(c)
                elif ci == 2:
                    self.viol.add(c)

    def undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.unset_var(self.trail.pop())

    def drain_queue(self) -> None:
        while self.queue:
            self.queued[self.queue.pop()] = 0

    def propagate(self) -> bool:
        while self.queue:
            c = self.queue.popleft()
            self.queued[c] = 0
            if self.cnt_in[c] == 1 and self.cnt_und[c] == 1:
                forced = -1
                for v in self.ca[self.cp[c]:self.cp[c + 1]]:
                    if self.state[v] == _UND:
                        forced = v
                        break
                if self.set_var(forced, _IN) or len(self.in_stack) > self.d_max:
                    self.drain_queue()
                    return True
        return False

    def pick_branch_var(self) -> int:
        best_v = -1
        best_cnt = -1
        counts: dict[int, int] = {}
        for c in self.viol:
            for v in self.ca[self.cp[c]:self.cp[c + 1]]:
                if self.state[v] == _UND:
                    cnt = counts.get(v, 0) + 1
                    counts[v] = cnt
                    if cnt > best_cnt or (cnt == best_cnt and v < best_v):
                        best_cnt = cnt
                        best_v = v
        return best_v

    def dfs(self) -> bool:
        """Returns True when the search must stop (budget/abort/cap)."""
        self.expansions += 1
        if self.expansions > self.budget:
            self.status = STATUS_BUDGET
            return True
        mark = len(self.trail)
        if self.propagate():
            self.undo_to(mark)
            return False
        k = len(self.in_stack)
        if k > self.d_max:
            self.undo_to(mark)
            return False
        if not self.viol:
            if k >= 1:
                if k < self.abort_below:
                    self.status = STATUS_ABORT_BELOW
                    self.undo_to(mark)
                    return True
                self.found.append(tuple(sorted(self.in_stack)))
                if len(self.found) >= self.count_cap:
                    self.status = STATUS_COUNT_CAP
                    self.undo_to(mark)
                    return True
            if k == self.d_max:
                self.undo_to(mark)
                return False
            for v in range(self.n):
                if self.state[v] != _UND:
                    continue
                m2 = len(self.trail)
                if not self.set_var(v, _IN):
                    if self.dfs():
                        self.undo_to(mark)
                        return True
                self.undo_to(m2)
                # out-state persists for the remaining loop iterations; it
                # cannot kill a check here because no check is violated.
                self.set_var(v, _OUT)
            self.undo_to(mark)
            return False
        need = (len(self.viol) + self.max_deg - 1) // self.max_deg
        if k + need > self.d_max:
            self.undo_to(mark)
            return False
        v = self.pick_branch_var()
        m2 = len(self.trail)
        if not self.set_var(v, _IN):
            if self.dfs():
                self.undo_to(mark)
                return True
        self.undo_to(m2)
        if not self.set_var(v, _OUT):
            if self.dfs():
                self.undo_to(mark)
                return True
        self.undo_to(mark)
        return False


def enumerate_raw(n_vars, n_checks, var_ptr, var_adj, check_ptr, check_adj,
                  d_max, budget=None, abort_below=0, count_cap=0):
    """Enumerate stopping sets of size <= d_max over 0-based variable ids.

    Returns ``(sets, expansions, status)`` with sets sorted by (size, lex).
    ``abort_below=k`` stops the search as soon as a set smaller than k is
    recorded; ``count_cap=c`` stops once c sets have been found (0 = off).
    """
    search = _Search(n_vars, n_checks, var_ptr, var_adj, check_ptr, check_adj,
                     d_max, budget, abort_below, count_cap)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * int(n_vars) + 1000))
    try:
        search.dfs()
    finally:
        sys.setrecursionlimit(old_limit)
    sets = sorted(search.found, key=lambda t: (len(t), t))
    return sets, search.expansions, search.status


def peel_residual(n_vars, n_checks, var_ptr, var_adj, check_ptr, check_adj, erased):
    """Iteratively resolve erased variables; returns the sorted residual.

    A check with exactly one erased edge recovers that edge's variable.
    The fixed point is the maximal stopping set inside ``erased``.
    """
    n = int(n_vars)
    m = int(n_checks)
    flags = bytearray(n)
    for v in erased:
        flags[v] = 1
    cnt = [0] * m
    for v in range(n):
        if flags[v]:
            for c in var_adj[var_ptr[v]:var_ptr[v + 1]]:
                cnt[c] += 1
    stack = [c for c in range(m) if cnt[c] == 1]
    while stack:
        c = stack.pop()
        if cnt[c] != 1:
            continue
        hit = -1
        for v in check_adj[check_ptr[c]:check_ptr[c + 1]]:
            if flags[v]:
                hit = v
                break
        flags[hit] = 0
        for c2 in var_adj[var_ptr[hit]:var_ptr[hit + 1]]:
            cnt[c2] -= 1
            if cnt[c2] == 1:
                stack.append(c2)
    return [v for v in range(n) if flags[v]]


def mc_block(n_vars, n_checks, var_ptr, var_adj, check_ptr, check_adj,
             eps, n_frames, seed):
    """Simulate ``n_frames`` erasure frames; returns (frame_errors, bit_errors).

    Erasures are drawn variable-by-variable from a splitmix64 stream so the
    compiled and pure backends consume randomness identically.
    """
    n = int(n_vars)
    m = int(n_checks)
    state = int(seed) & _U64
    frame_errors = 0
    bit_errors = 0
    vp = var_ptr
    va = var_adj
    cp = check_ptr
    ca = check_adj
    for _ in range(int(n_frames)):
        flags = bytearray(n)
        cnt = [0] * m
        any_erased = False
        for v in range(n):
            state, u = _u01(state)
            if u < eps:
                flags[v] = 1
                any_erased = True
                for c in va[vp[v]:vp[v + 1]]:
                    cnt[c] += 1
        if not any_erased:
            continue
        stack = [c for c in range(m) if cnt[c] == 1]
        while stack:
            c = stack.pop()
            if cnt[c] != 1:
                continue
            hit = -1
            for v in ca[cp[c]:cp[c + 1]]:
                if flags[v]:
                    hit = v
                    break
            flags[hit] = 0
            for c2 in va[vp[hit]:vp[hit + 1]]:
                cnt[c2] -= 1
                if cnt[c2] == 1:
                    stack.append(c2)
        residual = sum(flags)
        if residual:
            frame_errors += 1
            bit_errors += residual
    return frame_errors, bit_errors


def exact_failure_counts(n_vars, n_checks, var_ptr, var_adj, check_ptr, check_adj):
    """Peel every one of the 2^n erasure patterns.

    Returns ``counts`` where counts[w] is the number of weight-w patterns
    whose residual is nonempty.  Caller guards n_vars.
    """
    n = int(n_vars)
    m = int(n_checks)
    counts = [0] * (n + 1)
    vp = var_ptr
    va = var_adj
    cp = check_ptr
    ca = check_adj
    for mask in range(1, 1 << n):
        flags = bytearray(n)
        cnt = [0] * m
        weight = 0
        mm = mask
        v = 0
        while mm:
            if mm & 1:
                flags[v] = 1
                weight += 1
                for c in va[vp[v]:vp[v + 1]]:
                    cnt[c] += 1
            mm >>= 1
            v += 1
        stack = [c for c in range(m) if cnt[c] == 1]
        while stack:
            c = stack.pop()
            if cnt[c] != 1:
                continue
            hit = -1
            for u in ca[cp[c]:cp[c + 1]]:
                if flags[u]:
                    hit = u
                    break
            flags[hit] = 0
            for c2 in va[vp[hit]:vp[hit + 1]]:
                cnt[c2] -= 1
                if cnt[c2] == 1:
                    stack.append(c2)
        if any(flags):
            counts[weight] += 1
    return counts


def count_first_order(n_vars_sub, n_checks_sub, K, edge_var, edge_chk, edge_shift, order):
    """Count layer assignments of a lifted subgraph with no singleton check copy.

    The subgraph has ``n_vars_sub`` variables (0-based, relabeled) and
    ``n_checks_sub`` checks; edge i joins edge_var[i]/edge_chk[i] with cyclic
    shift edge_shift[i].  An assignment places each variable on one of K
    layers; check copy (c, b) collects the edges whose variable layer a and
    shift l satisfy a - l = b (mod K).  Valid assignments have no copy with
    exactly one edge, which is the stopping condition for one-copy-per-
    variable lifted sets.  ``order`` fixes the DFS variable order.
    """
    nv = int(n_vars_sub)
    nc = int(n_checks_sub)
    kk = int(K)
    per_var: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    deg = [0] * nc
    for v, c, l in zip(edge_var, edge_chk, edge_shift):
        per_var[int(v)].append((int(c), int(l)))
        deg[int(c)] += 1
    cnt = [[0] * kk for _ in range(nc)]
    rem = list(deg)
    order = [int(v) for v in order]

    def rec(pos: int) -> int:
        if pos == nv:
            return 1
        v = order[pos]
        total = 0
        for a in range(kk):
            completed = []
            for c, l in per_var[v]:
                b = (a - l) % kk
                cnt[c][b] += 1
                rem[c] -= 1
                if rem[c] == 0:
                    completed.append(c)
            ok = True
            for c in completed:
                row = cnt[c]
                for b in range(kk):
                    if row[b] == 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                total += rec(pos + 1)
            for c, l in per_var[v]:
                b = (a - l) % kk
                cnt[c][b] -= 1
                rem[c] += 1
        return total

    return rec(0)
