# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: stopping-set search, peeling decoder, and survival counts.

Mirrors ``pure.py`` exactly, including the splitmix64 stream, so results are
bit-identical across backends.
"""

from libc.stdlib cimport malloc, free, realloc
from libc.string cimport memset
from libc.stdint cimport int32_t, uint64_t, int64_t

STATUS_COMPLETE = 0
STATUS_BUDGET = 1
STATUS_ABORT_BELOW = 2
STATUS_COUNT_CAP = 3

cdef enum:
    ST_COMPLETE = 0
    ST_BUDGET = 1
    ST_ABORT_BELOW = 2
    ST_COUNT_CAP = 3

cdef enum:
    UND = 0
    SIN = 1
    SOUT = 2

DEF BIG = 4611686018427387904  # 1 << 62


cdef struct Search:
    int n, m
    const int32_t *vp
    const int32_t *va
    const int32_t *cp
    const int32_t *ca
    signed char *state
    int32_t *cnt_in
    int32_t *cnt_und
    int32_t *in_stack
    int in_top
    int32_t *trail
    int trail_top
    int32_t *viol_list
    int32_t *viol_pos
    int viol_top
    int32_t *queue
    unsigned char *queued
    int q_head, q_tail, q_cap
    int32_t *scratch
    int32_t *touched
    int d_max
    int abort_below
    int64_t count_cap
    int64_t budget
    int64_t expansions
    int status
    int max_deg
    int32_t *res_data
    int64_t res_data_top, res_data_cap
    int64_t res_cnt


cdef inline void viol_add(Search *s, int c) noexcept:
    if s.viol_pos[c] < 0:
        s.viol_pos[c] = s.viol_top
        s.viol_list[s.viol_top] = c
        s.viol_top += 1


cdef inline void viol_remove(Search *s, int c) noexcept:
    cdef int pos = s.viol_pos[c]
    cdef int last
    if pos >= 0:
        last = s.viol_top - 1
        if pos != last:
            s.viol_list[pos] = s.viol_list[last]
            s.viol_pos[s.viol_list[pos]] = pos
        s.viol_top = last
        s.viol_pos[c] = -1


cdef inline void queue_push(Search *s, int c) noexcept:
    if not s.queued[c]:
        s.queued[c] = 1
        s.queue[s.q_tail] = c
        s.q_tail += 1
        if s.q_tail == s.q_cap:
            s.q_tail = 0


cdef inline void queue_drain(Search *s) noexcept:
    cdef int c
    while s.q_head != s.q_tail:
        c = s.queue[s.q_head]
        s.q_head += 1
        if s.q_head == s.q_cap:
            s.q_head = 0
        s.queued[c] = 0


cdef int set_var(Search *s, int v, int st) noexcept:
    """Returns 1 when some check becomes dead (in-count 1, no undecided)."""
    cdef int dead = 0
    cdef int i, c, ci, cu
    s.state[v] = <signed char> st
    s.trail[s.trail_top] = v
    s.trail_top += 1
    if st == SIN:
        s.in_stack[s.in_top] = v
        s.in_top += 1
    for i in range(s.vp[v], s.vp[v + 1]):
        c = s.va[i]
        s.cnt_und[c] -= 1
        if st == SIN:
            ci = s.cnt_in[c] + 1
            s.cnt_in[c] = ci
            if ci == 1:
                viol_add(s, c)
            elif ci == 2:
                viol_remove(s, c)
        if s.cnt_in[c] == 1:
            cu = s.cnt_und[c]
            if cu == 0:
                dead = 1
            elif cu == 1:
                queue_push(s, c)
    return dead


cdef void unset_var(Search *s, int v) noexcept:
    cdef int st = s.state[v]
    cdef int i, c, ci
    s.state[v] = UND
    if st == SIN:
        s.in_top -= 1
    for i in range(s.vp[v], s.vp[v + 1]):
        c = s.va[i]
        s.cnt_und[c] += 1
        if st == SIN:
            ci = s.cnt_in[c]
            s.cnt_in[c] = ci - 1
            if ci == 1:
                viol_remove(s, c)
            elif ci == 2:
                viol_add(s, c)


cdef inline void undo_to(Search *s, int mark) noexcept:
    while s.trail_top > mark:
        s.trail_top -= 1
        unset_var(s, s.trail[s.trail_top])


cdef int propagate(Search *s) noexcept:
    cdef int c, i, forced
    while s.q_head != s.q_tail:
        c = s.queue[s.q_head]
        s.q_head += 1
        if s.q_head == s.q_cap:
            s.q_head = 0
        s.queued[c] = 0
        if s.cnt_in[c] == 1 and s.cnt_und[c] == 1:
            forced = -1
            for i in range(s.cp[c], s.cp[c + 1]):
                if s.state[s.ca[i]] == UND:
                    forced = s.ca[i]
                    break
            if set_var(s, forced, SIN) or s.in_top > s.d_max:
                queue_drain(s)
                return 1
    return 0


cdef int pick_branch_var(Search *s) noexcept:
    cdef int best_v = -1
    cdef int best_cnt = -1
    cdef int n_touched = 0
    cdef int k, c, i, v, cnt
    for k in range(s.viol_top):
        c = s.viol_list[k]
        for i in range(s.cp[c], s.cp[c + 1]):
            v = s.ca[i]
            if s.state[v] == UND:
                if s.scratch[v] == 0:
                    s.touched[n_touched] = v
                    n_touched += 1
                cnt = s.scratch[v] + 1
                s.scratch[v] = cnt
                if cnt > best_cnt or (cnt == best_cnt and v < best_v):
                    best_cnt = cnt
                    best_v = v
    for k in range(n_touched):
        s.scratch[s.touched[k]] = 0
    return best_v


cdef int record(Search *s) except -1:
    """Insertion-sorts the current in-set into the result buffer."""
    cdef int k = s.in_top
    cdef int64_t base = s.res_data_top
    cdef int i, j
    cdef int32_t x
    cdef int32_t *nd
    if s.res_data_top + k + 1 > s.res_data_cap:
        while s.res_data_cap < s.res_data_top + k + 1:
            s.res_data_cap *= 2
        nd = <int32_t *> realloc(s.res_data, s.res_data_cap * sizeof(int32_t))
        if nd == NULL:
            raise MemoryError()
        s.res_data = nd
    s.res_data[base] = k
    for i in range(k):
        x = s.in_stack[i]
        j = i
        while j > 0 and s.res_data[base + j] > x:
            s.res_data[base + 1 + j] = s.res_data[base + j]
            j -= 1
        s.res_data[base + 1 + j] = x
    s.res_data_top += k + 1
    s.res_cnt += 1
    return 0


cdef int dfs(Search *s) except -1:
    """Returns 1 when the search must stop (budget/abort/cap), else 0."""
    s.expansions += 1
    if s.expansions > s.budget:
        s.status = ST_BUDGET
        return 1
    cdef int mark = s.trail_top
    cdef int m2, v, k, need
    if propagate(s):
        undo_to(s, mark)
        return 0
    k = s.in_top
    if k > s.d_max:
        undo_to(s, mark)
        return 0
    if s.viol_top == 0:
        if k >= 1:
            if k < s.abort_below:
                s.status = ST_ABORT_BELOW
                undo_to(s, mark)
                return 1
            record(s)
            if s.res_cnt >= s.count_cap:
                s.status = ST_COUNT_CAP
                undo_to(s, mark)
                return 1
        if k == s.d_max:
            undo_to(s, mark)
            return 0
        for v in range(s.n):
            if s.state[v] != UND:
                continue
            m2 = s.trail_top
            if not set_var(s, v, SIN):
                if dfs(s):
                    undo_to(s, mark)
                    return 1
            undo_to(s, m2)
            set_var(s, v, SOUT)
        undo_to(s, mark)
        return 0
    need = (s.viol_top + s.max_deg - 1) / s.max_deg
    if k + need > s.d_max:
        undo_to(s, mark)
        return 0
    v = pick_branch_var(s)
    m2 = s.trail_top
    if not set_var(s, v, SIN):
        if dfs(s):
            undo_to(s, mark)
            return 1
    undo_to(s, m2)
    if not set_var(s, v, SOUT):
        if dfs(s):
            undo_to(s, mark)
            return 1
    undo_to(s, mark)
    return 0


def enumerate_raw(int n_vars, int n_checks,
                  const int32_t[::1] var_ptr, const int32_t[::1] var_adj,
                  const int32_t[::1] check_ptr, const int32_t[::1] check_adj,
                  int d_max, budget=None, int abort_below=0, count_cap=0):
    """Compiled counterpart of ``pure.enumerate_raw`` (same contract)."""
    cdef Search s
    cdef int v
    cdef int64_t i, pos
    memset(&s, 0, sizeof(Search))
    s.n = n_vars
    s.m = n_checks
    s.vp = &var_ptr[0] if var_ptr.shape[0] > 0 else NULL
    s.va = &var_adj[0] if var_adj.shape[0] > 0 else NULL
    s.cp = &check_ptr[0] if check_ptr.shape[0] > 0 else NULL
    s.ca = &check_adj[0] if check_adj.shape[0] > 0 else NULL
    s.d_max = d_max
    s.budget = BIG if budget is None else <int64_t> budget
    s.abort_below = abort_below
    s.count_cap = BIG if (count_cap is None or count_cap <= 0) else <int64_t> count_cap
    s.status = ST_COMPLETE
    s.max_deg = 1
    for v in range(n_vars):
        if var_ptr[v + 1] - var_ptr[v] > s.max_deg:
            s.max_deg = var_ptr[v + 1] - var_ptr[v]
    s.q_cap = n_checks + 1
    s.state = <signed char *> malloc(max(n_vars, 1) * sizeof(signed char))
    s.cnt_in = <int32_t *> malloc(max(n_checks, 1) * sizeof(int32_t))
    s.cnt_und = <int32_t *> malloc(max(n_checks, 1) * sizeof(int32_t))
    s.in_stack = <int32_t *> malloc(max(n_vars, 1) * sizeof(int32_t))
    s.trail = <int32_t *> malloc(max(n_vars, 1) * sizeof(int32_t))
    s.viol_list = <int32_t *> malloc(max(n_checks, 1) * sizeof(int32_t))
    s.viol_pos = <int32_t *> malloc(max(n_checks, 1) * sizeof(int32_t))
    s.queue = <int32_t *> malloc(s.q_cap * sizeof(int32_t))
    s.queued = <unsigned char *> malloc(max(n_checks, 1) * sizeof(unsigned char))
    s.scratch = <int32_t *> malloc(max(n_vars, 1) * sizeof(int32_t))
    s.touched = <int32_t *> malloc(max(n_vars, 1) * sizeof(int32_t))
    s.res_data_cap = 1024
    s.res_data = <int32_t *> malloc(s.res_data_cap * sizeof(int32_t))
    if (s.state == NULL or s.cnt_in == NULL or s.cnt_und == NULL or
            s.in_stack == NULL or s.trail == NULL or s.viol_list == NULL or
            s.viol_pos == NULL or s.queue == NULL or s.queued == NULL or
            s.scratch == NULL or s.touched == NULL or s.res_data == NULL):
        _free_search(&s)
        raise MemoryError()
    memset(s.state, 0, n_vars * sizeof(signed char))
    memset(s.cnt_in, 0, n_checks * sizeof(int32_t))
    memset(s.queued, 0, n_checks * sizeof(unsigned char))
    memset(s.scratch, 0, n_vars * sizeof(int32_t))
    for v in range(n_checks):
        s.cnt_und[v] = check_ptr[v + 1] - check_ptr[v]
        s.viol_pos[v] = -1
    try:
        dfs(&s)
        sets = []
        pos = 0
        for i in range(s.res_cnt):
            k = s.res_data[pos]
            sets.append(tuple([int(s.res_data[pos + 1 + j]) for j in range(k)]))
            pos += k + 1
        sets.sort(key=_size_lex)
        return sets, int(s.expansions), int(s.status)
    finally:
        _free_search(&s)


def _size_lex(t):
    return (len(t), t)


cdef void _free_search(Search *s) noexcept:
    free(s.state)
    free(s.cnt_in)
    free(s.cnt_und)
    free(s.in_stack)
    free(s.trail)
    free(s.viol_list)
    free(s.viol_pos)
    free(s.queue)
    free(s.queued)
    free(s.scratch)
    free(s.touched)
    free(s.res_data)


# --------------------------------------------------------------------------
# Peeling decoder and Monte Carlo
# --------------------------------------------------------------------------

cdef inline uint64_t sm64_next(uint64_t *state) noexcept:
    state[0] = state[0] + <uint64_t> 0x9E3779B97F4A7C15
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t> 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t> 0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline double sm64_u01(uint64_t *state) noexcept:
    return <double> (sm64_next(state) >> 11) * (1.0 / 9007199254740992.0)


cdef int _peel(int n, int m,
               const int32_t *vp, const int32_t *va,
               const int32_t *cp, const int32_t *ca,
               unsigned char *flags, int32_t *cnt, int32_t *stack) noexcept:
    """In-place peel; returns the residual size. cnt must hold erased-edge
    counts per check on entry; stack needs room for edges + checks."""
    cdef int top = 0
    cdef int c, i, hit, c2
    for c in range(m):
        if cnt[c] == 1:
            stack[top] = c
            top += 1
    while top > 0:
        top -= 1
        c = stack[top]
        if cnt[c] != 1:
            continue
        hit = -1
        for i in range(cp[c], cp[c + 1]):
            if flags[ca[i]]:
                hit = ca[i]
                break
        flags[hit] = 0
        for i in range(vp[hit], vp[hit + 1]):
            c2 = va[i]
            cnt[c2] -= 1
            if cnt[c2] == 1:
                stack[top] = c2
                top += 1
    cdef int residual = 0
    for i in range(n):
        if flags[i]:
            residual += 1
    return residual


def peel_residual(int n_vars, int n_checks,
                  const int32_t[::1] var_ptr, const int32_t[::1] var_adj,
                  const int32_t[::1] check_ptr, const int32_t[::1] check_adj,
                  erased):
    cdef int n = n_vars
    cdef int m = n_checks
    cdef int n_edges = var_adj.shape[0]
    cdef unsigned char *flags = <unsigned char *> malloc(max(n, 1))
    cdef int32_t *cnt = <int32_t *> malloc(max(m, 1) * sizeof(int32_t))
    cdef int32_t *stack = <int32_t *> malloc((n_edges + m + 1) * sizeof(int32_t))
    cdef int v, i
    if flags == NULL or cnt == NULL or stack == NULL:
        free(flags); free(cnt); free(stack)
        raise MemoryError()
    try:
        memset(flags, 0, n)
        memset(cnt, 0, m * sizeof(int32_t))
        for v in erased:
            flags[<int> v] = 1
        for v in range(n):
            if flags[v]:
                for i in range(var_ptr[v], var_ptr[v + 1]):
                    cnt[var_adj[i]] += 1
        _peel(n, m, &var_ptr[0] if n > 0 else NULL, &var_adj[0] if n_edges > 0 else NULL,
              &check_ptr[0] if m > 0 else NULL,
              &check_adj[0] if n_edges > 0 else NULL, flags, cnt, stack)
        return [v for v in range(n) if flags[v]]
    finally:
        free(flags); free(cnt); free(stack)


def mc_block(int n_vars, int n_checks,
             const int32_t[::1] var_ptr, const int32_t[::1] var_adj,
             const int32_t[::1] check_ptr, const int32_t[::1] check_adj,
             double eps, long long n_frames, seed):
    cdef int n = n_vars
    cdef int m = n_checks
    cdef int n_edges = var_adj.shape[0]
    cdef uint64_t state = <uint64_t> (<unsigned long long> (int(seed) & ((1 << 64) - 1)))
    cdef long long frame_errors = 0
    cdef long long bit_errors = 0
    cdef long long f
    cdef int v, i, residual, any_erased
    cdef unsigned char *flags = <unsigned char *> malloc(max(n, 1))
    cdef int32_t *cnt = <int32_t *> malloc(max(m, 1) * sizeof(int32_t))
    cdef int32_t *stack = <int32_t *> malloc((n_edges + m + 1) * sizeof(int32_t))
    if flags == NULL or cnt == NULL or stack == NULL:
        free(flags); free(cnt); free(stack)
        raise MemoryError()
    cdef const int32_t *vp = &var_ptr[0]
    cdef const int32_t *va = &var_adj[0] if n_edges > 0 else NULL
    cdef const int32_t *cp = &check_ptr[0]
    cdef const int32_t *ca = &check_adj[0] if n_edges > 0 else NULL
    try:
        for f in range(n_frames):
            memset(flags, 0, n)
            memset(cnt, 0, m * sizeof(int32_t))
            any_erased = 0
            for v in range(n):
                if sm64_u01(&state) < eps:
                    flags[v] = 1
                    any_erased = 1
                    for i in range(vp[v], vp[v + 1]):
                        cnt[va[i]] += 1
            if not any_erased:
                continue
            residual = _peel(n, m, vp, va, cp, ca, flags, cnt, stack)
            if residual:
                frame_errors += 1
                bit_errors += residual
        return int(frame_errors), int(bit_errors)
    finally:
        free(flags); free(cnt); free(stack)


def exact_failure_counts(int n_vars, int n_checks,
                         const int32_t[::1] var_ptr, const int32_t[::1] var_adj,
                         const int32_t[::1] check_ptr, const int32_t[::1] check_adj):
    cdef int n = n_vars
    cdef int m = n_checks
    cdef int n_edges = var_adj.shape[0]
    if n > 30:
        raise ValueError("exact enumeration limited to 30 variables")
    cdef unsigned char *flags = <unsigned char *> malloc(max(n, 1))
    cdef int32_t *cnt = <int32_t *> malloc(max(m, 1) * sizeof(int32_t))
    cdef int32_t *stack = <int32_t *> malloc((n_edges + m + 1) * sizeof(int32_t))
    cdef long long *out = <long long *> malloc((n + 1) * sizeof(long long))
    cdef unsigned long long mask, mm
    cdef int v, i, weight, residual
    if flags == NULL or cnt == NULL or stack == NULL or out == NULL:
        free(flags); free(cnt); free(stack); free(out)
        raise MemoryError()
    cdef const int32_t *vp = &var_ptr[0]
    cdef const int32_t *va = &var_adj[0] if n_edges > 0 else NULL
    cdef const int32_t *cp = &check_ptr[0]
    cdef const int32_t *ca = &check_adj[0] if n_edges > 0 else NULL
    try:
        for v in range(n + 1):
            out[v] = 0
        for mask in range(1, (<unsigned long long> 1) << n):
            memset(flags, 0, n)
            memset(cnt, 0, m * sizeof(int32_t))
            weight = 0
            mm = mask
            v = 0
            while mm:
                if mm & 1:
                    flags[v] = 1
                    weight += 1
                    for i in range(vp[v], vp[v + 1]):
                        cnt[va[i]] += 1
                mm >>= 1
                v += 1
            residual = _peel(n, m, vp, va, cp, ca, flags, cnt, stack)
            if residual:
                out[weight] += 1
        return [int(out[v]) for v in range(n + 1)]
    finally:
        free(flags); free(cnt); free(stack); free(out)


# --------------------------------------------------------------------------
# First-order survival counting (layer-assignment DFS)
# --------------------------------------------------------------------------

cdef struct CFO:
    int nv, nc, K
    const int32_t *ev_ptr     # per-var edge slices (in DFS order space)
    const int32_t *ev_chk
    const int32_t *ev_shift
    const int32_t *order
    int32_t *cnt              # nc * K layer counts
    int32_t *rem


cdef long long cfo_rec(CFO *x, int pos) noexcept:
    if pos == x.nv:
        return 1
    cdef int v = x.order[pos]
    cdef long long total = 0
    cdef int a, i, c, b, ok
    for a in range(x.K):
        ok = 1
        for i in range(x.ev_ptr[v], x.ev_ptr[v + 1]):
            c = x.ev_chk[i]
            b = a - x.ev_shift[i]
            if b < 0:
                b += x.K
            b = b % x.K
            x.cnt[c * x.K + b] += 1
            x.rem[c] -= 1
        for i in range(x.ev_ptr[v], x.ev_ptr[v + 1]):
            c = x.ev_chk[i]
            if x.rem[c] == 0:
                for b in range(x.K):
                    if x.cnt[c * x.K + b] == 1:
                        ok = 0
                        break
                if not ok:
                    break
        if ok:
            total += cfo_rec(x, pos + 1)
        for i in range(x.ev_ptr[v], x.ev_ptr[v + 1]):
            c = x.ev_chk[i]
            b = a - x.ev_shift[i]
            if b < 0:
                b += x.K
            b = b % x.K
            x.cnt[c * x.K + b] -= 1
            x.rem[c] += 1
    return total


def count_first_order(int n_vars_sub, int n_checks_sub, int K,
                      edge_var, edge_chk, edge_shift, order):
    """Compiled counterpart of ``pure.count_first_order`` (same contract)."""
    cdef int nv = n_vars_sub
    cdef int nc = n_checks_sub
    cdef int ne = len(edge_var)
    cdef int i, v
    cdef int32_t *ev_ptr = <int32_t *> malloc((nv + 1) * sizeof(int32_t))
    cdef int32_t *ev_chk = <int32_t *> malloc(max(ne, 1) * sizeof(int32_t))
    cdef int32_t *ev_shift = <int32_t *> malloc(max(ne, 1) * sizeof(int32_t))
    cdef int32_t *order_arr = <int32_t *> malloc(max(nv, 1) * sizeof(int32_t))
    cdef int32_t *cnt = <int32_t *> malloc(max(nc * K, 1) * sizeof(int32_t))
    cdef int32_t *rem = <int32_t *> malloc(max(nc, 1) * sizeof(int32_t))
    cdef int32_t *deg = <int32_t *> malloc(max(nv, 1) * sizeof(int32_t))
    cdef int32_t *fill = NULL
    cdef CFO x
    if (ev_ptr == NULL or ev_chk == NULL or ev_shift == NULL or
            order_arr == NULL or cnt == NULL or rem == NULL or deg == NULL):
        free(ev_ptr); free(ev_chk); free(ev_shift); free(order_arr)
        free(cnt); free(rem); free(deg)
        raise MemoryError()
    try:
        memset(cnt, 0, nc * K * sizeof(int32_t))
        memset(rem, 0, nc * sizeof(int32_t))
        memset(deg, 0, max(nv, 1) * sizeof(int32_t))
        for i in range(ne):
            deg[<int> edge_var[i]] += 1
            rem[<int> edge_chk[i]] += 1
        ev_ptr[0] = 0
        for v in range(nv):
            ev_ptr[v + 1] = ev_ptr[v] + deg[v]
        fill = <int32_t *> malloc(max(nv, 1) * sizeof(int32_t))
        if fill == NULL:
            raise MemoryError()
        memset(fill, 0, max(nv, 1) * sizeof(int32_t))
        for i in range(ne):
            v = <int> edge_var[i]
            ev_chk[ev_ptr[v] + fill[v]] = <int32_t> edge_chk[i]
            ev_shift[ev_ptr[v] + fill[v]] = <int32_t> edge_shift[i]
            fill[v] += 1
        for i in range(nv):
            order_arr[i] = <int32_t> order[i]
        x.nv = nv
        x.nc = nc
        x.K = K
        x.ev_ptr = ev_ptr
        x.ev_chk = ev_chk
        x.ev_shift = ev_shift
        x.order = order_arr
        x.cnt = cnt
        x.rem = rem
        return int(cfo_rec(&x, 0))
    finally:
        free(ev_ptr); free(ev_chk); free(ev_shift); free(order_arr)
        free(cnt); free(rem); free(deg); free(fill)
