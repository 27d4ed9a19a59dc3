"""Benchmark: compiled kernels vs the pure-Python fallback.

Runs the three hot loops (stopping-set search, Monte Carlo peeling, exact
pattern enumeration) on representative inputs with both backends, checks
that the outputs agree, and prints a timing table.

    python3 benchmarks/bench_kernels.py [--quick]
"""

import argparse
import sys
import time

from ldpc_forge import kernels
from ldpc_forge.kernels import pure
from ldpc_forge.graph import DegreeDistribution, sample_irregular, sample_regular


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def row(name, pure_s, fast_s):
    speedup = pure_s / fast_s if fast_s > 0 else float("inf")
    print(f"{name:<44} {pure_s * 1000:>10.1f} {fast_s * 1000:>10.1f} {speedup:>9.1f}x")


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller instances (for CI smoke runs)")
    args = parser.parse_args()

    if kernels.compiled is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    fast = kernels.compiled

    print(f"{'kernel':<44} {'pure ms':>10} {'cython ms':>10} {'speedup':>10}")

    # stopping-set search on a regular code
    n, d_max = (48, 6) if args.quick else (64, 7)
    g = sample_regular(n, 3, 6, seed=7)
    csr = (g.n_vars, g.n_checks, *g.csr)
    a, t_fast = timed(fast.enumerate_raw, *csr, d_max, None, 0, 0)
    b, t_pure = timed(pure.enumerate_raw, *csr, d_max, None, 0, 0)
    assert a == b
    row(f"stopping sets n={n} (3,6) d<={d_max}", t_pure, t_fast)

    # stopping-set search on a degree-2-heavy irregular code
    dist = DegreeDistribution({2: 0.4187, 3: 0.1626, 6: 0.4187}, {6: 1.0})
    n, d_max = (36, 5) if args.quick else (72, 5)
    g = sample_irregular(n, dist, seed=3)
    csr = (g.n_vars, g.n_checks, *g.csr)
    a, t_fast = timed(fast.enumerate_raw, *csr, d_max, None, 0, 0)
    b, t_pure = timed(pure.enumerate_raw, *csr, d_max, None, 0, 0)
    assert a == b
    row(f"stopping sets n={n} irregular d<={d_max}", t_pure, t_fast)

    # Monte Carlo peeling
    n, frames = (128, 2000) if args.quick else (512, 5000)
    g = sample_regular(n, 3, 6, seed=5)
    csr = (g.n_vars, g.n_checks, *g.csr)
    a, t_fast = timed(fast.mc_block, *csr, 0.4, frames, 12345)
    b, t_pure = timed(pure.mc_block, *csr, 0.4, frames, 12345)
    assert a == b
    row(f"peeling decoder n={n} x {frames} frames", t_pure, t_fast)

    # exact failure-pattern enumeration
    n = 14 if args.quick else 16
    g = sample_regular(n, 2, 4, seed=9) if n % 4 == 0 else sample_regular(n, 3, 6, seed=9)
    csr = (g.n_vars, g.n_checks, *g.csr)
    a, t_fast = timed(fast.exact_failure_counts, *csr)
    b, t_pure = timed(pure.exact_failure_counts, *csr)
    assert a == b
    row(f"exact FER enumeration n={n} (2^{n} patterns)", t_pure, t_fast)

    # first-order survival counting (the census / certification inner loop)
    reps = 200 if args.quick else 2000
    nv, nc, K = 8, 12, 4
    ev = [i // 3 for i in range(24)]
    ec = [(2 * i + i // 6) % nc for i in range(24)]
    es = [(5 * i) % K for i in range(24)]
    order = list(range(nv))

    def sweep(fn):
        total = 0
        for r in range(reps):
            shifts = [(s + r) % K for s in es]
            total += fn(nv, nc, K, ev, ec, shifts, order)
        return total

    a, t_fast = timed(sweep, fast.count_first_order)
    b, t_pure = timed(sweep, pure.count_first_order)
    assert a == b
    row(f"survival counts 8 vars K=4 x {reps} sweeps", t_pure, t_fast)
    return 0


if __name__ == "__main__":
    sys.exit(main())
