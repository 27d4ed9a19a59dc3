"""Peeling decoder and Monte Carlo FER/BER estimation on the erasure channel.

Each bit is erased i.i.d. with probability eps; on the BEC the all-zero
codeword suffices, so success depends only on the erasure pattern.  The
peeling decoder halts on the maximal stopping set inside the pattern.

Monte Carlo runs are split into fixed-size blocks with per-block substreams
derived from (seed, point index, block index), so results are identical for
any worker count; the stop rule is evaluated at block boundaries in block
order.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from ._rng import RNG_ALGORITHM
from .errors import InvalidParameterError
from .graph import TannerGraph

EXACT_FER_MAX_VARS = 20
_CI_Z = 1.959963984540054  # two-sided 95%
_EXACT_CI_BELOW = 10


@dataclass(frozen=True)
class StopRule:
    """Per-point stop: quit once min_frame_errors seen or max_frames spent."""

    min_frame_errors: int = 100
    max_frames: int = 10**8

    def describe(self) -> str:
        return f"min_frame_errors={self.min_frame_errors},max_frames={self.max_frames}"


@dataclass(frozen=True)
class SimPoint:
    eps: float
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float
    ber: float
    fer_ci_lo: float
    fer_ci_hi: float
    ci_method: str


@dataclass(frozen=True)
class SimCurve:
    points: tuple[SimPoint, ...]
    seed: int
    stop_rule: str
    rng_algorithm: str
    block_size: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eps", "frames", "frame_errors", "bit_errors",
                    "fer", "ber", "fer_ci_lo", "fer_ci_hi"])
        for p in self.points:
            w.writerow([repr(p.eps), p.frames, p.frame_errors, p.bit_errors,
                        repr(p.fer), repr(p.ber), repr(p.fer_ci_lo), repr(p.fer_ci_hi)])
        return buf.getvalue()


@dataclass(frozen=True)
class EnsembleSim:
    """Per-code curves plus the pooled (count-summed) ensemble curve."""

    curves: tuple[SimCurve, ...]
    pooled: SimCurve


def peel_decode(g: TannerGraph, erased: Iterable[int]) -> tuple[int, ...]:
    """Residual erased set after peeling (1-indexed, sorted; empty = success)."""
    erased = sorted(set(int(v) for v in erased))
    if erased and (erased[0] < 1 or erased[-1] > g.n_vars):
        raise InvalidParameterError("erased index out of range")
    vp, va, cp, ca = g.csr
    residual = kernels.peel_residual(g.n_vars, g.n_checks, vp, va, cp, ca,
                                     [v - 1 for v in erased])
    return tuple(v + 1 for v in residual)


@lru_cache(maxsize=128)
def failure_weight_counts(g: TannerGraph) -> tuple[int, ...]:
    """counts[w] = number of weight-w erasure patterns that fail decoding.

    Exhausts all 2^n patterns; limited to n <= 20.
    """
    if g.n_vars > EXACT_FER_MAX_VARS:
        raise InvalidParameterError(f"exact FER limited to n <= {EXACT_FER_MAX_VARS}")
    vp, va, cp, ca = g.csr
    return tuple(kernels.exact_failure_counts(g.n_vars, g.n_checks, vp, va, cp, ca))


def exact_fer(g: TannerGraph, eps: float) -> float:
    """Exact frame error rate: sum over failing patterns of their probability."""
    if not 0 <= eps <= 1:
        raise InvalidParameterError("eps must be in [0, 1]")
    counts = failure_weight_counts(g)
    n = g.n_vars
    # ascending weight keeps the summation stable for small eps
    return float(sum(counts[w] * eps**w * (1.0 - eps) ** (n - w) for w in range(n + 1)))


def _fer_ci(frame_errors: int, frames: int) -> tuple[float, float, str]:
    p = frame_errors / frames
    if frame_errors >= _EXACT_CI_BELOW:
        half = _CI_Z * float(np.sqrt(p * (1.0 - p) / frames))
        return max(0.0, p - half), min(1.0, p + half), "normal"
    from scipy.stats import beta  # deferred: keeps import light

    alpha = 0.05
    lo = 0.0 if frame_errors == 0 else float(beta.ppf(alpha / 2, frame_errors,
                                                      frames - frame_errors + 1))
    hi = 1.0 if frame_errors == frames else float(beta.ppf(1 - alpha / 2, frame_errors + 1,
                                                           frames - frame_errors))
    return lo, hi, "clopper-pearson"


def _block_seed(seed: int, point_index: int, block_index: int) -> int:
    ss = np.random.SeedSequence(seed, spawn_key=(point_index, block_index))
    return int(ss.generate_state(1, np.uint64)[0])


def _run_block(args) -> tuple[int, int]:
    n, m, vp, va, cp, ca, eps, size, seed64 = args
    return kernels.mc_block(n, m, vp, va, cp, ca, eps, size, seed64)


def mc_simulate(g: TannerGraph, eps_list: Sequence[float], stop: StopRule = StopRule(),
                seed: int = 0, workers: int = 1, block_size: int = 4096) -> SimCurve:
    """Monte Carlo FER/BER curve; deterministic in (seed, stop, block_size)
    for any worker count."""
    for eps in eps_list:
        if not 0 < eps < 1:
            raise InvalidParameterError("eps must be in (0, 1)")
    if block_size < 1:
        raise InvalidParameterError("block_size must be >= 1")
    vp, va, cp, ca = g.csr
    points = []
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for pi, eps in enumerate(eps_list):
            frames = fe = be = 0
            block = 0
            done = False
            while not done:
                specs = []
                b = block
                planned = 0
                while len(specs) < max(workers, 1) and frames + planned < stop.max_frames:
                    size = min(block_size, stop.max_frames - frames - planned)
                    specs.append((g.n_vars, g.n_checks, vp, va, cp, ca, eps, size,
                                  _block_seed(seed, pi, b)))
                    planned += size
                    b += 1
                if not specs:
                    break
                if pool is None:
                    results = [_run_block(s) for s in specs]
                else:
                    results = list(pool.map(_run_block, specs))
                # fold in block order; blocks past the stop boundary are discarded
                for spec, (bfe, bbe) in zip(specs, results):
                    frames += spec[7]
                    fe += bfe
                    be += bbe
                    block += 1
                    if fe >= stop.min_frame_errors:
                        done = True
                        break
                if frames >= stop.max_frames:
                    done = True
            fer = fe / frames if frames else 0.0
            ber = be / (frames * g.n_vars) if frames else 0.0
            lo, hi, method = _fer_ci(fe, frames) if frames else (0.0, 1.0, "none")
            points.append(SimPoint(eps, frames, fe, be, fer, ber, lo, hi, method))
    finally:
        if pool is not None:
            pool.shutdown()
    return SimCurve(tuple(points), seed, stop.describe(), RNG_ALGORITHM, block_size)


def mc_ensemble(sampler: Callable[[int], TannerGraph], count: int,
                eps_list: Sequence[float], stop: StopRule = StopRule(),
                seed: int = 0, workers: int = 1, block_size: int = 4096) -> EnsembleSim:
    """Simulate ``count`` sampled codes; returns per-code curves and the
    pooled ensemble curve (summed counts, so fer = fe/frames still holds)."""
    if count < 1:
        raise InvalidParameterError("count must be >= 1")
    graphs = [sampler(i) for i in range(count)]
    curves = tuple(
        mc_simulate(graphs[i], eps_list, stop=stop,
                    seed=_block_seed(seed, 0xFFFF, i), workers=workers,
                    block_size=block_size)
        for i in range(count)
    )
    pooled_points = []
    for pi, eps in enumerate(eps_list):
        frames = sum(c.points[pi].frames for c in curves)
        fe = sum(c.points[pi].frame_errors for c in curves)
        be = sum(c.points[pi].bit_errors for c in curves)
        bits = sum(c.points[pi].frames * g.n_vars for c, g in zip(curves, graphs))
        fer = fe / frames if frames else 0.0
        ber = be / bits if bits else 0.0
        lo, hi, method = _fer_ci(fe, frames) if frames else (0.0, 1.0, "none")
        pooled_points.append(SimPoint(eps, frames, fe, be, fer, ber, lo, hi, method))
    pooled = SimCurve(tuple(pooled_points), seed,
                      stop.describe(), RNG_ALGORITHM, block_size)
    return EnsembleSim(curves, pooled)
