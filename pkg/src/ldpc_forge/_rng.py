"""Seeded, splittable random streams.

All randomness in the package flows through numpy's PCG64 seeded from a
SeedSequence.  Independent streams are derived with spawn keys, so a single
64-bit user seed reproduces every draw regardless of how work is split
across workers.  The algorithm identifier below is recorded in reports.
"""

from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "numpy.random.PCG64/SeedSequence"

# Spawn-key labels for the independent streams.
STREAM_GRAPH = 1
STREAM_ANNEAL = 2
STREAM_LIFT = 3
STREAM_MC = 4
STREAM_ENSEMBLE = 5
STREAM_PIPELINE = 6


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for stream ``key`` under the master ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def derive_seed64(seed: int, *key: int) -> int:
    """A single 64-bit seed for the compiled kernels, derived like make_rng."""
    ss = np.random.SeedSequence(seed, spawn_key=key)
    return int(ss.generate_state(1, np.uint64)[0])
