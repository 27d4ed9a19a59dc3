"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python module is
the fallback.  ``LDPC_FORGE_BACKEND=python`` forces the fallback (useful for
benchmarking and for testing backend equivalence); ``=cython`` makes a
missing extension a hard error instead of a silent downgrade.
"""

from __future__ import annotations

import os

from . import pure
from .pure import STATUS_ABORT_BELOW, STATUS_BUDGET, STATUS_COMPLETE, STATUS_COUNT_CAP

_requested = os.environ.get("LDPC_FORGE_BACKEND", "").strip().lower()
if _requested not in ("", "python", "cython"):
    raise ImportError(f"unknown LDPC_FORGE_BACKEND value: {_requested!r}")

compiled = None
if _requested != "python":
    try:
        from . import _speedups as compiled
    except ImportError:
        compiled = None
    if compiled is None and _requested == "cython":
        raise ImportError("LDPC_FORGE_BACKEND=cython but the compiled kernels are not built")

_impl = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

enumerate_raw = _impl.enumerate_raw
peel_residual = _impl.peel_residual
mc_block = _impl.mc_block
exact_failure_counts = _impl.exact_failure_counts
count_first_order = _impl.count_first_order

__all__ = [
    "BACKEND",
    "STATUS_ABORT_BELOW",
    "STATUS_BUDGET",
    "STATUS_COMPLETE",
    "STATUS_COUNT_CAP",
    "compiled",
    "count_first_order",
    "enumerate_raw",
    "exact_failure_counts",
    "mc_block",
    "peel_residual",
    "pure",
]
