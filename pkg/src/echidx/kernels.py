"""Kernel dispatch: compiled extension when available, pure Python otherwise.

The exhaustive lemma sweeps spend nearly all their time in two integer
routines (the staircase inequality and the pairwise max-sum inequality), so
those run in a Cython extension when it was built.  Set ECHIDX_PURE=1 to
force the fallback; `benchmarks/bench_kernels.py` compares the two.
"""

from __future__ import annotations

import os
from array import array

from . import _kernels_py

if os.environ.get("ECHIDX_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

ce1_eval = _impl.ce1_eval
pair_max_sum = _impl.pair_max_sum
ce1_sweep = _impl.ce1_sweep
cli_sweep = _impl.cli_sweep


def backend() -> str:
    """Name of the active backend: 'compiled' or 'pure'."""
    return _impl.BACKEND


def floor_table(p: int, q: int, kmax: int) -> array:
    """floor(k*p/q) for k = 0..kmax."""
    return array("q", ((k * p) // q for k in range(kmax + 1)))


def prefix_sums(values) -> array:
    """prefix[k] = values[0] + ... + values[k], with prefix matching indices."""
    out = array("q", [0]) * (len(values))
    acc = 0
    for k, v in enumerate(values):
        acc += v
        out[k] = acc
    return out


def cz_prefix_elliptic(p: int, q: int, kmax: int) -> array:
    """czp[k] = sum_{j<=k} (2*floor(j*p/q) + 1) for k = 0..kmax."""
    out = array("q", [0]) * (kmax + 1)
    acc = 0
    for k in range(1, kmax + 1):
        acc += 2 * ((k * p) // q) + 1
        out[k] = acc
    return out


def cz_prefix_hyperbolic(n: int, kmax: int) -> array:
    """czp[k] = sum_{j<=k} j*n = n*k(k+1)/2 for k = 0..kmax."""
    return array("q", (n * k * (k + 1) // 2 for k in range(kmax + 1)))


def pack_partitions(parts) -> tuple:
    """Flatten a list of integer partitions into (flat, offs, ms) arrays."""
    flat = array("q")
    offs = array("q", [0])
    ms = array("q")
    for qs in parts:
        flat.extend(qs)
        offs.append(len(flat))
        ms.append(sum(qs))
    return flat, offs, ms
