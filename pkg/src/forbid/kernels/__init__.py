"""Hot-kernel backend selection.

The jit backend is the default; set ``FORBID_DISABLE_NUMBA=1`` (or any value
other than 0/false) to force the pure numpy/Python fallback. Both backends
produce bit-identical positions. ``set_backend`` overrides the choice at
runtime, mainly for tests and benchmarks.
"""

from __future__ import annotations

import os

from . import _numpy

try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is a hard dependency normally
    _numba = None


def numba_available() -> bool:
    return _numba is not None


def _env_disabled() -> bool:
    flag = os.environ.get("FORBID_DISABLE_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false")


def _default():
    if _numba is not None and not _env_disabled():
        return _numba
    return _numpy


_impl = _default()


def set_backend(name: str) -> None:
    """Select 'numba', 'numpy', or 'auto' (env-flag default)."""
    global _impl
    if name == "auto":
        _impl = _default()
    elif name == "numpy":
        _impl = _numpy
    elif name == "numba":
        if _numba is None:
            raise RuntimeError("numba backend requested but numba is not importable")
        _impl = _numba
    else:
        raise ValueError(f"unknown backend {name!r}")


def backend_name() -> str:
    return _impl.NAME


def pair_distances(pos, pi, pj):
    return _impl.pair_distances(pos, pi, pj)


def refresh_pair_targets(pos, sizes, pi, pj, refdist, alpha, k):
    return _impl.refresh_pair_targets(pos, sizes, pi, pj, refdist, alpha, k)


def relax_sweep(pos, pi, pj, delta, weight, eta, order, direction_key):
    return _impl.relax_sweep(pos, pi, pj, delta, weight, eta, order, direction_key)


def iteration_stats(pos, sizes, pi, pj, delta, weight):
    return _impl.iteration_stats(pos, sizes, pi, pj, delta, weight)


def shuffled_order(n, key):
    return _impl.shuffled_order(n, key)
