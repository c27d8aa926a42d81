"""Backend selection for the lattice point kernels.

The compiled extension is used when it imported and the input provably fits
int64 arithmetic; otherwise the pure-Python kernel runs.  ``use_backend`` is
for benchmarks and tests.
"""
from __future__ import annotations

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

AVAILABLE = ("compiled", "python") if _ckernel is not None else ("python",)
_backend = AVAILABLE[0]
_LIMIT = 1 << 62


def backend() -> str:
    return _backend


def use_backend(name: str) -> str:
    """Select ``"compiled"`` or ``"python"``; returns the previous backend."""
    global _backend
    if name not in AVAILABLE:
        raise ValueError(f"backend {name!r} not available (have {AVAILABLE})")
    prev, _backend = _backend, name
    return prev


def _fits_int64(rows, box) -> bool:
    m = max((max(abs(lo), abs(hi)) for lo, hi in box), default=0) + 1
    for row in rows:
        if sum(abs(a) for a in row[:-1]) * m + abs(row[-1]) >= _LIMIT:
            return False
    volume = 1
    for lo, hi in box:
        volume *= hi - lo + 1
    return volume * m < _LIMIT


def count_moment(rows, starts, n, box):
    """Count and coordinate sum of the lattice points described by ``rows``.

    ``box`` is an integer bounding box [(lo, hi), ...] used only for the
    overflow guard.
    """
    if _backend == "compiled" and _fits_int64(rows, box):
        return _ckernel.count_moment(rows, starts, n)
    return _pykernel.count_moment(rows, starts, n)


def lattice_points(rows, starts, n):
    return _pykernel.lattice_points(rows, starts, n)
