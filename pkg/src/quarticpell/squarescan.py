"""Search Y ranges for D*Y^4 - b^2 = X^2.

The compiled sieve is used when it was built; otherwise the numpy one.
Set QUARTICPELL_BACKEND=python to force the fallback.
"""

import math
import os

from . import _scan_py

BACKEND = "python"
_impl = _scan_py
if os.environ.get("QUARTICPELL_BACKEND", "").lower() != "python":
    try:
        from . import _scan as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass


def _pick(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _scan_py
    if backend == "cython":
        from . import _scan
        return _scan
    raise ValueError(f"unknown backend {backend!r}")


def candidates(D: int, b2: int, y_lo: int, y_hi: int, backend=None) -> list[int]:
    return _pick(backend).candidates(D, b2, y_lo, y_hi)


def quartic_hits(D: int, b2: int, y_lo: int, y_hi: int, backend=None) -> list[tuple[int, int]]:
    """All (X, Y) with X >= 0, y_lo <= Y <= y_hi and X^2 = D*Y^4 - b2, by increasing Y."""
    out = []
    for y in candidates(D, b2, max(y_lo, 1), y_hi, backend):
        v = D * y ** 4 - b2
        if v < 0:
            continue
        x = math.isqrt(v)
        if x * x == v:
            out.append((x, y))
    return out
