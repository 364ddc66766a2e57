"""Residue sieve for Y such that D*Y^4 - b^2 might be a square (numpy)."""

import numpy as np

BASE = 4032                      # 64 * 63
MODULI = (65, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)
CHUNK = 1 << 20


def _squares(m):
    out = np.zeros(m, dtype=bool)
    out[(np.arange(m, dtype=np.int64) ** 2) % m] = True
    return out


_SQ = {m: _squares(m) for m in (64, 63) + MODULI}


def _table(D, b2, m):
    r = np.arange(m, dtype=np.int64)
    r4 = (r * r % m) ** 2 % m
    return (D % m * r4 - b2) % m


def candidates(D, b2, y_lo, y_hi):
    """Every y in [y_lo, y_hi] for which D*y^4 - b2 passes all residue tests."""
    if y_hi < y_lo:
        return []
    v = _table(D, b2, BASE)
    base = _SQ[64][v % 64] & _SQ[63][v % 63]
    small = [(m, _SQ[m][_table(D, b2, m)]) for m in MODULI]
    out = []
    for lo in range(y_lo, y_hi + 1, CHUNK):
        ys = np.arange(lo, min(lo + CHUNK, y_hi + 1), dtype=np.int64)
        ys = ys[base[ys % BASE]]
        for m, tab in small:
            if not len(ys):
                break
            ys = ys[tab[ys % m]]
        out.extend(int(y) for y in ys)
    return out
