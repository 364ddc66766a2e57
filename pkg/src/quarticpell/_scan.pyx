# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Residue sieve for Y such that D*Y^4 - b^2 might be a square (compiled)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()

BASE = 4032                      # 64 * 63
cdef enum:
    NBASE = 4032
MODULI = (65, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


cdef uint8_t[:] _squares(int m):
    cdef cnp.ndarray[uint8_t] out = np.zeros(m, dtype=np.uint8)
    cdef int k
    for k in range(m):
        out[(k * k) % m] = 1
    return out


cdef uint8_t[:] SQ64 = _squares(64)
cdef uint8_t[:] SQ63 = _squares(63)
cdef list SMALL_SQ = [_squares(m) for m in MODULI]


def candidates(int64_t D, int64_t b2, int64_t y_lo, int64_t y_hi):
    """Every y in [y_lo, y_hi] for which D*y^4 - b2 passes all residue tests."""
    cdef uint8_t base[4032]
    cdef uint8_t small[512]
    cdef int64_t mods[16]
    cdef int64_t offs[16]
    cdef int nm = len(MODULI)
    cdef uint8_t[:] sq
    cdef int64_t r, v, m, off = 0, y, c0, r4
    cdef int j
    cdef list out = []
    cdef bint ok

    if y_hi < y_lo:
        return out
    for r in range(NBASE):
        r4 = (r * r) % NBASE
        r4 = (r4 * r4) % NBASE
        v = ((D % NBASE) * r4 - b2 % NBASE) % NBASE
        if v < 0:
            v += BASE
        base[r] = SQ64[v % 64] & SQ63[v % 63]
    for j in range(nm):
        m = MODULI[j]
        mods[j] = m
        offs[j] = off
        sq = SMALL_SQ[j]
        for r in range(m):
            r4 = (r * r) % m
            r4 = (r4 * r4) % m
            v = ((D % m) * r4 - b2 % m) % m
            if v < 0:
                v += m
            small[off + r] = sq[v]
        off += m

    with nogil:
        c0 = y_lo % NBASE
        y = y_lo
        while y <= y_hi:
            if base[c0]:
                ok = True
                for j in range(nm):
                    if not small[offs[j] + y % mods[j]]:
                        ok = False
                        break
                if ok:
                    with gil:
                        out.append(y)
            c0 += 1
            if c0 == NBASE:
                c0 = 0
            y += 1
    return out
