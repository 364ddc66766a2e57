import math

import pytest
from hypothesis import given, strategies as st

from quarticpell import squarescan

backends = ["python"]
try:
    from quarticpell import _scan  # noqa: F401
    backends.append("cython")
except ImportError:
    pass


def oracle(D, b2, lo, hi):
    out = []
    for y in range(lo, hi + 1):
        v = D * y ** 4 - b2
        if v >= 0 and math.isqrt(v) ** 2 == v:
            out.append((math.isqrt(v), y))
    return out


@pytest.mark.parametrize("backend", backends)
def test_known_hits(backend):
    assert squarescan.quartic_hits(986, 25, 1, 400, backend) == [(31, 1), (785, 5), (3076289, 313)]
    assert squarescan.quartic_hits(442, 81, 1, 50, backend)[:2] == [(19, 1), (189, 3)]


@pytest.mark.parametrize("backend", backends)
@given(st.integers(1, 300), st.integers(1, 300), st.integers(1, 3000))
def test_hits_match_plain_scan(backend, a, b, hi):
    D = a * a + b * b
    assert squarescan.quartic_hits(D, b * b, 1, hi, backend) == oracle(D, b * b, 1, hi)


@given(st.integers(2, 10 ** 6), st.integers(1, 10 ** 6), st.integers(1, 500), st.integers(0, 5000))
def test_backends_identical(D, b2, lo, span):
    if len(backends) < 2:
        pytest.skip("compiled sieve not built")
    hi = lo + span
    assert squarescan.candidates(D, b2, lo, hi, "cython") == squarescan.candidates(D, b2, lo, hi, "python")


def test_candidates_superset():
    D, b2 = 986, 25
    cands = set(squarescan.candidates(D, b2, 1, 5000))
    assert {y for _, y in oracle(D, b2, 1, 5000)} <= cands


def test_unknown_backend():
    with pytest.raises(ValueError):
        squarescan.candidates(2, 1, 1, 10, "fortran")
