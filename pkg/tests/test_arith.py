from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from quarticpell.arith import (GaussianInteger, GaussianRational, exact_sqrt, hp_pi, hpc, isqrt,
                               is_perfect_square, padic_val, prime_power_base)


@pytest.mark.parametrize("n, root", [(0, 0), (10, 3), (9463554011521, 3076289)])
def test_isqrt_examples(n, root):
    assert isqrt(n) == root


def test_isqrt_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@pytest.mark.parametrize("n, root", [(10609, 103), (-4, None), (616226, None), (0, 0), (1, 1)])
def test_perfect_square_examples(n, root):
    assert exact_sqrt(n) == root
    assert is_perfect_square(n) == (root is not None)


@pytest.mark.parametrize("p, x, v", [(2, 16, 4), (2, Fraction(5, 3), 0), (3, Fraction(5, 3), -1),
                                     (5, Fraction(-50, 7), 2)])
def test_padic_examples(p, x, v):
    assert padic_val(p, x) == v


def test_padic_zero():
    with pytest.raises(ValueError):
        padic_val(2, 0)


@pytest.mark.parametrize("n, pm", [(1, (1, 0)), (5, (5, 1)), (8, (2, 3)), (49, (7, 2)),
                                   (15, None), (12, None)])
def test_prime_power_base(n, pm):
    assert prime_power_base(n) == pm


@given(st.integers(min_value=0, max_value=2 ** 512))
def test_isqrt_brackets(n):
    k = isqrt(n)
    assert k * k <= n < (k + 1) ** 2


@given(st.integers(min_value=2, max_value=2 ** 200))
def test_squares_and_neighbours(k):
    assert exact_sqrt(k * k) == k
    assert not is_perfect_square(k * k + 1)
    assert not is_perfect_square(k * k - 1)


gi = st.builds(GaussianInteger, st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))


@given(gi, gi)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


@given(gi, gi)
def test_exact_division_roundtrip(x, y):
    if y.is_zero():
        return
    assert (x * y).exact_div(y) == x
    assert y.divides(x * y)


def test_gaussian_power():
    assert GaussianInteger(1, -2) ** 4 == GaussianInteger(-7, 24)
    assert GaussianInteger(1, 3) * GaussianInteger(1, -2) ** 4 == GaussianInteger(-79, 3)


def test_gaussian_rational_unit_quotient():
    u = GaussianRational.of(GaussianInteger(79, 3))
    w = u / u.conj()
    assert w.norm() == 1
    assert not w.is_gaussian_integer()


def test_ball_contains_true_value():
    x = hpc(2).sqrt()
    ref = mpmath.sqrt(2)
    with mpmath.workprec(400):
        assert abs(x.to_mpmath() - mpmath.sqrt(2)) <= x.radius() + 2 ** -300
    assert x.gt(Fraction(141421, 100000)) is True
    assert x.lt(Fraction(141422, 100000)) is True
    assert float(ref) == pytest.approx(x.mid().real)


def test_ball_undecided_on_equality():
    x = hpc(2).sqrt() ** 2
    assert x.gt(2) is None and x.lt(2) is None


def test_pi_and_expi():
    z = (hp_pi() / 3).expi()
    assert z.mid().real == pytest.approx(0.5)
    assert z.mid().imag == pytest.approx(3 ** 0.5 / 2)


@given(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=10 ** 6))
def test_precision_doubling_shrinks_radius(q):
    lo = (hpc(q, 128).sqrt() * 3).exp()
    hi = (hpc(q, 256).sqrt() * 3).exp()
    assert hi.radius() < lo.radius()
    assert lo.contains(hi)
