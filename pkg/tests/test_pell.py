import math

import pytest
from hypothesis import given, strategies as st

from quarticpell.arith import is_perfect_square
from quarticpell.pell import (alpha_power, alpha_powers, brute_minimal, continued_fraction_sqrt,
                              half_mul, solve_pell, unit_recurrence)

nonsquare = st.integers(2, 3000).filter(lambda d: not is_perfect_square(d))


@pytest.mark.parametrize("D, cf", [(2, (1, (2,))), (10, (3, (6,))), (7, (2, (1, 1, 1, 4)))])
def test_continued_fraction(D, cf):
    assert continued_fraction_sqrt(D) == cf


def test_cf_986_gives_negative_pell():
    a0, period = continued_fraction_sqrt(986)
    assert len(period) % 2 == 1
    x, y = solve_pell(986).fund_minus
    assert x * x - 986 * y * y == -1


@pytest.mark.parametrize("D", [1, 4, 0, -3])
def test_rejects_squares(D):
    with pytest.raises(ValueError):
        solve_pell(D)


def test_solve_pell_examples():
    assert solve_pell(5).t1u1 == (1, 1)
    pd = solve_pell(2)
    assert pd.fund_minus == (1, 1) and pd.t1u1 == (2, 2)
    pd = solve_pell(10)
    assert (pd.fund_plus, pd.fund_minus, pd.t1u1) == ((19, 6), (3, 1), (6, 2))
    assert solve_pell(3).fund_minus is None and solve_pell(3).t1u1 is None


def test_d_multiple_of_four():
    # 2^2 - 8 * 1 = -4 although x^2 - 8y^2 = -1 has no solution
    pd = solve_pell(8)
    assert pd.fund_minus is None and pd.t1u1 == (2, 1)


@pytest.mark.parametrize("k, TU", [(0, (2, 0)), (1, (1, 1)), (2, (3, 1)), (4, (7, 3))])
def test_alpha_power_d5(k, TU):
    p = alpha_power(solve_pell(5), k)
    assert (p.T, p.U) == TU


def test_alpha_power_needs_alpha():
    with pytest.raises(ValueError):
        alpha_power(solve_pell(3), 2)


def test_half_mul_leaves_order():
    with pytest.raises(ArithmeticError):
        half_mul(2, (1, 1), (1, 0))


@given(nonsquare)
def test_pell_data_invariants(D):
    pd = solve_pell(D)
    x, y = pd.fund_plus
    assert x * x - D * y * y == 1
    assert pd.neg_pell == (pd.period % 2 == 1)
    if pd.fund_minus:
        x, y = pd.fund_minus
        assert x * x - D * y * y == -1
        assert pd.t1u1[0] <= 2 * x
    if pd.t1u1:
        t, u = pd.t1u1
        assert t * t - D * u * u == -4


@given(nonsquare)
def test_minimality_against_scan(D):
    pd = solve_pell(D)
    for N, sol in ((1, pd.fund_plus), (-1, pd.fund_minus), (-4, pd.t1u1)):
        if sol is not None and sol[1] <= 2000:
            assert brute_minimal(D, N, sol[1]) == sol
        elif sol is None:
            assert brute_minimal(D, N, 2000) is None


# D = a^2 + b^2 with gcd(a, b) = 1 is never 0 mod 4
@given(nonsquare.filter(lambda d: d % 4 and solve_pell(d).t1u1 is not None))
def test_alpha_powers_norm_and_parity(D):
    pd = solve_pell(D)
    for p in alpha_powers(pd, 60):
        assert p.T * p.T - D * p.U * p.U == 4 * (-1) ** p.k
        assert p.T % 2 == p.U % 2
        if p.T % 2:
            assert D % 4 == 1
    assert alpha_power(pd, 37) == alpha_powers(pd, 37)[37]


@pytest.mark.parametrize("D", [2, 5, 10, 13, 29, 50, 986])
def test_recurrence_uses_t1(D):
    rep = unit_recurrence(solve_pell(D), 50)
    assert rep.holds_unit and rep.coefficient == 1
    assert not rep.holds_doubled


def test_doubling_identities():
    # alpha^{2k} from alpha^k: T_2k = (T_k^2 + D U_k^2)/2, U_2k = T_k U_k
    for D in (2, 10, 986):
        pd = solve_pell(D)
        pw = alpha_powers(pd, 200)
        for k in range(101):
            assert pw[2 * k].T * 2 == pw[k].T ** 2 + D * pw[k].U ** 2
            assert pw[2 * k].U == pw[k].T * pw[k].U


def test_large_power_exact():
    pw = alpha_power(solve_pell(986), 200)
    assert pw.T * pw.T - 986 * pw.U * pw.U == 4
    assert math.log2(pw.T) > 1000
