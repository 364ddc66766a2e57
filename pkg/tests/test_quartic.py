from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quarticpell.arith import GaussianInteger
from quarticpell.errors import HypothesisNotMet
from quarticpell.quadfam import EquationInstance, pell_data
from quarticpell.quartic import (c2_of_c1, check_gap, decompose_family, gap_holds, gaussian_witness,
                                 make_solution, solve_all, solve_coprime, theorem_counts,
                                 y_lower_bound_report)


def keys(sols):
    return [s.key for s in sols]


def test_solve_coprime_examples():
    assert keys(solve_coprime(EquationInstance(1, 2), 10 ** 4)) == [(1, 1)]
    assert keys(solve_coprime(EquationInstance(31, 5), 400)) == [(31, 1), (3076289, 313)]
    assert keys(solve_coprime(EquationInstance(1, 3), 100)) == [(1, 1), (79, 5)]


def test_solve_all_examples():
    sols = solve_all(EquationInstance(31, 5), 400)
    assert keys(sols) == [(31, 1), (785, 5), (3076289, 313)]
    assert [s.coprime for s in sols] == [True, False, True]
    assert (189, 3) in keys(solve_all(EquationInstance(19, 9), 50))
    assert keys(solve_all(EquationInstance(1, 2), 100)) == [(1, 1)]


def test_make_solution_rejects():
    with pytest.raises(ValueError):
        make_solution(EquationInstance(1, 3), 80, 5)


@pytest.mark.parametrize("a, b, X, Y, rs", [(1, 3, 79, 5, (1, 2)), (31, 5, 3076289, 313, (12, 13)),
                                            (31, 5, 31, 1, (1, 0)), (7, 2, 7, 1, (1, 0))])
def test_gaussian_witness(a, b, X, Y, rs):
    inst = EquationInstance(a, b)
    w = gaussian_witness(inst, make_solution(inst, X, Y))
    assert (w.r, w.s) == rs
    assert w.check(inst, X)


def test_witness_identity_79():
    assert GaussianInteger(1, 3) * GaussianInteger(1, -2) ** 4 == GaussianInteger(-79, 3)


def test_gap_examples():
    assert gap_holds(Fraction(1), 5, 998)
    assert not gap_holds(Fraction(1), 5, 997)
    inst = EquationInstance(1, 3)
    s1 = make_solution(inst, 1, 1)
    s2 = make_solution(inst, 79, 5)
    with pytest.raises(HypothesisNotMet):
        check_gap(inst, s1, s2)


def test_lower_bound_reports():
    inst = EquationInstance(1, 3)
    rep = y_lower_bound_report(inst, make_solution(inst, 79, 5))
    assert rep.part_a and rep.y_primes == (5,) and not rep.violations
    inst = EquationInstance(31, 5)
    rep = y_lower_bound_report(inst, make_solution(inst, 3076289, 313))
    assert rep.part_a and rep.part_c and rep.part_c_bound == Fraction(25, 2)
    inst = EquationInstance(19, 9)
    big = [s for s in solve_all(inst, 50) if s.coprime and s.Y > 1]
    assert [s.Y for s in big] == [41]
    rep = y_lower_bound_report(inst, big[0])
    assert rep.part_c and rep.part_c_bound == Fraction(81, 2)


def test_c2_constants():
    assert c2_of_c1(Fraction(4, 100)).gt(Fraction(399, 100)) is True
    assert c2_of_c1(Fraction(1, 10 ** 9)).gt(Fraction(39999, 10000)) is True
    for bad in (0, 1, Fraction(3, 2)):
        with pytest.raises(ValueError):
            c2_of_c1(bad)


def test_decompose_examples():
    inst = EquationInstance(1, 3)
    dec = decompose_family(inst, make_solution(inst, 79, 5))
    assert dec.b1 * dec.b2 * (2 if dec.doubled and dec.b1 * dec.b2 != 3 else 1) == 3
    assert dec.r ** 2 + dec.s ** 2 == 5
    inst = EquationInstance(31, 5)
    dec = decompose_family(inst, make_solution(inst, 3076289, 313))
    assert dec.b1 * dec.b2 in (5, 5 / 2)
    assert (dec.r, dec.s) == (12, 13)
    with pytest.raises(HypothesisNotMet):
        decompose_family(inst, make_solution(inst, 31, 1))


def test_theorem_counts():
    inst = EquationInstance(31, 5)
    cc = theorem_counts(inst, solve_all(inst, 400))
    assert (cc.coprime, cc.total, cc.prime_power, cc.violated) == (2, 3, True, False)


@given(st.integers(0, 10 ** 4))
def test_solutions_satisfy_equation(k):
    a, b = 1 + k % 97, 1 + k // 97
    try:
        inst = EquationInstance(a, b)
    except ValueError:
        return
    for s in solve_all(inst, 200):
        assert s.satisfies(inst)
    if pell_data(inst.D).t1u1 is not None:
        co = solve_coprime(inst, 200)
        assert co[0].key == (a, 1) or co[0].Y == 1
        for s in co:
            assert gaussian_witness(inst, s).check(inst, s.X)
