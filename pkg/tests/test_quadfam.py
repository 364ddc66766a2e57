import math

import pytest
from hypothesis import given, strategies as st

from quarticpell.quadfam import (EquationInstance, brute_coprime_solutions, enumerate_families,
                                 family_orbit_closed, lemma31_applies, prime_power_shape, nagell_ymax,
                                 pell_data,
                                 primitive_classes, same_family)


def coprime_pairs(max_ab=60):
    return st.tuples(st.integers(1, max_ab), st.integers(1, max_ab)).filter(
        lambda p: math.gcd(*p) == 1 and math.isqrt(p[0] ** 2 + p[1] ** 2) ** 2 != p[0] ** 2 + p[1] ** 2)


def test_instance_validation():
    assert EquationInstance(31, 5).D == 986
    assert EquationInstance(31, 5).N == -25
    for a, b in ((2, 4), (3, 4), (0, 1)):
        with pytest.raises(ValueError):
            EquationInstance(a, b)


@pytest.mark.parametrize("a, b", [(1, 1), (31, 5), (1, 7), (1, 3), (19, 9)])
def test_single_family_examples(a, b):
    rep = enumerate_families(EquationInstance(a, b))
    assert rep.single_family
    assert rep.extra == ()


def test_two_families():
    # 59^2 - 145 * 5^2 = -144 lies outside the orbits of (+-1, 1)
    for method in ("brute", "lmm"):
        rep = enumerate_families(EquationInstance(1, 12), method)
        assert not rep.single_family
        assert any(same_family(145, (59, 5), r, -144) for r in rep.extra)


@pytest.mark.parametrize("a, b, expect", [(31, 5, True), (1, 1, True), (2, 15, False),
                                          (7, 15, False), (1, 18, True)])
def test_prime_power_shape(a, b, expect):
    inst = EquationInstance(a, b)
    assert prime_power_shape(b) == (b != 15)
    assert lemma31_applies(inst) == (expect and pell_data(inst.D).neg_pell)


def test_same_family_alpha_square():
    # (1,1) and (7,5) on x^2 - 2y^2 = -1 differ by (3 + 2 sqrt 2)
    assert same_family(2, (1, 1), (7, 5), -1)
    assert same_family(2, (1, 1), (1, 1), -1)


@given(coprime_pairs())
def test_lmm_agrees_with_brute(p):
    inst = EquationInstance(*p)
    if pell_data(inst.D).t1u1 is None:
        with pytest.raises(ValueError):
            enumerate_families(inst)
        return
    if nagell_ymax(inst.D, inst.N) > 20000:
        return
    brute = enumerate_families(inst, "brute")
    lmm = enumerate_families(inst, "lmm")
    assert brute.single_family == lmm.single_family
    assert len(brute.representatives) == len(lmm.representatives)
    for r in lmm.representatives:
        assert any(same_family(inst.D, r, s, inst.N) for s in brute.representatives)
    for x, y in brute.representatives:
        assert x * x - inst.D * y * y == inst.N and math.gcd(x, y) == 1
    assert family_orbit_closed(inst, brute)


@given(coprime_pairs(40))
def test_class_reps_solve(p):
    inst = EquationInstance(*p)
    for x, y in primitive_classes(inst.D, inst.N):
        assert x * x - inst.D * y * y == inst.N


def test_brute_lists_both_signs():
    sols = brute_coprime_solutions(10, -9, 5)
    assert (1, 1) in sols and (-1, 1) in sols
    assert all(x * x - 10 * y * y == -9 for x, y in sols)
