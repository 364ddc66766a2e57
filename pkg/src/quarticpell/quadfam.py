"""Coprime solutions of x^2 - D y^2 = -b^2 and their unit-orbit families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from sympy.ntheory.residue_ntheory import sqrt_mod_iter

from .arith import is_perfect_square, prime_power_base
from .pell import PellData, half_mul, pqa, solve_pell

Pair = tuple[int, int]


@dataclass(frozen=True)
class EquationInstance:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("a and b must be positive")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"gcd({self.a}, {self.b}) != 1")
        if is_perfect_square(self.D):
            raise ValueError(f"a^2 + b^2 = {self.D} is a perfect square")

    @property
    def D(self) -> int:
        return self.a * self.a + self.b * self.b

    @property
    def N(self) -> int:
        return -self.b * self.b


@lru_cache(maxsize=4096)
def pell_data(D: int) -> PellData:
    return solve_pell(D)


def same_family(D: int, s1: Pair, s2: Pair, N: int) -> bool:
    """Whether s1/s2 is a norm-one unit of the order generated by alpha.

    Both pairs solve x^2 - D y^2 = N. The quotient is (t + u sqrt D)/2 with
    t = 2(x1 x2 - D y1 y2)/N and u = 2(y1 x2 - x1 y2)/N; it is such a unit
    exactly when t and u are integers of equal parity. Those units are the
    +-alpha^{2k}, alpha being the minimal solution of norm -4.
    """
    (x1, y1), (x2, y2) = s1, s2
    tn, un = 2 * (x1 * x2 - D * y1 * y2), 2 * (y1 * x2 - x1 * y2)
    if tn % N or un % N:
        return False
    return (tn // N - un // N) % 2 == 0


def primitive_classes(D: int, N: int) -> list[Pair]:
    """One primitive solution per class of x^2 - D y^2 = N (N < 0, |N| > 1
    allowed), via the continued fraction of (z + sqrt D)/|N| for every square
    root z of D modulo |N|. Classes here are taken under the norm-one units of
    Z[sqrt D]."""
    m = abs(N)
    pd = pell_data(D)
    if m == 1:
        return [pd.fund_minus] if (N == -1 and pd.fund_minus) else ([(1, 0)] if N == 1 else [])
    out = []
    for z in sorted(set(sqrt_mod_iter(D % m, m))):
        if 2 * z > m:
            z -= m
        sol = _class_rep(D, N, z, pd)
        if sol is not None:
            out.append(sol)
    return out


def _class_rep(D: int, N: int, z: int, pd: PellData) -> Optional[Pair]:
    m = abs(N)
    seen = set()
    prev = None
    for st in pqa(z, m, D):
        if st.i >= 1 and abs(st.Q) == 1:
            G, B = prev
            val = G * G - D * B * B
            if val == N:
                return (abs(G), abs(B)) if B else (G, B)
            if val == -N and pd.fund_minus is not None:
                t, u = pd.fund_minus
                x, y = G * t + B * u * D, G * u + B * t
                return (abs(x), abs(y))
            return None
        key = (st.P, st.Q)
        if st.i >= 1 and key in seen:
            return None
        seen.add(key)
        prev = (st.G, st.B)


def _signed_reps(reps: list[Pair]) -> list[Pair]:
    # each class and its conjugate (y -> -y); x sign folds into the +- of the unit
    out = []
    for x, y in reps:
        for s in ((x, y), (-x, y)):
            if s not in out:
                out.append(s)
    return out


def group_orbits(D: int, N: int, sols: list[Pair]) -> list[Pair]:
    """Collapse solutions (with y > 0) into one representative per +-alpha^2 orbit."""
    reps: list[Pair] = []
    for s in sols:
        if not any(same_family(D, s, r, N) for r in reps):
            reps.append(s)
    return reps


def nagell_ymax(D: int, N: int) -> int:
    """Upper bound on y for a fundamental solution of x^2 - D y^2 = N, N < 0."""
    x1, y1 = pell_data(D).fund_plus
    return math.isqrt(y1 * y1 * (-N) // (2 * (x1 - 1)))


def brute_coprime_solutions(D: int, N: int, ymax: int) -> list[Pair]:
    """All (x, y) with 0 < y <= ymax, gcd(x, y) = 1 and x^2 - D y^2 = N, both signs of x."""
    out = []
    for y in range(1, ymax + 1):
        v = D * y * y + N
        if v < 0:
            continue
        x = math.isqrt(v)
        if x * x == v and math.gcd(x, y) == 1:
            out.append((x, y))
            if x:
                out.append((-x, y))
    return out


@dataclass(frozen=True)
class QuadFamilyReport:
    a: int
    b: int
    D: int
    representatives: tuple[Pair, ...]
    single_family: bool
    lemma31_applicable: bool
    method: str
    extra: tuple[Pair, ...] = field(default=())  # orbits beyond those of (+-a, 1)


BRUTE_LIMIT = 200_000


def enumerate_families(inst: EquationInstance, method: str = "auto") -> QuadFamilyReport:
    """Orbits of coprime solutions of x^2 - D y^2 = -b^2 under +-alpha^2.

    method: "brute" scans y up to the classical bound for fundamental
    solutions, "lmm" runs one continued fraction per square root of D mod b^2,
    "auto" uses brute when the bound is small.
    """
    D, N = inst.D, inst.N
    pd = pell_data(D)
    if pd.t1u1 is None:
        raise ValueError(f"x^2 - {D} y^2 = -4 is unsolvable: families are not defined")
    if method == "auto":
        method = "brute" if nagell_ymax(D, N) <= BRUTE_LIMIT else "lmm"
    if method == "brute":
        sols = brute_coprime_solutions(D, N, max(1, nagell_ymax(D, N)))
    elif method == "lmm":
        sols = _signed_reps(primitive_classes(D, N))
    else:
        raise ValueError(f"unknown method {method!r}")
    base = [(inst.a, 1), (-inst.a, 1)]
    reps = group_orbits(D, N, base + sols)
    extra = tuple(r for r in reps if not any(same_family(D, r, s, N) for s in base))
    return QuadFamilyReport(inst.a, inst.b, D, tuple(reps), not extra,
                            lemma31_applies(inst), method, extra)


def prime_power_shape(b: int) -> bool:
    """b = p^m or 2 p^m with p prime, m >= 0."""
    if prime_power_base(b) is not None:
        return True
    return b % 2 == 0 and prime_power_base(b // 2) is not None


def lemma31_applies(inst: EquationInstance) -> bool:
    return prime_power_shape(inst.b) and pell_data(inst.D).neg_pell


def family_orbit_closed(inst: EquationInstance, report: QuadFamilyReport) -> bool:
    """Multiplying any representative by alpha^2 (repeated until the result is
    integral again) lands in an orbit already listed."""
    pd = pell_data(inst.D)
    D, N = inst.D, inst.N
    a2 = half_mul(D, pd.t1u1, pd.t1u1)
    for x, y in report.representatives:
        cur = half_mul(D, (2 * x, 2 * y), a2)
        while cur[0] % 2 or cur[1] % 2:
            cur = half_mul(D, cur, a2)
        img = (cur[0] // 2, cur[1] // 2)
        if img[0] ** 2 - D * img[1] ** 2 != N:
            return False
        if not any(same_family(D, img, r, N) for r in report.representatives):
            return False
    return True
