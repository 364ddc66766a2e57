"""Continued fractions and the Pell equations x^2 - D y^2 = 1, -1, -4."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .arith import is_perfect_square

Pair = tuple[int, int]


def _check_d(D: int) -> None:
    if D <= 1:
        raise ValueError(f"D must exceed 1, got {D}")
    if is_perfect_square(D):
        raise ValueError(f"D = {D} is a perfect square")


def continued_fraction_sqrt(D: int) -> tuple[int, tuple[int, ...]]:
    """(a0, period) with sqrt(D) = [a0; period repeated]."""
    _check_d(D)
    a0 = math.isqrt(D)
    m, d, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return a0, tuple(period)


@dataclass(frozen=True)
class PQaStep:
    i: int
    P: int
    Q: int
    a: int
    B: int
    G: int


def pqa(P0: int, Q0: int, D: int) -> Iterator[PQaStep]:
    """Continued fraction of (P0 + sqrt D)/Q0 with the running G, B numerators.

    Requires Q0 | D - P0^2. Every step satisfies
    G_{i-1}^2 - D B_{i-1}^2 = (-1)^i Q_i Q0.
    Infinite; callers stop it.
    """
    if Q0 == 0 or (D - P0 * P0) % Q0:
        raise ValueError("PQa needs Q0 dividing D - P0^2")
    s = math.isqrt(D)
    P, Q = P0, Q0
    B2, B1 = 1, 0
    G2, G1 = -P0, Q0
    i = 0
    while True:
        if Q > 0:
            a = (P + s) // Q
        else:
            a = -((P + s) // -Q) - 1
        B2, B1 = B1, a * B1 + B2
        G2, G1 = G1, a * G1 + G2
        yield PQaStep(i, P, Q, a, B1, G1)
        P = a * Q - P
        Q = (D - P * P) // Q
        i += 1


def _first_q(P0: int, Q0: int, D: int, targets: tuple[int, ...], limit: int) -> Optional[tuple[int, Pair]]:
    """First i >= 1 with Q_i in targets; returns (i, (G_{i-1}, B_{i-1}))."""
    prev = None
    seen = set()
    for st in pqa(P0, Q0, D):
        if st.i >= 1 and st.Q in targets:
            return st.i, prev
        key = (st.P, st.Q)
        if st.i >= 1 and key in seen:
            return None
        seen.add(key)
        if st.i > limit:
            return None
        prev = (st.G, st.B)


@dataclass(frozen=True)
class PellData:
    D: int
    fund_plus: Pair
    fund_minus: Optional[Pair]
    t1u1: Optional[Pair]
    period: int

    @property
    def neg_pell(self) -> bool:
        return self.fund_minus is not None

    @property
    def has_alpha(self) -> bool:
        return self.t1u1 is not None


def _t1u1(D: int, fund_minus: Optional[Pair]) -> Optional[Pair]:
    if D % 4 == 0:
        # x^2 - D y^2 = -4 forces x even: (x/2)^2 - (D/4) y^2 = -1
        sub = solve_pell(D // 4).fund_minus
        return None if sub is None else (2 * sub[0], sub[1])
    if D % 8 == 5:
        # (1 + sqrt D)/2 expansion; its first Q = 2 gives the unit of the order
        hit = _first_q(1, 2, D, (2,), 4 * D + 100)
        if hit is None:
            raise ArithmeticError(f"no period found for (1+sqrt {D})/2")
        i, (G, B) = hit
        return (G, B) if i % 2 == 1 else None
    # odd solutions are impossible here, so every solution is twice one of -1
    return None if fund_minus is None else (2 * fund_minus[0], 2 * fund_minus[1])


def solve_pell(D: int) -> PellData:
    _check_d(D)
    hit = _first_q(0, 1, D, (1,), 4 * D + 100)
    if hit is None:
        raise ArithmeticError(f"no period found for sqrt {D}")
    i, (x, y) = hit
    if i % 2 == 0:
        plus, minus = (x, y), None
    else:
        minus = (x, y)
        plus = (x * x + D * y * y, 2 * x * y)
    return PellData(D, plus, minus, _t1u1(D, minus), i)


@dataclass(frozen=True)
class PellPower:
    k: int
    T: int
    U: int


def half_mul(D: int, x: Pair, y: Pair) -> Pair:
    """Product of (t1 + u1 sqrt D)/2 and (t2 + u2 sqrt D)/2 in the same form."""
    t1, u1 = x
    t2, u2 = y
    t, u = t1 * t2 + D * u1 * u2, t1 * u2 + t2 * u1
    if t % 2 or u % 2:
        raise ArithmeticError("product left the order")
    return (t // 2, u // 2)


def alpha_power(pd: PellData, k: int) -> PellPower:
    """alpha^k with alpha = (T1 + U1 sqrt D)/2, by binary powering."""
    if pd.t1u1 is None:
        raise ValueError(f"x^2 - {pd.D} y^2 = -4 is unsolvable: no alpha")
    if k < 0:
        raise ValueError("k must be non-negative")
    out, base, e = (2, 0), pd.t1u1, k
    while e:
        if e & 1:
            out = half_mul(pd.D, out, base)
        base = half_mul(pd.D, base, base)
        e >>= 1
    return PellPower(k, out[0], out[1])


def alpha_powers(pd: PellData, kmax: int) -> list[PellPower]:
    """alpha^0 .. alpha^kmax by repeated multiplication."""
    if pd.t1u1 is None:
        raise ValueError(f"x^2 - {pd.D} y^2 = -4 is unsolvable: no alpha")
    out = [PellPower(0, 2, 0)]
    cur = (2, 0)
    for k in range(1, kmax + 1):
        cur = half_mul(pd.D, cur, pd.t1u1)
        out.append(PellPower(k, cur[0], cur[1]))
    return out


@dataclass(frozen=True)
class RecurrenceReport:
    D: int
    kmax: int
    coefficient: Optional[int]   # c with U_{k+2} = c*T1*U_{k+1} + U_k, if any of {1, 2} fits
    holds_unit: bool
    holds_doubled: bool


def unit_recurrence(pd: PellData, kmax: int = 50) -> RecurrenceReport:
    """Which of U_{k+2} = T1 U_{k+1} + U_k and U_{k+2} = 2 T1 U_{k+1} + U_k the
    exact powers of alpha satisfy (T_k obeys the same law)."""
    pw = alpha_powers(pd, kmax + 2)
    T1 = pd.t1u1[0]

    def fits(c):
        return all(pw[k + 2].U == c * T1 * pw[k + 1].U + pw[k].U
                   and pw[k + 2].T == c * T1 * pw[k + 1].T + pw[k].T
                   for k in range(kmax + 1))

    one, two = fits(1), fits(2)
    return RecurrenceReport(pd.D, kmax, 1 if one else (2 if two else None), one, two)


def brute_minimal(D: int, N: int, ymax: int) -> Optional[Pair]:
    """Smallest y in 1..ymax with D y^2 + N a square; returns (x, y)."""
    for y in range(1, ymax + 1):
        v = D * y * y + N
        if v >= 0:
            x = math.isqrt(v)
            if x * x == v and x > 0:
                return (x, y)
    return None
