"""Hypergeometric approximants to omega^(1/4) and the inequality chains built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .arith import (DEFAULT_PRECISION, GaussianInteger, GaussianRational, HighPrecisionComplex,
                    decide, exact_sqrt, hp_pi, hpc, padic_val)
from .errors import HypothesisNotMet, PrecisionExhausted, TheoremViolation

# decimal constants of the argument, kept exact
C41 = Fraction(83, 100)
C42 = Fraction(2, 10)
K0 = Fraction(89, 100)
LOG_D4 = Fraction(168, 100)          # script D_4 = e^1.68
D_FACTOR = Fraction(1072, 1000)      # 4/|1 + sqrt w|^2 bound
ELL_FACTOR = Fraction(2, 10)         # ell_0 = 0.2 |phi|
Q_UPPER = Fraction(1074, 100)
E_LOWER = Fraction(372, 1000)


# ------------------------------------------------------------ polynomials


@dataclass(frozen=True)
class ApproxPolynomial:
    m: int
    n: int
    r: int
    coeffs: tuple[Fraction, ...]

    @property
    def nu(self) -> Fraction:
        return Fraction(self.m, self.n)

    def y_coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients of z^r X(1/z)."""
        return tuple(reversed(self.coeffs))

    def evaluate(self, z, reverse: bool = False):
        cs = self.y_coeffs() if reverse else self.coeffs
        acc = None
        for c in reversed(cs):
            acc = c if acc is None else acc * z + c
        return acc


@lru_cache(maxsize=None)
def x_polynomial(m: int, n: int, r: int) -> ApproxPolynomial:
    """Coefficients of 2F1(-r - nu, -r; 1 - nu; z), nu = m/n."""
    if not 0 < m < n or math.gcd(m, n) != 1 or r < 0:
        raise ValueError(f"need 0 < m < n coprime and r >= 0, got {(m, n, r)}")
    nu = Fraction(m, n)
    cs = [Fraction(1)]
    for k in range(r):
        cs.append(cs[-1] * (-r - nu + k) * (-r + k) / ((1 - nu + k) * (k + 1)))
    return ApproxPolynomial(m, n, r, tuple(cs))


def _valid_m(n: int, m: Optional[int] = None) -> list[int]:
    if m is not None:
        if not 0 < m < n or math.gcd(m, n) != 1:
            raise ValueError(f"m = {m} is not a unit mod {n}")
        return [m]
    return [k for k in range(1, n) if math.gcd(k, n) == 1]


@lru_cache(maxsize=None)
def big_d(n: int, r: int, m: Optional[int] = None) -> int:
    """Least D with D * X_{m,n,r} integral, for one m or for every valid m."""
    out = 1
    for m in _valid_m(n, m):
        for c in x_polynomial(m, n, r).coeffs:
            out = math.lcm(out, c.denominator)
    return out


@lru_cache(maxsize=None)
def _shifted_coeffs(m: int, n: int, r: int, D: int) -> tuple[int, ...]:
    # D * S_j with X(1 - t) = sum_j (-1)^j S_j t^j, S_j = sum_k c_k C(k, j)
    e = [int(c * D) for c in x_polynomial(m, n, r).coeffs]
    return tuple(sum(e[k] * math.comb(k, j) for k in range(j, r + 1)) for j in range(r + 1))


@lru_cache(maxsize=None)
def n_cap(d: int, n: int, r: int, m: Optional[int] = None) -> int:
    """Largest N with (D/N) X_{m,n,r}(1 - sqrt(d) x) in Z[sqrt d][x], D = big_d(n, r, m)."""
    # when |d| = s^2 the square root is s or s*i and divisibility is read in Z[i]
    if d == 0:
        raise ValueError("d must be nonzero")
    s = exact_sqrt(abs(d))
    D = big_d(n, r, m)
    g = 0
    for mm in _valid_m(n, m):
        for j, w in enumerate(_shifted_coeffs(mm, n, r, D)):
            g = math.gcd(g, w * (s ** j if s is not None else d ** (j // 2)))
    return g


@dataclass(frozen=True)
class PrimePowerProduct:
    """prod p^e with rational exponents e."""

    factors: tuple[tuple[int, Fraction], ...]

    def squared(self) -> Fraction:
        out = Fraction(1)
        for p, e in self.factors:
            if (2 * e).denominator != 1:
                raise ValueError("square is not rational")
            out *= Fraction(p) ** int(2 * e)
        return out

    def power(self, r: int) -> tuple[Fraction, Fraction]:
        """(q, s) with value^r = q * sqrt(s), both rational."""
        q, s = Fraction(1), Fraction(1)
        for p, e in self.factors:
            num = e * r * 2
            if num.denominator != 1:
                raise ValueError("exponent not a half-integer")
            num = int(num)
            q *= Fraction(p) ** (num // 2)
            if num % 2:
                s *= p
        return q, s

    def value(self, prec: int = DEFAULT_PRECISION) -> HighPrecisionComplex:
        q, s = self.power(1)
        v = hpc(q, prec)
        return v * hpc(s, prec).sqrt() if s != 1 else v

    def __float__(self):
        return math.prod(p ** float(e) for p, e in self.factors)


def script_n(d: int, n: int) -> PrimePowerProduct:
    out = []
    for p in sorted(q for q in range(2, n + 1) if n % q == 0 and all(q % t for t in range(2, q))):
        e = min(Fraction(padic_val(p, d), 2), padic_val(p, n) + Fraction(1, p - 1))
        out.append((p, e))
    return PrimePowerProduct(tuple(out))


@dataclass(frozen=True)
class DenominatorData:
    r: int
    d: int
    D4r: int
    Nd4r: int
    script_n: PrimePowerProduct


def denominator_data(d: int, r: int, m: Optional[int] = 1) -> DenominatorData:
    """The approximants only use m = 1; pass m=None for the joint values."""
    return DenominatorData(r, d, big_d(4, r, m), n_cap(d, 4, r, m), script_n(d, 4))


# ------- denominator bounds


def gamma_ratio_1(r: int) -> Fraction:
    """Gamma(3/4) r! / Gamma(r + 3/4)."""
    out = Fraction(1)
    for k in range(1, r + 1):
        out *= Fraction(k) / (k - Fraction(1, 4))
    return out


def gamma_ratio_2(r: int) -> Fraction:
    """Gamma(r + 5/4) / (Gamma(1/4) r!)."""
    out = Fraction(1)
    for k in range(r + 1):
        out *= k + Fraction(1, 4)
    return out / math.factorial(r)


def e_power(x: Fraction, prec: int) -> HighPrecisionComplex:
    return hpc(x, prec).exp()


@dataclass(frozen=True)
class BoundRow:
    r: int
    D4r: int
    Nd4r: int
    lhs1: Fraction
    lhs2: Fraction
    ratio1: HighPrecisionComplex      # lhs * (scriptN / e^1.68)^r
    ratio2: HighPrecisionComplex


@dataclass(frozen=True)
class BoundReport:
    d: int
    rows: tuple[BoundRow, ...]
    argmax1: int
    argmax2: int
    max1: float
    max2: float
    bound1_ok: bool                   # ratio1 < 0.83 for all 1 <= r <= r_max
    bound2_ok: bool
    r0_flag: tuple[bool, bool]        # whether r = 0 meets the two bounds
    first_failure: Optional[int]

    @property
    def ok(self) -> bool:
        return self.bound1_ok and self.bound2_ok and self.argmax1 == 3 and self.argmax2 == 3


def _sure(verdict: Optional[bool], what: str) -> bool:
    if verdict is None:
        raise PrecisionExhausted(f"could not decide {what}; raise the precision")
    return verdict


def _argmax(vals: list[HighPrecisionComplex], start: int) -> int:
    best = start
    for i in range(start + 1, len(vals)):
        if _sure(vals[i].gt(vals[best]), f"ordering at r = {i}"):
            best = i
    return best


# d classes met in the approximation argument, by the 2-adic valuation of d
D_CLASSES = {
    "ab odd": -2,
    "a even, b odd": -4,
    "b = 2": -16,
    "b = 2^m, m >= 2": -64,
}


def verify_lemma24(r_max: int = 155, d: int = -2, prec: int = DEFAULT_PRECISION,
                   m: Optional[int] = 1) -> BoundReport:
    """Both normalized left-hand sides for r = 0..r_max and one class of d.

    m=None uses the denominators taken jointly over m = 1, 3; the bounds
    then fail from small r on."""
    if r_max < 3:
        raise ValueError("r_max must be at least 3")
    sn = script_n(d, 4)
    step = sn.value(prec) / e_power(LOG_D4, prec)
    rows = []
    scale = hpc(1, prec)
    for r in range(r_max + 1):
        D, N = big_d(4, r, m), n_cap(d, 4, r, m)
        l1, l2 = gamma_ratio_1(r) * Fraction(D, N), gamma_ratio_2(r) * Fraction(D, N)
        rows.append(BoundRow(r, D, N, l1, l2, scale * l1, scale * l2))
        scale = scale * step
    a1 = _argmax([row.ratio1 for row in rows], 1)
    a2 = _argmax([row.ratio2 for row in rows], 1)
    fail = None
    ok1 = ok2 = True
    for row in rows[1:]:
        g1 = _sure(row.ratio1.lt(C41), f"first bound at r = {row.r}")
        g2 = _sure(row.ratio2.lt(C42), f"second bound at r = {row.r}")
        ok1, ok2 = ok1 and g1, ok2 and g2
        if fail is None and not (g1 and g2):
            fail = row.r
    r0 = (rows[0].ratio1.lt(C41) is True, rows[0].ratio2.lt(C42) is True)
    return BoundReport(d, tuple(rows), a1, a2, rows[a1].ratio1.mid().real,
                         rows[a2].ratio2.mid().real, ok1, ok2, r0, fail)


# ------------------------------------------------------------ 2F1 balls


def _abs_upper(z: HighPrecisionComplex) -> Fraction:
    m = z.abs()
    return Fraction(m.mid().real) * (1 + Fraction(1, 10 ** 12)) + Fraction(m.radius()) * 2


def hyp2f1_ball(a: Fraction, b: Fraction, c: Fraction, z: HighPrecisionComplex,
                max_terms: int = 100000) -> HighPrecisionComplex:
    """Gauss series for 0 < a <= c, b > 0 and |z| < 1, with a rigorous tail bound."""
    if not (0 < a <= c and b > 0):
        raise ValueError("needs 0 < a <= c and b > 0")
    zmax = _abs_upper(z)
    if zmax >= 1:
        raise ValueError("series needs |z| < 1")
    prec = z.prec
    lz = math.log2(zmax)
    total = hpc(1, prec)
    term = hpc(1, prec)
    logmag = 0.0               # log2 of an upper bound on |term|, with slack below
    for n in range(max_terms):
        coef = (a + n) * (b + n) / ((c + n) * (n + 1))
        rho = float((b + n) / (n + 1) * zmax)      # bounds every later ratio
        logmag += math.log2(coef) + lz + 1e-12
        term = term * z * coef
        if rho < 1 and logmag - math.log2(1 - rho) < -(prec + 10):
            tail = hpc(Fraction(1, 2 ** (prec + 8)), prec)
            return total + term + HighPrecisionComplex(tail.im, tail.im, tail.re, prec)
        total = total + term
    raise PrecisionExhausted("2F1 series did not converge")


# ------------------------------------------------------------ contexts


@dataclass(frozen=True)
class ApproximationContext:
    a: int
    b: int
    X1: int
    Y1: int
    u1: int
    u2: int
    g1: int
    g3: int
    g_sq: Fraction                 # g^2 = g1^2 / g3
    g_gauss: GaussianInteger       # same modulus as g, keeps p_r and q_r in Z[i]
    d: int                         # -u2^2 / g^2
    script_n: PrimePowerProduct
    omega: GaussianRational        # (u1 + u2 i)/(u1 - u2 i)
    phi: HighPrecisionComplex
    tan_phi: Fraction              # exact tan(phi) = 2 s b X1 / (X1^2 - b^2)
    tan_phi_stated: Fraction       # 2b/X1
    k0: Fraction
    ell0: HighPrecisionComplex     # 0.2 |phi|
    ell0_upper: Fraction           # 0.4 b / X1
    Q: HighPrecisionComplex
    E: HighPrecisionComplex
    Q_upper: HighPrecisionComplex    # 10.74 sqrt(D) Y1^2
    E_lower: HighPrecisionComplex     # 0.372 sqrt(D) Y1^2 / b^2
    prec: int

    @property
    def D(self) -> int:
        return self.a * self.a + self.b * self.b

    @property
    def sigma(self) -> GaussianInteger:
        return GaussianInteger(self.u1 // 2, -self.u2 // 2)

    @property
    def u(self) -> GaussianInteger:
        return GaussianInteger(self.u1 // 2, self.u2 // 2)

    def theta(self, prec: Optional[int] = None) -> HighPrecisionComplex:
        """omega^(1/4) on the principal branch."""
        return (self.phi * Fraction(1, 4)).expi()

    def abs_g(self) -> HighPrecisionComplex:
        return hpc(self.g_sq, self.prec).sqrt()

    def with_precision(self, prec: int) -> "ApproximationContext":
        if prec == self.prec:
            return self
        return build_context(self.a, self.b, self.X1, self.Y1, 1 if self.u2 > 0 else -1, prec)

    def precision_for(self, r: int) -> int:
        """Bits needed so that q_r theta - p_r survives the cancellation."""
        q_bits = int(self.Q.mid().real).bit_length() + 1
        e_bits = int(self.E.mid().real).bit_length() + 1
        return max(self.prec, DEFAULT_PRECISION + r * (q_bits + e_bits) + 64)


def build_context(a: int, b: int, X1: int, Y1: int, u2_sign: int = 1,
                  prec: int = DEFAULT_PRECISION) -> ApproximationContext:
    D = a * a + b * b
    if X1 * X1 - D * Y1 ** 4 != -b * b or math.gcd(X1, Y1) != 1 or X1 <= 0:
        raise HypothesisNotMet(f"({X1}, {Y1}) is not a coprime solution for (a, b) = ({a}, {b})")
    if Y1 < 5:
        raise HypothesisNotMet(f"Y1 = {Y1} < 5, E > 1 is not guaranteed")
    if u2_sign not in (1, -1):
        raise ValueError("u2_sign must be +1 or -1")
    u1, u2 = 2 * X1, 2 * u2_sign * b
    g1 = math.gcd(u1, u2)
    g3 = 2 if ((u1 - u2) // g1) % 2 == 0 else 4
    g_sq = Fraction(g1 * g1, g3)
    if g_sq == 2:
        g_gauss = GaussianInteger(1, 1)
    elif g_sq == 1:
        g_gauss = GaussianInteger(1)
    else:
        raise TheoremViolation(f"g^2 = {g_sq}, expected 1 or 2")
    d = -u2 * u2 / g_sq
    if d.denominator != 1:
        raise TheoremViolation("d is not an integer")
    d = int(d)
    sn = script_n(d, 4)
    u = GaussianInteger(X1, u2_sign * b)
    omega = GaussianRational.of(u) / GaussianRational.of(u.conj())
    if omega.norm() != 1:
        raise TheoremViolation("|omega| != 1")
    phi = hpc(omega, prec).arg()
    tan_phi = Fraction(2 * u2_sign * b * X1, X1 * X1 - b * b)
    root = hpc(u1 * u1 + u2 * u2, prec).sqrt()
    top = root + u1
    absg = hpc(g_sq, prec).sqrt()
    scale = absg * sn.value(prec)
    d4 = e_power(LOG_D4, prec)
    Q = d4 * top / scale
    E = scale * top / (d4 * (u2 * u2))
    sqD = hpc(D, prec).sqrt()
    return ApproximationContext(
        a, b, X1, Y1, u1, u2, g1, g3, g_sq, g_gauss, d, sn, omega, phi, tan_phi,
        Fraction(2 * b, X1), K0, phi.abs() * ELL_FACTOR, Fraction(4 * b, 10 * X1),
        Q, E, sqD * (Q_UPPER * Y1 * Y1), sqD * (E_LOWER * Y1 * Y1 / (b * b)), prec)


@dataclass(frozen=True)
class ContextCheck:
    E_gt_1: bool
    Q_gt_1: bool
    Q_below_ub2: bool
    E_above_lb: bool
    phi_below_tan: bool            # |phi| <= 2b/X1
    omega_near_1: bool             # |omega - 1| < 1
    k0_ok: bool                    # 1.072 * 0.83 < 0.89

    @property
    def ok(self) -> bool:
        return all(vars(self).values())


def check_context(ctx: ApproximationContext) -> ContextCheck:
    w1 = hpc(ctx.omega - 1, ctx.prec).abs()
    return ContextCheck(
        _sure(ctx.E.gt(1), "E > 1"), _sure(ctx.Q.gt(1), "Q > 1"),
        _sure(ctx.Q.lt(ctx.Q_upper), "Q bound"), _sure(ctx.E.gt(ctx.E_lower), "E bound"),
        _sure(ctx.phi.abs().lt(ctx.tan_phi_stated), "|phi| < 2b/X1"),
        _sure(w1.lt(1), "|omega - 1| < 1"),
        D_FACTOR * C41 < K0)


# ------------------------------------------------------------ approximants


@dataclass(frozen=True)
class Approximant:
    r: int
    p: GaussianInteger
    q: GaussianInteger
    R_bound: HighPrecisionComplex  # remainder bound carried through the scaling


def _scaled_sum(ctx: ApproximationContext, r: int, reverse: bool) -> GaussianInteger:
    D = big_d(4, r, 1)
    N = n_cap(ctx.d, 4, r, 1)
    cs = [int(c * D) for c in x_polynomial(1, 4, r).coeffs]
    u, s = ctx.u, ctx.sigma
    upow = [GaussianInteger(1)]
    spow = [GaussianInteger(1)]
    for _ in range(r):
        upow.append(upow[-1] * u)
        spow.append(spow[-1] * s)
    acc = GaussianInteger(0)
    for k, c in enumerate(cs):
        acc = acc + (upow[r - k] * spow[k] if reverse else upow[k] * spow[r - k]) * c
    try:
        return acc.exact_div(ctx.g_gauss ** r * N)
    except ArithmeticError:
        raise TheoremViolation(f"approximant at r = {r} is not a Gaussian integer "
                               f"(N = {N}, d = {ctx.d})") from None


def approximants(ctx: ApproximationContext, r: int) -> Approximant:
    """p_r and q_r for theta = omega^(1/4), scaled into Z[i]."""
    if r < 0:
        raise ValueError("r must be non-negative")
    p = _scaled_sum(ctx, r, reverse=False)
    q = _scaled_sum(ctx, r, reverse=True)
    prec = ctx.prec
    one_minus_sqrt = _one_minus_sqrt_sq(ctx)
    size = hpc(ctx.u.norm(), prec).sqrt() / ctx.abs_g()
    DN = Fraction(big_d(4, r, 1), n_cap(ctx.d, 4, r, 1))
    bound = ctx.phi.abs() * (gamma_ratio_2(r) * DN) * (one_minus_sqrt * size) ** r
    return Approximant(r, p, q, bound)


def _one_minus_sqrt_sq(ctx: ApproximationContext) -> HighPrecisionComplex:
    # |1 - sqrt(omega)|^2 = 2(|u| - X1)/|u| = 2 b^2 / (|u| (|u| + X1))
    absu = hpc(ctx.u.norm(), ctx.prec).sqrt()
    return hpc(2 * ctx.b * ctx.b, ctx.prec) / (absu * (absu + ctx.X1))


def _one_plus_sqrt_sq(ctx: ApproximationContext) -> HighPrecisionComplex:
    absu = hpc(ctx.u.norm(), ctx.prec).sqrt()
    return 2 * (absu + ctx.X1) / absu


def r_function(ctx: ApproximationContext, r: int) -> HighPrecisionComplex:
    """R_{1,4,r}(omega) from its 2F1 representation."""
    nu = Fraction(1, 4)
    w = hpc(ctx.omega, ctx.prec)
    lead = Fraction(1)
    for k in range(r + 1):
        lead *= k + nu
    for k in range(r + 1, 2 * r + 2):
        lead /= k
    f = hyp2f1_ball(r + 1 - nu, Fraction(r + 1), Fraction(2 * r + 2), 1 - w)
    return (w - 1) ** (2 * r + 1) * lead * f


def determinant(ctx: ApproximationContext, r: int) -> GaussianInteger:
    a, b = approximants(ctx, r), approximants(ctx, r + 1)
    return a.p * b.q - b.p * a.q


@dataclass(frozen=True)
class ApproximantCheck:
    r: int
    identity_residual: float       # upper bound on |w^nu Y - X - R|
    identity_ok: bool              # < 2^-64
    abs_xy_equal: bool
    remainder_ok: bool
    size_ok: bool
    q_bound_ok: bool               # |q_r| < k0 Q^r
    residual_ok: bool              # |q_r theta - p_r| <= ell0 E^-r
    residual_matches_R: bool       # q_r theta - p_r equals the scaled R
    determinant_nonzero: bool

    @property
    def ok(self) -> bool:
        return all(v for k, v in vars(self).items() if isinstance(v, bool))


def _upper(z: HighPrecisionComplex) -> float:
    return abs(z.mid()) + z.radius()


def check_approximant(ctx: ApproximationContext, r: int) -> ApproximantCheck:
    ctx = ctx.with_precision(ctx.precision_for(r))
    prec = ctx.prec
    poly = x_polynomial(1, 4, r)
    w = hpc(ctx.omega, prec)
    theta = ctx.theta()
    Xw = hpc(poly.evaluate(ctx.omega), prec)
    Yw = hpc(poly.evaluate(ctx.omega, reverse=True), prec) if r else hpc(1, prec)
    R = r_function(ctx, r)
    resid = _upper(theta * Yw - Xw - R)
    absX, absY = Xw.abs(), Yw.abs()
    eq = abs(absX.mid().real - absY.mid().real) <= absX.radius() + absY.radius() + 2.0 ** (-prec // 2)
    phi = ctx.phi.abs()
    c_bound = phi * gamma_ratio_2(r) * _one_minus_sqrt_sq(ctx) ** r
    d_bound = hpc(D_FACTOR * gamma_ratio_1(r), prec) * _one_plus_sqrt_sq(ctx) ** r
    ap = approximants(ctx, r)
    qv, pv = hpc(ap.q, prec), hpc(ap.p, prec)
    diff = qv * theta - pv
    DN = Fraction(big_d(4, r, 1), n_cap(ctx.d, 4, r, 1))
    scaled_R = R * DN * (hpc(ctx.sigma, prec) / hpc(ctx.g_gauss, prec)) ** r
    match = _upper(diff - scaled_R) < 2.0 ** -64 * max(1.0, _upper(scaled_R))
    return ApproximantCheck(
        r, resid, resid < 2.0 ** -64, eq,
        _sure(R.abs().lt(c_bound) if r else (R.abs() - c_bound).lt(2.0 ** -64), "remainder bound"),
        _sure(absX.lt(d_bound), "size bound"),
        _sure(qv.abs().lt(ctx.Q ** r * ctx.k0), "q bound"),
        _sure(diff.abs().lt(ctx.ell0 / ctx.E ** r), "residual bound"),
        match, not determinant(ctx, r).is_zero())


# ------- 2F1 on the arc


@dataclass(frozen=True)
class ArcReport:
    samples: int
    minimum: float
    argmin: tuple[int, float]      # (r, angle)
    ok: bool


def hyp2f1_at(r: int, angle, prec: int = DEFAULT_PRECISION) -> HighPrecisionComplex:
    import mpmath
    with mpmath.workprec(prec + 32):
        z = 1 - mpmath.expj(mpmath.mpf(angle))
        v = mpmath.hyp2f1(r + mpmath.mpf(3) / 4, r + 1, 2 * r + 2, z)
    return HighPrecisionComplex.from_mpmath(v, prec, prec - 16)


def verify_22e(samples: int = 64, r_max: int = 8, prec: int = DEFAULT_PRECISION) -> ArcReport:
    """|2F1(r + 3/4, r + 1; 2r + 2; 1 - e^{it})| >= 1 for |t| <= pi/2."""
    import mpmath
    if samples < 1:
        raise ValueError("samples must be positive")
    best = None
    ok = True
    for r in range(1, r_max + 1):
        for j in range(-samples, samples + 1):
            t = mpmath.pi / 2 * mpmath.mpf(j) / samples
            v = hyp2f1_at(r, t, prec).abs()
            ok = ok and _sure(v.gt(1) if j else (v - 1).abs().lt(2.0 ** -64), "arc bound")
            m = v.mid().real
            if best is None or m < best[0]:
                best = (m, (r, float(t)))
    return ArcReport(samples, best[0], best[1], ok)


# ------- lower bound


def smallest_r0(qabs, E, ell0) -> int:
    """Smallest positive r0 with |q| < E^r0 / (2 ell0)."""
    exact = all(isinstance(x, (int, Fraction)) for x in (qabs, E, ell0))
    if exact:
        if E <= 1:
            raise ValueError("E must exceed 1")
        r0 = 1
        while not Fraction(qabs) < Fraction(E) ** r0 / (2 * Fraction(ell0)):
            r0 += 1
        return r0
    prec = max(getattr(x, "prec", 0) for x in (qabs, E, ell0)) or DEFAULT_PRECISION
    q, e, l = (hpc(x, prec) for x in (qabs, E, ell0))
    if not _sure(e.gt(1), "E > 1"):
        raise ValueError("E must exceed 1")
    r0 = 1
    while not _sure(q.lt(e ** r0 / (l * 2)), f"r0 = {r0}"):
        r0 += 1
    return r0


def lemma21_lower_bound(ctx: ApproximationContext, p: GaussianInteger, q: GaussianInteger,
                        use_part_b: bool, ell0=None) -> tuple[int, HighPrecisionComplex]:
    """(r0, lower bound for |q theta - p|). ell0 defaults to 0.4 b / X1."""
    if q.is_zero():
        raise ValueError("q must be nonzero")
    ell = ctx.ell0_upper if ell0 is None else ell0
    r0 = smallest_r0(hpc(q.norm(), ctx.prec).sqrt(), ctx.E, ell)
    expo = r0 if use_part_b else r0 + 1
    return r0, 1 / (ctx.Q ** expo * (2 * ctx.k0))


# ------------------------------------------------------------ case analysis

F = Fraction
CENSUS_BOUND = 181700


def _dec(s: str) -> Fraction:
    return Fraction(s.replace(",", ""))


@dataclass(frozen=True)
class Link:
    """One step of an inequality chain with the numbers that decide it."""

    name: str
    claim: str
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class CaseCertificate:
    a: int
    b: int
    X1: int
    Y1: int
    links: tuple[Link, ...]
    case1_closes: bool
    case2_closes: bool             # with the 3.99 constant
    case2_closes_literal: bool     # with the printed 3.7
    case3_closes: bool
    case3_threshold_stated: Fraction   # D below which r0 = 2 is not excluded, printed constants
    case3_threshold_exact: Fraction    # same, with 92/1420 and 116/0.0026 unrounded
    y1_ub_holds: Optional[bool]        # Y1^8 < 1.26e8 b^20 / D^4; None when Y1 < 1700
    residual_small: bool               # the instance needs the direct search

    @property
    def failed_links(self) -> tuple[Link, ...]:
        return tuple(l for l in self.links if not l.holds)


def _cube_root_floor(x: Fraction) -> int:
    n = int(round(float(x) ** (1 / 3)))
    while F(n) ** 3 > x:
        n -= 1
    while F(n + 1) ** 3 <= x:
        n += 1
    return n


def constant_links() -> list[Link]:
    """Roundings used by the chains, each checked in exact arithmetic."""
    e168 = e_power(LOG_D4, DEFAULT_PRECISION)
    e336 = e_power(2 * LOG_D4, DEFAULT_PRECISION)
    out = []

    def add(name, claim, ok, detail=""):
        out.append(Link(name, claim, bool(ok), detail))

    add("k0", "1.072 * 0.83 < 0.89", D_FACTOR * C41 < K0, str(D_FACTOR * C41))
    add("Q-upper", "2 e^1.68 < 10.74", _sure((e168 * 2).lt(Q_UPPER), "2e^1.68"))
    add("E-lower", "(1 + sqrt(0.9984)) / e^1.68 > 0.372",
        _sure(((hpc(_dec("0.9984")).sqrt() + 1) / e168).gt(E_LOWER), "E-lower"))
    add("Y-ratio", "(Y^4 - 1)/Y^4 >= 0.9984 for Y >= 5", F(624, 625) >= _dec("0.9984"))
    add("b-ratio", "1/0.9984 < 1.001^2", 1 / _dec("0.9984") < _dec("1.001") ** 2)
    add("c1", "(2 / 998^2)^(1/4) < 0.04", F(2, 998 ** 2) < _dec("0.04") ** 4)
    c1 = 4 * K0 * Q_UPPER / _dec("3.99")
    add("case1", "(2 * 2 * 0.89 * 10.74 / 3.99)^2 < 92", c1 * c1 < 92, str(float(c1 * c1)))
    add("gap-cube", "7.98^3 > 508", _dec("7.98") ** 3 > 508, str(float(_dec("7.98") ** 3)))
    add("case1-combine", "92 / 508 < 1/5", F(92, 508) < F(1, 5))
    add("case1-lower", "Y1 > b^2/2 and Y1 >= 5 give Y1^4 > 125 b^2 / 2 > b^2 / 5", F(125, 2) > F(1, 5))
    add("case2-5/32", "5/32 >= 0.156", F(5, 32) >= _dec("0.156"))
    add("case2-literal", "3.7 * 0.156 > 0.62", _dec("3.7") * _dec("0.156") > _dec("0.62"),
        str(float(_dec("3.7") * _dec("0.156"))))
    add("case2-3.99", "3.99 * 0.156 > 0.62", _dec("3.99") * _dec("0.156") > _dec("0.62"),
        str(float(_dec("3.99") * _dec("0.156"))))
    add("case2-63", "7.98^2 > 63", _dec("7.98") ** 2 > 63)
    k2 = (2 / (_dec("0.62") * 63)) ** 2
    add("case2-final", "(2/(0.62 * 63))^2 < 0.0027 < 1", k2 < _dec("0.0027") < 1, str(float(k2)))
    add("case3-1.248", "sqrt(0.9984)/0.8 > 1.248",
        _dec("0.9984") / _dec("0.64") > _dec("1.248") ** 2)
    add("case3-11.25", "(1.248/0.372)^2 > 11.25", (_dec("1.248") / E_LOWER) ** 2 > _dec("11.25"))
    add("case3-0.138", "0.372^2 > 0.138", E_LOWER ** 2 > _dec("0.138"))
    lb = (_dec("3.56") / _dec("3.99")) ** 2 * Q_UPPER ** 2
    add("case3-92", "(3.56/3.99)^2 * 10.74^2 < 92", lb < 92, str(float(lb)))
    add("case3-116", "10.74^2 < 116", Q_UPPER ** 2 < 116)
    add("case3-1420", "11.25^3 > 1420", _dec("11.25") ** 3 > 1420)
    add("case3-0.0026", "0.138^3 > 0.0026", _dec("0.138") ** 3 > _dec("0.0026"))
    add("case3-0.0646", "92/1420 <= 0.0646", F(92, 1420) <= _dec("0.0646"),
        f"92/1420 = {float(F(92, 1420)):.6f}; the printed constant rounds a left-hand side down")
    add("case3-44620", "116/0.0026 <= 44620", F(116) / _dec("0.0026") <= 44620)
    add("case3-0.000253", "0.0646/256 <= 0.000253", _dec("0.0646") / 256 <= _dec("0.000253"),
        f"{float(_dec('0.0646') / 256):.8f}")
    add("case3-11423000", "44620 * 256 <= 11,423,000", 44620 * 256 <= 11423000)
    add("212b6", "0.9984 * 1700 / 8 > 212", _dec("0.9984") * 1700 / 8 > 212)
    add("29.4b2", "64 * 212 / (16 e^3.36) > 29.4",
        _sure((hpc(F(64 * 212, 16)) / e336).gt(_dec("29.4")), "29.4"))
    add("29b2", "10.74 / 0.372 < 29", Q_UPPER / E_LOWER < 29)
    add("E3>Q", "29.4 > 29", _dec("29.4") > 29)
    y1 = (2 * _dec("1.78") * 29 ** 3 * _dec("0.8") ** 3 / _dec("3.99")) ** 2
    add("1.25e8", "(2 * 1.78 * 29^3 * 0.8^3 / 3.99)^2 < 1.25e8", y1 < _dec("1.25e8"), str(float(y1)))
    add("1.26e8", "1.25e8 / 0.9984^3 < 1.26e8", _dec("1.25e8") / _dec("0.9984") ** 3 < _dec("1.26e8"))
    return out


def case3_thresholds() -> tuple[Fraction, Fraction]:
    """Square of the D bound below which r0 = 2 survives, printed and unrounded."""
    stated = _dec("0.000253") * F(11423000) ** 2
    exact = F(92, 1420) / 256 * (F(116) / _dec("0.0026") * 256) ** 2
    return stated, exact


def case_engine(a: int, b: int, X1: int, Y1: int) -> CaseCertificate:
    """Replay the three cases against a hypothetical second solution above (X1, Y1)."""
    from .quadfam import EquationInstance
    from .quartic import make_solution, prime_power_hypotheses, single_family_hypotheses

    inst = EquationInstance(a, b)
    sol = make_solution(inst, X1, Y1)
    if not sol.coprime:
        raise HypothesisNotMet("needs a coprime solution")
    if 2 * Y1 <= b * b:
        raise HypothesisNotMet(f"Y1 = {Y1} is not above b^2/2 = {F(b * b, 2)}")
    if Y1 < 5:
        raise HypothesisNotMet("Y1 < 5")
    if prime_power_hypotheses(inst) is None and not single_family_hypotheses(inst):
        raise HypothesisNotMet(f"{inst} meets neither theorem's hypotheses")
    D = inst.D
    links = constant_links()
    links.append(Link("Y-ratio instance", "X1^2 > 0.9984 D Y1^4",
                      X1 * X1 > _dec("0.9984") * D * Y1 ** 4))
    links.append(Link("b-ratio instance", "X1^2 + b^2 < 1.001^2 X1^2",
                      X1 * X1 + b * b < _dec("1.001") ** 2 * X1 * X1))
    ctx = build_context(a, b, X1, Y1)
    cc = check_context(ctx)
    links.append(Link("context", "E > 1, Q > 1, Q-upper, E-lower, |phi| <= 2b/X1", cc.ok, str(cc)))
    # Case 2 identity, exactly
    w = ctx.omega
    lhs = (w - 1) ** 3 / (w * 3 + 5)
    s = 1 if ctx.u2 > 0 else -1
    rhs = GaussianRational(F(0), F(-4 * b ** 3)) / GaussianRational.of(
        GaussianInteger(4 * X1, -s * b) * GaussianInteger(X1, -s * b) ** 2)
    links.append(Link("case2-identity", "(w-1)^3/(3w+5) = -4b^3 i/((4X1 -+ bi)(X1 -+ bi)^2)",
                      lhs == rhs))
    y141 = GaussianRational.of(x_polynomial(1, 4, 1).evaluate(w, reverse=True))
    links.append(Link("case2-Y141", "Y_{1,4,1}(w) = (3w+5)/3", y141 == (w * 3 + 5) / 3))
    # |...|^2 > b^6 / (D^3 Y1^12)
    n2 = lhs.norm()
    links.append(Link("case2-abs", "|(w-1)^3/(3w+5)| > b^3/(D^(3/2) Y1^6)",
                      n2 > F(b ** 6, D ** 3 * Y1 ** 12)))
    lits = {l.name: l.holds for l in links}
    base_ok = lits["Y-ratio instance"] and lits["b-ratio instance"] and cc.ok
    case1 = base_ok and all(lits[k] for k in ("case1", "gap-cube", "case1-combine", "case1-lower"))
    case2_tail = all(lits[k] for k in ("case2-5/32", "case2-63", "case2-final", "case2-identity",
                                      "case2-Y141", "case2-abs"))
    case2 = base_ok and case2_tail and lits["case2-3.99"]
    case2_lit = base_ok and case2_tail and lits["case2-literal"]
    stated, exact = case3_thresholds()
    links.append(Link("case3-r0=2", "0.000253 * 11,423,000^2 < 181,700^2 (unrounded too)",
                      stated < 181700 ** 2 and exact < 181700 ** 2,
                      f"bounds {float(stated) ** 0.5:.2f} and {float(exact) ** 0.5:.2f}"))
    links.append(Link("case3-r0>=3", "11,423,000 < 181,700^2", 11423000 < 181700 ** 2))
    y1ub = None
    if Y1 >= 1700:
        y1ub = F(Y1) ** 8 < _dec("1.26e8") * F(b) ** 20 / F(D) ** 4
    lits["case3-r0=2"] = links[-2].holds
    case3 = base_ok and lits["case3-r0=2"] and (D >= CENSUS_BOUND or y1ub is False)
    return CaseCertificate(a, b, X1, Y1, tuple(links), case1, case2, case2_lit, case3,
                           stated, exact, y1ub, not case3)
