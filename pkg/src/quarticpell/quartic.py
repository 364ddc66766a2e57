"""Solutions of X^2 - (a^2+b^2) Y^4 = -b^2: search, witnesses and bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy

from .arith import GaussianInteger, HighPrecisionComplex, decide, exact_sqrt, hpc, prime_power_base
from .errors import ConsistencyError, HypothesisNotMet, TheoremViolation
from .pell import alpha_power, half_mul
from .quadfam import EquationInstance, enumerate_families, pell_data
from .squarescan import quartic_hits

GAP_CONSTANT = Fraction(798, 100)


@dataclass(frozen=True)
class GaussianRep:
    r: int
    s: int
    sign_x: int
    sign_b: int
    sign_w: int

    def check(self, inst: EquationInstance, X: int) -> bool:
        z = GaussianInteger(inst.a, inst.b) * GaussianInteger(self.r, self.sign_w * self.s) ** 4
        return z == GaussianInteger(self.sign_x * X, self.sign_b * inst.b)


@dataclass(frozen=True)
class QuarticSolution:
    X: int
    Y: int
    coprime: bool
    witness: Optional[GaussianRep] = None

    def satisfies(self, inst: EquationInstance) -> bool:
        return self.X * self.X - inst.D * self.Y ** 4 == -inst.b * inst.b

    @property
    def key(self) -> tuple[int, int]:
        return (self.X, self.Y)


def make_solution(inst: EquationInstance, X: int, Y: int) -> QuarticSolution:
    sol = QuarticSolution(abs(X), Y, math.gcd(X, Y) == 1)
    if Y < 1 or not sol.satisfies(inst):
        raise ValueError(f"({X}, {Y}) does not solve the equation for {inst}")
    return sol


def solve_all(inst: EquationInstance, y_max: int, backend=None) -> list[QuarticSolution]:
    """Every solution with 1 <= Y <= y_max, coprime or not, by direct scan."""
    return [make_solution(inst, x, y)
            for x, y in quartic_hits(inst.D, inst.b * inst.b, 1, y_max, backend)]


@dataclass(frozen=True)
class LiftedSolution:
    solution: QuarticSolution
    k: Optional[int]       # alpha^{2k} index for the base family, None for other orbits
    sign: int


def _lift_base(inst: EquationInstance, y_max: int) -> list[LiftedSolution]:
    # 2X = D U_{2k} +- a T_{2k}, 2Y^2 = T_{2k} +- a U_{2k}
    pd = pell_data(inst.D)
    a, D = inst.a, inst.D
    a2 = half_mul(D, pd.t1u1, pd.t1u1)
    T, U = 2, 0
    out = []
    k = 0
    while True:
        if T - a * U > 2 * y_max * y_max:
            break
        for sign in (1, -1):
            two_y2, two_x = T + sign * a * U, D * U + sign * a * T
            if two_y2 <= 0 or two_y2 % 2 or two_x % 2:
                continue
            y = exact_sqrt(two_y2 // 2)
            if y is not None and 1 <= y <= y_max:
                sol = make_solution(inst, two_x // 2, y)
                if all(s.solution.key != sol.key for s in out):
                    out.append(LiftedSolution(sol, k, sign))
        T, U = half_mul(D, (T, U), a2)
        k += 1
    return out


def _walk_orbit(inst: EquationInstance, rep: tuple[int, int], y_max: int) -> list[tuple[int, int]]:
    # orbit of x + y sqrt D under alpha^{2j}, both directions, integral points only
    pd = pell_data(inst.D)
    D = inst.D
    t, u = half_mul(D, pd.t1u1, pd.t1u1)
    hits = []
    bound = y_max * y_max
    for step in ((t, u), (t, -u)):
        cur = (2 * rep[0], 2 * rep[1])
        last = None
        while True:
            if cur[0] % 2 == 0 and cur[1] % 2 == 0:
                x, y = cur[0] // 2, abs(cur[1] // 2)
                if y > bound and last is not None and y > last:
                    break
                last = y
                r = exact_sqrt(y)
                if r is not None and 1 <= r <= y_max:
                    hits.append((abs(x), r))
            cur = half_mul(D, cur, step)
    return hits


def lift_families(inst: EquationInstance, y_max: int) -> list[LiftedSolution]:
    """Coprime solutions with Y <= y_max obtained from the quadratic families."""
    pd = pell_data(inst.D)
    if pd.t1u1 is None:
        raise HypothesisNotMet(f"x^2 - {inst.D} y^2 = -4 has no solution")
    out = _lift_base(inst, y_max)
    report = enumerate_families(inst)
    for rep in report.extra:
        for x, y in _walk_orbit(inst, rep, y_max):
            sol = make_solution(inst, x, y)
            if all(s.solution.key != sol.key for s in out):
                out.append(LiftedSolution(sol, None, 0))
    out.sort(key=lambda s: s.solution.Y)
    return out


def solve_coprime(inst: EquationInstance, y_max: int, backend=None) -> list[QuarticSolution]:
    """Coprime solutions with Y <= y_max, found by family lifting and by direct
    scan; the two must agree."""
    if y_max < 1:
        raise ValueError("y_max must be positive")
    lifted = sorted(s.solution.key for s in lift_families(inst, y_max))
    scanned = sorted(s.key for s in solve_all(inst, y_max, backend) if s.coprime)
    if lifted != scanned:
        raise ConsistencyError(
            f"{inst}: family lifting gave {lifted}, direct scan gave {scanned}")
    return [make_solution(inst, x, y) for x, y in sorted(scanned, key=lambda p: p[1])]


def gaussian_witness(inst: EquationInstance, sol: QuarticSolution) -> GaussianRep:
    """(r, s) with +-X +- b i = (a + b i)(r +- s i)^4 and Y = r^2 + s^2."""
    if not sol.coprime or not sol.satisfies(inst):
        raise ValueError("witness needs a coprime solution of the equation")
    if sol.Y == 1:
        rep = GaussianRep(1, 0, 1, 1, 1)
        if rep.check(inst, sol.X):
            return rep
        raise TheoremViolation(f"Y = 1 solution {sol.key} is not (a, 1)")
    ab = GaussianInteger(inst.a, inst.b)
    for r in range(1, math.isqrt(sol.Y // 2) + 1):
        s = exact_sqrt(sol.Y - r * r)
        if s is None or s <= r or math.gcd(r, s) != 1:
            continue
        for sw in (1, -1):
            z = ab * GaussianInteger(r, sw * s) ** 4
            if abs(z.re) == sol.X and abs(z.im) == inst.b:
                return GaussianRep(r, s, 1 if z.re > 0 else -1, 1 if z.im > 0 else -1, sw)
    raise TheoremViolation(f"no Gaussian witness for {sol.key} on {inst}")


def with_witness(inst: EquationInstance, sol: QuarticSolution) -> QuarticSolution:
    return QuarticSolution(sol.X, sol.Y, sol.coprime, gaussian_witness(inst, sol))


def gap_holds(ratio: Fraction, y1: int, y2: int) -> bool:
    """Y2 > 7.98 * ratio * Y1^3 with ratio = D / b^2, exactly."""
    return Fraction(y2) > GAP_CONSTANT * Fraction(ratio) * y1 ** 3


def check_gap(inst: EquationInstance, sol1: QuarticSolution, sol2: QuarticSolution) -> bool:
    if not (sol1.coprime and sol2.coprime):
        raise HypothesisNotMet("gap principle concerns coprime solutions")
    if not 1 < sol1.Y < sol2.Y:
        raise HypothesisNotMet(f"need Y2 > Y1 > 1, got {sol1.Y}, {sol2.Y}")
    if prime_power_base(inst.b) is None:
        raise HypothesisNotMet(f"b = {inst.b} is not a prime power")
    return gap_holds(Fraction(inst.D, inst.b ** 2), sol1.Y, sol2.Y)


def single_family_hypotheses(inst: EquationInstance) -> bool:
    """Negative Pell solvable and a single family of coprime solutions."""
    pd = pell_data(inst.D)
    return pd.neg_pell and enumerate_families(inst).single_family


def prime_power_hypotheses(inst: EquationInstance) -> Optional[tuple[int, int]]:
    """(p, m) when b = p^m and negative Pell is solvable; b = 1 gives (1, 0)."""
    pm = prime_power_base(inst.b)
    if pm is None or not pell_data(inst.D).neg_pell:
        return None
    return pm


@dataclass(frozen=True)
class LowerBoundReport:
    Y: int
    y_primes: tuple[int, ...]
    part_a: bool
    part_b_applicable: bool
    part_b: Optional[bool]
    part_c_applicable: bool
    part_c_bound: Optional[Fraction]
    part_c: Optional[bool]
    violations: tuple[str, ...] = field(default=())


def y_lower_bound_report(inst: EquationInstance, sol: QuarticSolution) -> LowerBoundReport:
    if not sol.coprime or sol.Y <= 1:
        raise HypothesisNotMet("needs a coprime solution with Y > 1")
    primes = tuple(sorted(sympy.factorint(sol.Y)))
    part_a = all(p % 4 == 1 for p in primes) and sol.Y >= 5 and (sol.Y <= 5 or sol.Y >= 13)
    b_app = single_family_hypotheses(inst)
    part_b = 2 * sol.Y > inst.b if b_app else None
    pm = prime_power_hypotheses(inst)
    c_bound = part_c = None
    if pm is not None:
        c_bound = Fraction(inst.b ** 2, 4 if pm[0] == 2 else 2)
        part_c = sol.Y > c_bound
    bad = []
    if not part_a:
        bad.append("(a) Y has a prime factor not 1 mod 4")
    if part_b is False:
        bad.append("(b) Y <= b/2")
    if part_c is False:
        bad.append(f"(c) Y <= {c_bound}")
    return LowerBoundReport(sol.Y, primes, part_a, b_app, part_b, pm is not None,
                            c_bound, part_c, tuple(bad))


def c2_of_c1(c1, prec: int = 256) -> HighPrecisionComplex:
    """(2 - c1^2) sqrt(4 - c1^2) as a real ball."""
    x = hpc(c1, prec)
    if not x.is_real():
        raise ValueError("c1 must be real")
    inside = decide(lambda p: (x.gt(0) and x.lt(1)), prec) if isinstance(c1, HighPrecisionComplex) \
        else 0 < c1 < 1
    if not inside:
        raise ValueError(f"c1 must lie in (0, 1), got {c1}")
    sq = x * x
    return (2 - sq) * (4 - sq).sqrt()


@dataclass(frozen=True)
class FamilyDecomposition:
    k: int
    sign: int
    b1: int
    b2: int
    r1: int
    s1: int
    doubled: bool
    c: int            # (T_k +- a U_k)/2
    U_k: int
    rs_over_uk: Fraction   # r1*s1 / U_k as found
    r: int            # Gaussian coordinates after taking out 1 +- i
    s: int


def _coprime_splits(b: int, factor_two: bool):
    # (b1, b2) with gcd 1 and b1*b2 = b (or 2*b1*b2 = b)
    n = b // 2 if factor_two else b
    if factor_two and b % 2:
        return
    for b1 in sympy.divisors(n):
        b2 = n // b1
        if math.gcd(b1, b2) == 1:
            yield b1, b2


def decompose_family(inst: EquationInstance, sol: QuarticSolution, k: Optional[int] = None,
                     sign: Optional[int] = None) -> FamilyDecomposition:
    """Split Y +- (T_k +- a U_k)/2 into square parts for a lifted solution."""
    if sol.Y <= 1:
        raise HypothesisNotMet("Y = 1 has no decomposition")
    if not sol.coprime:
        raise HypothesisNotMet("needs a coprime solution")
    if k is None or sign is None:
        found = [s for s in lift_families(inst, sol.Y) if s.solution.key == sol.key and s.k is not None]
        if not found:
            raise HypothesisNotMet(f"{sol.key} does not come from the family of (a, 1)")
        k, sign = found[0].k, found[0].sign
    pd = pell_data(inst.D)
    pw = alpha_power(pd, k)
    twice_c = pw.T + sign * inst.a * pw.U
    if twice_c % 2 or (inst.b * pw.U) % 2:
        raise TheoremViolation("T_k +- a U_k or b U_k is odd")
    c = twice_c // 2
    if sol.Y ** 2 != c * c + (inst.b * pw.U // 2) ** 2:
        raise TheoremViolation(f"Y^2 != c^2 + (b U_k / 2)^2 at k = {k}")
    big, small = sorted((sol.Y + c, sol.Y - c), reverse=True)
    g = math.gcd(big, small)
    if g not in (1, 2):
        raise TheoremViolation(f"gcd of Y +- c is {g}")
    doubled = g == 2
    L, S = (exact_sqrt(big // g), exact_sqrt(small // g))
    if L is None or S is None:
        raise TheoremViolation("Y +- c are not (twice) squares")
    for factor_two in ((False, True) if doubled else (False,)):
        for b1, b2 in _coprime_splits(inst.b, factor_two):
            if L % b1 or S % b2:
                continue
            s1, r1 = L // b1, S // b2
            if math.gcd(r1, s1) != 1 or b1 * s1 <= b2 * r1:
                continue
            if doubled:
                r, s = sorted((b2 * r1, b1 * s1))
            else:
                z = GaussianInteger(b2 * r1, b1 * s1)
                q = z.exact_div(GaussianInteger(1, 1))
                r, s = sorted((abs(q.re), abs(q.im)))
            if r * r + s * s != sol.Y:
                raise TheoremViolation("decomposition does not give Y = r^2 + s^2")
            return FamilyDecomposition(k, sign, b1, b2, r1, s1, doubled, c, pw.U,
                                       Fraction(r1 * s1, pw.U), r, s)
    raise TheoremViolation(f"no decomposition of {sol.key} at k = {k}")


@dataclass(frozen=True)
class CountCheck:
    coprime: int
    total: int
    prime_power: bool
    single_family: bool
    violated: bool


def theorem_counts(inst: EquationInstance, sols: list[QuarticSolution]) -> CountCheck:
    """At most two coprime solutions under either theorem's hypotheses; at
    most three in total when b is a prime or the square of a prime."""
    n_co = sum(s.coprime for s in sols)
    t11 = prime_power_hypotheses(inst)
    t12 = pell_data(inst.D).neg_pell and (t11 is not None or single_family_hypotheses(inst))
    bad = (t11 is not None or t12) and n_co > 2
    if t11 is not None and t11[1] in (1, 2) and len(sols) > 3:
        bad = True
    return CountCheck(n_co, len(sols), t11 is not None, bool(t12), bad)
