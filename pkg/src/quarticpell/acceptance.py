"""The eight reproduction criteria, each returning a pass/fail verdict with detail."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .arith import hpc, is_perfect_square
from .census import (PUBLISHED_COUNT, PUBLISHED_TWELVE, check_twelve, interpretation_counts, scan,
                     theorem_violations, verify_remark_families)
from .hyperg import D_CLASSES, build_context, check_approximant, verify_lemma24
from .pell import brute_minimal, solve_pell
from .quadfam import EquationInstance
from .quartic import c2_of_c1, solve_all


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.name} - {self.detail}"


@lru_cache(maxsize=2)
def census_records(workers=None):
    return tuple(scan(workers=workers))


def criterion_1(workers=None) -> CriterionResult:
    rep = check_twelve(list(census_records(workers)))
    detail = "matches the published list" if rep.ok else (
        f"filter keeps {len(rep.found)} pairs; missing {list(rep.missing)}, extra {list(rep.extra)}")
    return CriterionResult(1, "twelve-equation list", rep.ok, detail,
                           {"found": rep.found, **rep.diff()})


def criterion_2(workers=None) -> CriterionResult:
    counts = interpretation_counts(list(census_records(workers)))
    hit = [k for k, v in counts.items() if v == PUBLISHED_COUNT]
    return CriterionResult(2, "census count 35", bool(hit),
                           f"counts {counts}; matching: {hit or 'none'}", {"counts": counts})


def criterion_3() -> CriterionResult:
    sols = solve_all(EquationInstance(31, 5), 400)
    keys = [s.key for s in sols]
    want = [(31, 1), (785, 5), (3076289, 313)]
    nco = sum(s.coprime for s in sols)
    ok = keys == want and nco == 2
    return CriterionResult(3, "(31,5) solutions", ok, f"found {keys}, {nco} coprime")


def criterion_4(r_max: int = 155) -> CriterionResult:
    parts, ok, data = [], True, {}
    for label, d in D_CLASSES.items():
        rep = verify_lemma24(r_max, d)
        ok = ok and rep.ok
        parts.append(f"d={d} ({label}): max {rep.max1:.4f}@r={rep.argmax1}, "
                     f"{rep.max2:.4f}@r={rep.argmax2}, "
                     f"{'holds' if rep.ok else f'fails from r={rep.first_failure}'}")
        data[d] = rep
    return CriterionResult(4, "denominator constants", ok, "; ".join(parts), data)


def criterion_5() -> CriterionResult:
    checks = verify_remark_families()
    hard = [c for c in checks if c.name != "even b' family"]
    ok = all(c.ok for c in hard)
    return CriterionResult(5, "remark families", ok,
                           ", ".join(f"{c.name}: {c.checked} checked, {len(c.failures)} failed"
                                     for c in checks))


def criterion_6(prec: int = 256) -> CriterionResult:
    v1 = c2_of_c1(hpc(Fraction(2, 25), prec).root(4), prec)
    v2 = c2_of_c1(Fraction(4, 100), prec)
    ok1, ok2 = v1.gt(Fraction(331, 100)), v2.gt(Fraction(399, 100))
    return CriterionResult(6, "c2 constants", ok1 is True and ok2 is True,
                           f"c2((2/25)^(1/4)) = {v1.decimal(10)}, c2(0.04) = {v2.decimal(10)}")


def criterion_7(r_max: int = 20, workers=None) -> CriterionResult:
    recs = census_records(workers)
    ctxs = [(r.a, r.b, s.X, s.Y) for r in recs for s in r.solutions if s.coprime and s.Y >= 5]
    bad = []
    r0_flags = 0
    for a, b, X, Y in ctxs:
        ctx = build_context(a, b, X, Y)
        for r in range(0, r_max + 1):
            c = check_approximant(ctx, r)
            if r == 0:
                r0_flags += not (c.q_bound_ok and c.residual_ok)
                continue
            if not c.ok:
                bad.append((a, b, X, Y, r))
    viol = theorem_violations(recs)
    ok = not bad and not viol
    return CriterionResult(
        7, "approximant properties", ok,
        f"{len(ctxs)} contexts, r = 1..{r_max}: {len(bad)} failures; count violations {len(viol)}; "
        f"r = 0 misses the bounds in {r0_flags} contexts (flagged, |q_0| = 1)",
        {"failures": bad, "violations": viol})


def pell_oracle_mismatches(d_max: int = 1000, y_max: int = 10 ** 4) -> list[tuple[int, int]]:
    out = []
    for D in range(2, d_max):
        if is_perfect_square(D):
            continue
        pd = solve_pell(D)
        for N, sol in ((1, pd.fund_plus), (-1, pd.fund_minus), (-4, pd.t1u1)):
            brute = brute_minimal(D, N, y_max)
            expect = sol if sol is not None and sol[1] <= y_max else None
            if brute != expect:
                out.append((D, N))
    return out


def criterion_8() -> CriterionResult:
    bad = pell_oracle_mismatches()
    return CriterionResult(8, "Pell oracle equivalence", not bad,
                           f"non-square D < 1000, norms 1, -1, -4: {len(bad)} mismatches")


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
}


def run_all(stop_on_failure: bool = False, emit=print) -> list[CriterionResult]:
    out = []
    for n, fn in CRITERIA.items():
        res = fn()
        if emit:
            emit(res.line())
        out.append(res)
        if stop_on_failure and not res.passed:
            break
    return out
