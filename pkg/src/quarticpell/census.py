"""The finite search over a^2 + b^2 < 181,700 and the worked example families."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .arith import exact_sqrt, is_perfect_square, prime_power_base
from .errors import ReproductionFailure, TheoremViolation
from .quadfam import EquationInstance, enumerate_families, pell_data
from .quartic import QuarticSolution, make_solution, solve_all, solve_coprime
from .squarescan import quartic_hits

CENSUS_LIMIT = 181700
Y_CUTOFF = 1700
Y1UB_CONSTANT = 126000000          # 1.26e8

PUBLISHED_TWELVE = ((1, 1), (1, 3), (3, 7), (9, 7), (11, 3), (11, 7), (18, 43), (19, 9),
                (29, 11), (29, 17), (31, 5), (41, 13))
PUBLISHED_COUNT = 35

INTERPRETATIONS = ("coprime_above_half_b2", "all", "coprime")


def passes_y1ub(a: int, b: int, Y: int) -> bool:
    """1.26e8 b^20 / (a^2+b^2)^4 > Y^8, exactly."""
    D = a * a + b * b
    return Y1UB_CONSTANT * b ** 20 > Y ** 8 * D ** 4


def y1_upper_bound(a: int, b: int) -> int:
    """Largest Y meeting the bound above (0 when none does)."""
    D = a * a + b * b
    lim = Y1UB_CONSTANT * b ** 20
    y = int((lim / D ** 4) ** 0.125) + 2 if lim >= D ** 4 else 1
    while y > 0 and y ** 8 * D ** 4 >= lim:
        y -= 1
    return y


def y_search_limit(a: int, b: int, y_cutoff: int = Y_CUTOFF) -> int:
    return max(y_cutoff - 1, y1_upper_bound(a, b))


def qualifies(a: int, b: int, Y: int, y_cutoff: int = Y_CUTOFF) -> bool:
    return Y >= 2 and (Y < y_cutoff or passes_y1ub(a, b, Y))


@dataclass(frozen=True)
class CensusRecord:
    a: int
    b: int
    D: int
    has_solution_Y_ge2: bool
    min_Y_ge2: Optional[int]
    passes_y1ub: bool                  # at min_Y_ge2
    neg_pell: bool
    single_family: Optional[bool]      # None when x^2 - D y^2 = -4 is unsolvable
    solutions: tuple[QuarticSolution, ...]   # every solution found, (a, 1) included
    y_limit: int = 0

    def coprime(self) -> list[QuarticSolution]:
        return [s for s in self.solutions if s.coprime]

    def candidate_under(self, interpretation: str, y_cutoff: int = Y_CUTOFF) -> bool:
        """Whether the pair counts toward the 35 under one reading of the filter."""
        sols = [s for s in self.solutions if qualifies(self.a, self.b, s.Y, y_cutoff)]
        if interpretation == "all":
            return bool(sols)
        if interpretation == "coprime":
            return any(s.coprime for s in sols)
        if interpretation == "coprime_above_half_b2":
            return any(s.coprime and 2 * s.Y > self.b * self.b for s in sols)
        raise ValueError(f"unknown interpretation {interpretation!r}")

    def to_json(self) -> dict:
        return {
            "a": self.a, "b": self.b, "D": self.D,
            "has_solution_Y_ge2": self.has_solution_Y_ge2,
            "min_Y_ge2": None if self.min_Y_ge2 is None else str(self.min_Y_ge2),
            "passes_y1ub": self.passes_y1ub,
            "neg_pell": self.neg_pell,
            "single_family": self.single_family,
            "y_limit": str(self.y_limit),
            "solutions": [{"X": str(s.X), "Y": str(s.Y), "coprime": s.coprime}
                          for s in self.solutions],
        }


def census_pairs(limit: int) -> list[tuple[int, int]]:
    """Coprime (a, b), a, b >= 1, a^2 + b^2 < limit and not a square, by (D, a)."""
    out = []
    for a in range(1, math.isqrt(limit) + 1):
        for b in range(1, math.isqrt(max(limit - 1 - a * a, 0)) + 1):
            D = a * a + b * b
            if D < limit and math.gcd(a, b) == 1 and not is_perfect_square(D):
                out.append((a, b))
    out.sort(key=lambda p: (p[0] ** 2 + p[1] ** 2, p[0]))
    return out


def _scan_shard(args) -> list[tuple[int, int, list[tuple[int, int]]]]:
    pairs, y_cutoff, backend = args
    out = []
    for a, b in pairs:
        D = a * a + b * b
        hits = quartic_hits(D, b * b, 2, y_search_limit(a, b, y_cutoff), backend)
        if hits:
            out.append((a, b, hits))
    return out


def _workers(workers: Optional[int]) -> int:
    if workers:
        return workers
    env = os.environ.get("QUARTICPELL_THREADS")
    return int(env) if env else (os.cpu_count() or 1)


def make_record(a: int, b: int, hits: list[tuple[int, int]], y_limit: int) -> CensusRecord:
    inst = EquationInstance(a, b)
    sols = [make_solution(inst, a, 1)] + [make_solution(inst, x, y) for x, y in hits]
    pd = pell_data(inst.D)
    single = enumerate_families(inst).single_family if pd.t1u1 is not None else None
    ys = [s.Y for s in sols if s.Y >= 2]
    ymin = min(ys) if ys else None
    return CensusRecord(a, b, inst.D, bool(ys), ymin,
                        ymin is not None and passes_y1ub(a, b, ymin),
                        pd.neg_pell, single, tuple(sols), y_limit)


def scan(limit: int = CENSUS_LIMIT, y_cutoff: int = Y_CUTOFF, workers: Optional[int] = None,
         backend=None, shards: int = 64) -> list[CensusRecord]:
    """Records for every census pair with a solution Y >= 2 in its search range.

    The output does not depend on the number of workers."""
    if limit > 10 ** 7:
        raise ValueError("limit above desk scale (10^7)")
    if y_cutoff < 2:
        raise ValueError("y_cutoff must be at least 2")
    pairs = census_pairs(limit)
    chunks = [(pairs[i::shards], y_cutoff, backend) for i in range(shards)]
    n = _workers(workers)
    if n == 1:
        found = [r for c in chunks for r in _scan_shard(c)]
    else:
        with ProcessPoolExecutor(max_workers=n) as ex:
            found = [r for part in ex.map(_scan_shard, chunks) for r in part]
    found.sort(key=lambda t: (t[0] ** 2 + t[1] ** 2, t[0]))
    recs = [make_record(a, b, hits, y_search_limit(a, b, y_cutoff)) for a, b, hits in found]
    for r in recs:
        inst = EquationInstance(r.a, r.b)
        if not all(s.satisfies(inst) for s in r.solutions):
            raise TheoremViolation(f"record {(r.a, r.b)} holds a non-solution")
    return recs


def candidates(records: Iterable[CensusRecord], interpretation: str = INTERPRETATIONS[0],
               y_cutoff: int = Y_CUTOFF) -> list[CensusRecord]:
    return [r for r in records if r.candidate_under(interpretation, y_cutoff)]


def interpretation_counts(records: list[CensusRecord], y_cutoff: int = Y_CUTOFF) -> dict[str, int]:
    return {k: len(candidates(records, k, y_cutoff)) for k in INTERPRETATIONS}


def filter_twelve(records: Iterable[CensusRecord]) -> list[tuple[int, int]]:
    """Pairs with a solvable negative Pell equation and a single family."""
    return [(r.a, r.b) for r in records if r.neg_pell and r.single_family]


@dataclass(frozen=True)
class TwelveReport:
    interpretation: str
    candidates: tuple[tuple[int, int], ...]
    found: tuple[tuple[int, int], ...]
    missing: tuple[tuple[int, int], ...]     # in the published list, not found
    extra: tuple[tuple[int, int], ...]       # found, not in the published list

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra

    def diff(self) -> dict:
        return {"missing": [list(p) for p in self.missing], "extra": [list(p) for p in self.extra]}


def check_twelve(records: list[CensusRecord], interpretation: str = INTERPRETATIONS[0],
                 y_cutoff: int = Y_CUTOFF) -> TwelveReport:
    cands = candidates(records, interpretation, y_cutoff)
    found = filter_twelve(cands)
    want = set(PUBLISHED_TWELVE)
    return TwelveReport(interpretation, tuple((r.a, r.b) for r in cands), tuple(found),
                        tuple(sorted(want - set(found), key=PUBLISHED_TWELVE.index)),
                        tuple(p for p in found if p not in want))


def require_twelve(records: list[CensusRecord]) -> TwelveReport:
    rep = check_twelve(records)
    if not rep.ok:
        raise ReproductionFailure("the neg-Pell / single-family filter does not give the "
                                  "published twelve pairs", rep.diff())
    return rep


# ------------------------------------------------------------ theorem checks


@dataclass(frozen=True)
class CountViolation:
    a: int
    b: int
    rule: str
    coprime: int
    total: int


def theorem_violations(records: Iterable[CensusRecord]) -> list[CountViolation]:
    """b = p^m with negative Pell: at most 2 coprime solutions, and at most 3 in
    all when m is 1 or 2."""
    out = []
    for r in records:
        pm = prime_power_base(r.b)
        if pm is None or not r.neg_pell:
            continue
        nco, ntot = len(r.coprime()), len(r.solutions)
        if nco > 2:
            out.append(CountViolation(r.a, r.b, "at most two coprime", nco, ntot))
        if pm[1] in (1, 2) and ntot > 3:
            out.append(CountViolation(r.a, r.b, "at most three in total", nco, ntot))
    return out


# ------------------------------------------------------------ example families


@dataclass(frozen=True)
class FamilyCheck:
    name: str
    checked: int
    failures: tuple[str, ...]
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def _solves(a: int, b: int, X: int, Y: int) -> bool:
    return X * X - (a * a + b * b) * Y ** 4 == -b * b


def family_b2_minus_5(count: int = 50) -> FamilyCheck:
    """Odd b prime to 5, a = (b^2-5)/4: (a, 1), negative Pell unit (a+2, 1) and
    ((b^6+5b^4+15b^2-5)/16, (b^2+1)/2)."""
    bad, b, n = [], 1, 0
    while n < count:
        b += 2
        if b % 5 == 0:
            continue
        n += 1
        a = (b * b - 5) // 4
        D = a * a + b * b
        X, Y = (b ** 6 + 5 * b ** 4 + 15 * b * b - 5) // 16, (b * b + 1) // 2
        if (b ** 6 + 5 * b ** 4 + 15 * b * b - 5) % 16 or not _solves(a, b, X, Y):
            bad.append(f"b={b}: second solution")
        if not _solves(a, b, a, 1):
            bad.append(f"b={b}: (a, 1)")
        if (a + 2) ** 2 - D != -1:
            bad.append(f"b={b}: (a+2, 1) is not a unit of norm -1")
        elif pell_data(D).fund_minus != (a + 2, 1):
            bad.append(f"b={b}: (a+2, 1) is not the fundamental solution")
        # (a + sqrt D)(a + 2 + sqrt D)^2 = X + Y^2 sqrt D
        x2, y2 = (a + 2) ** 2 + D, 2 * (a + 2)
        if (a * x2 + D * y2, a * y2 + x2) != (X, Y * Y):
            bad.append(f"b={b}: lifting does not give the formula")
    return FamilyCheck("a = (b^2-5)/4", count, tuple(bad))


def family_5b2_minus_1(count: int = 50) -> FamilyCheck:
    """Odd b, a = (5b^2-1)/4: ((3125b^6+625b^4+75b^2-1)/16, (25b^2+1)/2)."""
    bad = []
    for i in range(count):
        b = 2 * i + 1
        a = (5 * b * b - 1) // 4
        num = 3125 * b ** 6 + 625 * b ** 4 + 75 * b * b - 1
        X, Y = num // 16, (25 * b * b + 1) // 2
        if num % 16 or not _solves(a, b, X, Y) or not _solves(a, b, a, 1):
            bad.append(f"b={b}")
    return FamilyCheck("a = (5b^2-1)/4", count, tuple(bad))


def square_b_example(b1_max: int = 15) -> FamilyCheck:
    """b = b1^2 in the a = (b^2-5)/4 family adds the solution ((b^3+3b)/4, b1)."""
    bad, n = [], 0
    for b1 in range(3, b1_max + 1, 2):
        if b1 % 5 == 0:
            continue
        b = b1 * b1
        a = (b * b - 5) // 4
        n += 1
        X = (b ** 3 + 3 * b) // 4
        if (b ** 3 + 3 * b) % 4 or not _solves(a, b, X, b1):
            bad.append(f"b1={b1}")
    return FamilyCheck("square b", n, tuple(bad))


def recurrence_terms(count: int = 10) -> list[int]:
    out = [-3, 4]
    while len(out) < count:
        out.append(50 * out[-1] - out[-2])
    return out[:count]


def recurrence_example(count: int = 10) -> FamilyCheck:
    """624 b^2 + 625 is a square along b_{n+2} = 50 b_{n+1} - b_n, and then
    (sqrt(624b^2+625), 5) solves the equation with a = 1."""
    bad = []
    for b in recurrence_terms(count):
        X = exact_sqrt(624 * b * b + 625)
        if X is None:
            bad.append(f"b={b}: not a square")
        elif b > 0 and not _solves(1, b, X, 5):
            bad.append(f"b={b}: not a solution")
    return FamilyCheck("recurrence", count, tuple(bad))


def even_bprime_family(bp_max: int = 60) -> FamilyCheck:
    """b = b'^2 - 1, a = b'^3/4 - 3b'/2, Y = b + 2. Report only: the residue
    condition on b' cannot hold for odd b', so even b' are tried."""
    notes = []
    n = 0
    for bp in range(4, bp_max + 1, 2):
        if bp % 10 not in (0, 2, 8):
            continue
        n += 1
        b = bp * bp - 1
        a2 = bp ** 3 - 6 * bp
        num = bp * (bp ** 6 + 4 * bp ** 4 + 5 * bp * bp + 10)
        ok = a2 % 4 == 0 and num % 4 == 0 and a2 > 0 and math.gcd(a2 // 4, b) == 1 \
            and _solves(a2 // 4, b, num // 4, b + 2)
        notes.append(f"b'={bp}: {'solves' if ok else 'does not solve'}")
    return FamilyCheck("even b' family", n, (), tuple(notes))


def verify_remark_families(count: int = 50, b1_max: int = 15, terms: int = 10) -> list[FamilyCheck]:
    return [family_b2_minus_5(count), family_5b2_minus_1(count), square_b_example(b1_max),
            recurrence_example(terms), even_bprime_family()]


# ------------------------------------------------------------ final check


@dataclass(frozen=True)
class FinalCheck:
    a: int
    b: int
    y_max: int
    coprime: tuple[tuple[int, int], ...]
    ok: bool                         # (a, 1) plus at most one more


def final_check(a: int, b: int, y_cutoff: int = Y_CUTOFF) -> FinalCheck:
    inst = EquationInstance(a, b)
    ymax = max(y_cutoff, y1_upper_bound(a, b), b * b)
    sols = solve_coprime(inst, ymax)
    keys = tuple(s.key for s in sols)
    return FinalCheck(a, b, ymax, keys, len(keys) <= 2 and keys[0] == (a, 1))


def final_check_twelve(pairs=PUBLISHED_TWELVE) -> list[FinalCheck]:
    out = [final_check(a, b) for a, b in pairs]
    bad = [c for c in out if not c.ok]
    if bad:
        raise TheoremViolation(f"more coprime solutions than allowed: {bad}")
    return out


# ------------------------------------------------------------ output


def write_jsonl(records: Iterable[CensusRecord], fh) -> None:
    for r in records:
        fh.write(json.dumps(r.to_json()) + "\n")


SUMMARY_FIELDS = ("a", "b", "D", "n_solutions", "neg_pell", "single_family")


def write_summary_csv(records: Iterable[CensusRecord], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SUMMARY_FIELDS)
    for r in records:
        w.writerow([r.a, r.b, r.D, len(r.solutions), int(r.neg_pell),
                    "" if r.single_family is None else int(r.single_family)])


def summary_csv(records: Iterable[CensusRecord]) -> str:
    buf = io.StringIO()
    write_summary_csv(records, buf)
    return buf.getvalue()
