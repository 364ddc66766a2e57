import io
import json
import math

import pytest
from hypothesis import given, strategies as st

from quarticpell.acceptance import census_records
from quarticpell.census import (INTERPRETATIONS, PUBLISHED_TWELVE, census_pairs, check_twelve,
                                family_b2_minus_5, family_5b2_minus_1, filter_twelve, final_check, final_check_twelve,
                                interpretation_counts, passes_y1ub, recurrence_terms, require_twelve,
                                scan, square_b_example, summary_csv, theorem_violations,
                                verify_remark_families, write_jsonl, y1_upper_bound,
                                y_search_limit)
from quarticpell.errors import ReproductionFailure
from quarticpell.quadfam import EquationInstance


@pytest.fixture(scope="module")
def records():
    return list(census_records())


def test_pairs_are_valid():
    pairs = census_pairs(2000)
    assert pairs[0] == (1, 1)
    assert (3, 4) not in pairs and (2, 4) not in pairs
    Ds = [a * a + b * b for a, b in pairs]
    assert Ds == sorted(Ds) and max(Ds) < 2000


def test_y1ub():
    assert not passes_y1ub(31, 5, 313)
    assert passes_y1ub(18, 43, 1009)
    y = y1_upper_bound(18, 43)
    assert passes_y1ub(18, 43, y) and not passes_y1ub(18, 43, y + 1)
    assert y_search_limit(18, 43) == y == 2677
    assert y_search_limit(31, 5) == 1699


@given(st.integers(1, 400), st.integers(1, 400))
def test_y1ub_is_exact_threshold(a, b):
    y = y1_upper_bound(a, b)
    assert y == 0 or passes_y1ub(a, b, y)
    assert not passes_y1ub(a, b, y + 1)


def test_small_scan_deterministic():
    one = scan(20000, workers=1)
    two = scan(20000, workers=2, shards=7)
    assert [r.to_json() for r in one] == [r.to_json() for r in two]
    assert scan(20000, workers=1, backend="python") == one


def test_scan_bounds():
    with pytest.raises(ValueError):
        scan(10 ** 8)
    with pytest.raises(ValueError):
        scan(100, y_cutoff=1)


def test_records_satisfy_equation(records):
    for r in records:
        inst = EquationInstance(r.a, r.b)
        assert r.solutions[0].key == (r.a, 1)
        assert all(s.satisfies(inst) for s in r.solutions)
        assert all(s.Y <= r.y_limit for s in r.solutions)


def test_record_examples(records):
    by = {(r.a, r.b): r for r in records}
    assert (3076289, 313) in [s.key for s in by[31, 5].solutions]
    r = by[19, 9]
    assert [(s.Y, s.coprime) for s in r.solutions] == [(1, True), (3, False), (41, True)]


def test_counts_by_interpretation(records):
    counts = interpretation_counts(records)
    assert counts == {"coprime_above_half_b2": 35, "all": 870, "coprime": 213}


def test_twelve_within_candidates(records):
    rep = check_twelve(records)
    assert set(rep.found) <= set(rep.candidates)
    assert not rep.missing
    assert set(PUBLISHED_TWELVE) <= set(rep.candidates)


def test_twelve_filter_diff_is_reported(records):
    rep = check_twelve(records)
    assert len(rep.found) == 29
    assert set(rep.extra) == set(rep.found) - set(PUBLISHED_TWELVE)
    with pytest.raises(ReproductionFailure) as exc:
        require_twelve(records)
    assert exc.value.diff == rep.diff()


def test_filter_on_flags_only(records):
    # b = 15 pairs are decided by enumeration, not by the shape of b
    fifteen = [r for r in records if r.b == 15 and r.single_family is not None]
    assert fifteen
    assert all(((r.a, r.b) in filter_twelve([r])) == (r.neg_pell and r.single_family) for r in fifteen)


def test_no_count_violations(records):
    assert theorem_violations(records) == []


def test_remark_families():
    assert family_b2_minus_5().ok and family_b2_minus_5().checked == 50
    assert family_5b2_minus_1().ok
    assert square_b_example().ok
    assert recurrence_terms(4) == [-3, 4, 203, 10146]
    assert 624 * 203 ** 2 + 625 == 5071 ** 2
    assert all(c.ok for c in verify_remark_families())


def test_family_first_members():
    b = 3
    assert ((b ** 6 + 5 * b ** 4 + 15 * b * b - 5) // 16, (b * b + 1) // 2) == (79, 5)
    assert 239 ** 2 - 2 * 13 ** 4 == -1


def test_final_check_examples():
    assert final_check(31, 5).coprime == ((31, 1), (3076289, 313))
    assert final_check(1, 3).coprime == ((1, 1), (79, 5))
    # D = 2 has the second solution (239, 13) from the a = (5b^2-1)/4 family at b = 1
    assert final_check(1, 1).coprime == ((1, 1), (239, 13))


def test_final_check_twelve():
    checks = final_check_twelve()
    assert all(c.ok and len(c.coprime) == 2 for c in checks)
    for c in checks:
        assert c.y_max >= max(1700, c.b ** 2)


def test_outputs(records):
    buf = io.StringIO()
    write_jsonl(records[:5], buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 5
    first = json.loads(lines[0])
    assert list(first)[:3] == ["a", "b", "D"]
    assert all(isinstance(s["X"], str) for s in first["solutions"])
    csv = summary_csv(records[:3]).splitlines()
    assert csv[0] == "a,b,D,n_solutions,neg_pell,single_family"
    assert len(csv) == 4


def test_interpretation_names():
    assert INTERPRETATIONS[0] == "coprime_above_half_b2"
    rec = scan(200, workers=1)[0]
    with pytest.raises(ValueError):
        rec.candidate_under("neither")
    assert math.gcd(rec.a, rec.b) == 1
