"""Reproduction criteria, one test each. Every test prints its verdict line."""

import pytest

from quarticpell.acceptance import CRITERIA, census_records


@pytest.fixture(scope="module", autouse=True)
def shared_census():
    census_records()


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    res = CRITERIA[number]()
    with capsys.disabled():
        print("\n" + res.line())
    if not res.passed:
        pytest.fail(res.line(), pytrace=False)
