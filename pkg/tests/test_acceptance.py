"""One test per acceptance criterion; criterion 8 sums the recorded runtimes."""

import pytest

from twodesc import acceptance

_results: dict[int, acceptance.CriterionResult] = {}


def _run(number: int) -> acceptance.CriterionResult:
    if number not in _results:
        _results[number] = acceptance.CRITERIA[number]()
    r = _results[number]
    print(r.line())
    return r


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    r = _run(number)
    assert r.passed, r.line()


def test_criterion_8_catalog_runtime():
    results = [_run(n) for n in sorted(acceptance.CRITERIA)]
    r = acceptance.criterion_8(results)
    print(r.line())
    assert r.passed, r.line()
