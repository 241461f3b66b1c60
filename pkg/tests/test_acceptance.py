"""The acceptance gate: every criterion at its stated budget.

Each test prints the one-line pass/fail summary for its criterion; the
same suite backs the CLI selftest command.
"""

import time

import pytest

from witt2 import selftest


@pytest.mark.parametrize(
    "name,fn,limit", selftest.CRITERIA, ids=[c[0] for c in selftest.CRITERIA]
)
def test_criterion(name, fn, limit, bounds):
    t0 = time.perf_counter()
    ok, details = fn(bounds)
    elapsed = time.perf_counter() - t0
    res = selftest.CriterionResult(name, ok, elapsed, limit, details)
    print(res.line())
    assert ok, details
    assert elapsed < limit, f"{name} exceeded its {limit:.0f}s budget ({elapsed:.1f}s)"
