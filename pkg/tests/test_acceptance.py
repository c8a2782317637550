"""Acceptance gate: one test per shipped guarantee, exact tolerances.

Each test prints a PASS/FAIL line (visible with -s or on failure); the same
checks back the ``grapheq verify`` command.
"""

import pytest

from grapheq import acceptance


@pytest.mark.parametrize(
    "check",
    acceptance.ALL_CHECKS,
    ids=[c.__name__.removeprefix("check_") for c in acceptance.ALL_CHECKS],
)
def test_acceptance(check):
    result = check()
    print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"
