"""Acceptance gate: every certification criterion must pass at its
tolerance and within its runtime budget.

Run with `pytest tests/test_acceptance.py -v -s` to see one line per
criterion, or `remezkit verify` for the same suite from the CLI.
"""

import pytest

from remezkit.verification import CRITERION_IDS, run_criterion


@pytest.mark.parametrize("cid", CRITERION_IDS)
def test_criterion(cid):
    result = run_criterion(cid)
    print(result.line())
    assert result.passed, result.line()
