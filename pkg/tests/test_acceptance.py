"""The nine acceptance criteria, each at its stated tolerance.

Each test prints one PASS/FAIL line; run with -s or read the captured log.
"""

import pytest

from levycalc.verification import CRITERIA, run_criterion


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    res = run_criterion(k)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
