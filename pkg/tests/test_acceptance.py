"""Acceptance criteria; each test prints one PASS/FAIL line."""

import pytest

from spinaction.selftest import CRITERIA


@pytest.mark.parametrize("label,check", CRITERIA, ids=[label for label, _ in CRITERIA])
def test_criterion(label, check, capsys):
    result = check()
    with capsys.disabled():
        print(f"\n[{'PASS' if result.passed else 'FAIL'}] criterion {label}: {result.detail}")
    assert result.passed, result.detail
