"""Shared test plumbing: registry for acceptance pass/fail lines."""

import pytest

ACCEPTANCE_RESULTS = []


@pytest.fixture
def acceptance_registry():
    return ACCEPTANCE_RESULTS


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number, passed, description in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status} - {description}")
