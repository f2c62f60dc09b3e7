"""Shared fixtures for the test suite.

The acceptance tests record a verdict per criterion; the terminal
summary hook prints them as one line each at the end of the run, so the
pass/fail ledger is visible even though pytest captures test output.
"""

import pytest

_RESULTS: dict[int, str] = {}


@pytest.fixture
def acceptance_record():
    def _record(number: int, name: str, passed: bool) -> None:
        verdict = "PASS" if passed else "FAIL"
        _RESULTS[number] = f"criterion {number} ({name}): {verdict}"

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _RESULTS:
        terminalreporter.ensure_newline()
        terminalreporter.section("acceptance criteria")
        for number in sorted(_RESULTS):
            terminalreporter.write_line(_RESULTS[number])
