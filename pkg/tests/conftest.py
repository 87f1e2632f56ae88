"""Shared plumbing: collect acceptance-criterion lines for the run summary."""

import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Recorder for acceptance tests: prints and stores one PASS/FAIL line."""

    def _record(num, ok, detail):
        line = f"CRITERION {num}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append((num, line))
        print(line)
        return line

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
