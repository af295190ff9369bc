"""Shared test configuration.

Collects the one-line acceptance verdicts recorded by
``test_acceptance`` and prints them after the run, outside pytest's
output capture, so the criterion summary is always visible.
"""

ACCEPTANCE_LINES = []


def record_acceptance_line(line):
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
