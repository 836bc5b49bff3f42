import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_acceptance_lines = []


def record_acceptance(line):
    """Collect a criterion verdict for the end-of-run summary section."""
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.line(line)
