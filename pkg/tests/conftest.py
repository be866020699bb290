"""Shared pytest hooks: surface the acceptance-gate result lines.

test_acceptance.py appends one line per criterion to ACCEPTANCE_LINES; the
terminal-summary hook prints them after the run, outside output capture, so
they are visible in ordinary `pytest -v` output.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
