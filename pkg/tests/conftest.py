"""Shared pytest plumbing.

The acceptance suite records one human-readable line per criterion;
printing them from inside tests would be swallowed by output capture,
so they are replayed in the terminal summary where capture is off.
"""

ACCEPTANCE_LINES = []


def record_criterion(num: int, description: str, ok: bool) -> str:
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}: {description}"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)
    return line


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
