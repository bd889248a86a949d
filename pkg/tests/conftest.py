import pytest

_CRITERIA = []


@pytest.fixture
def report():
    """Record one pass/fail line for an acceptance criterion.

    ``report(name, ok, detail)`` stores the line (shown in the terminal
    summary) and prints it; the caller still asserts ``ok``.
    """

    def _report(name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" -- {detail}" if detail else "")
        _CRITERIA.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
