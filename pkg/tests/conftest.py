import pytest

_LINES = []


@pytest.fixture
def acceptance():
    """Recorder for acceptance gates: one printed PASS/FAIL line each.

    The lines are echoed again in the terminal summary so they stay
    visible even though pytest captures per-test stdout.
    """
    def record(name, passed, detail):
        line = f"[{name}] {'PASS' if passed else 'FAIL'}  {detail}"
        _LINES.append(line)
        print(line)
        return bool(passed)
    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance gates")
        for line in _LINES:
            terminalreporter.write_line(line)
