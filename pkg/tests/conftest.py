import pytest

_LINES = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Store one PASS/FAIL line per acceptance criterion for the run summary."""
    lines = request.config.stash.setdefault(_LINES, [])

    def add(number, ok, detail):
        lines.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        print(lines[-1])
        return ok

    return add


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
