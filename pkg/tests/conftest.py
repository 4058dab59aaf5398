import pytest


@pytest.fixture
def acceptance(request):
    """Collects one summary line per acceptance criterion."""
    lines = request.config.stash.setdefault(_KEY, [])
    return lines.append


_KEY = pytest.StashKey()


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
