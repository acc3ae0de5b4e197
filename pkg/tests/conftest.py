import pytest

from gdplab.scenarios import SCENARIOS, builtin_config, simulate_config

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def runs():
    """Simulated run of every built-in scenario, keyed by name."""
    return {name: simulate_config(builtin_config(name)) for name in SCENARIOS}


@pytest.fixture
def acceptance():
    """Record one acceptance line: ``acceptance(number, title, ok, detail)``."""

    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" -- {detail}"
        _ACCEPTANCE.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
