import sys

import pytest
from hypothesis import HealthCheck, settings

from equivar import fixtures

settings.register_profile(
    "repo", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def named():
    """Built-in fixtures, built once per session."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = fixtures.FIXTURES[name]()
        return cache[name]

    return get


@pytest.fixture(scope="session")
def quadric(named):
    return named("quadric")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for check in mod.CRITERIA:
        terminalreporter.write_line(mod.RESULTS.get(check.__name__, f"FAIL {check.__name__}: not run"))
