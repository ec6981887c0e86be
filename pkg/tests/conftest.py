from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from pseudowall import fixture_model

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def b2():
    return fixture_model("b2.species")


@pytest.fixture(scope="session")
def a3l():
    return fixture_model("a3-left.quiver")


@pytest.fixture(scope="session")
def a3r():
    return fixture_model("a3-right.quiver")


def idx(model, name: str) -> int:
    return model.catalog.by_name(name)


def named(model, *names: str) -> set[int]:
    return {model.catalog.by_name(n) for n in names}


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
