import numpy as np
import pytest

from s4bell import build_representation, standard_orbit
from s4bell.classical import enumerate_strategies

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def rep():
    return build_representation()


@pytest.fixture(scope="session")
def orbit(rep):
    return standard_orbit(rep)


@pytest.fixture(scope="session")
def enumeration():
    return enumerate_strategies(workers=1)


@pytest.fixture
def rng():
    return np.random.default_rng(20141)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
