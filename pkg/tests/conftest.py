import numpy as np
import pytest

from snapout.function_space import Grid, MembraneParams

# h = 0.01 on both; the small window keeps tests quick where truncation at
# +-L does not matter, the standard one is used where it does
SMALL = Grid(10.0, 2001)
STANDARD = Grid(30.0, 6001)


@pytest.fixture
def grid():
    return SMALL


@pytest.fixture
def standard_grid():
    return STANDARD


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


PARAMS = [
    MembraneParams(0.5, 0.5),
    MembraneParams(1.0, 3.0),
    MembraneParams(2.0, 0.0),
    MembraneParams(0.0, 1.5),
    MembraneParams(0.3, 2.2),
]


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
