import sys

import numpy as np
import pytest

from fresnel_radon import ChirpletParams, chirplet_sampled, make_centered_grid


@pytest.fixture(scope="session")
def grid():
    return make_centered_grid(1024, 8.0)


@pytest.fixture(scope="session")
def grid512():
    return make_centered_grid(512, 8.0)


@pytest.fixture(scope="session")
def chirp(grid):
    """Chirplet eps=1, beta=0.5 on the default grid."""
    return chirplet_sampled(ChirpletParams(1.0, 0.5), grid)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
