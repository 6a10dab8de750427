import numpy as np
import pytest
from hypothesis import settings

from elldqg import ModulusParams

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def params():
    return ModulusParams(0.2, 0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def lam_samples():
    return np.array([0.31 + 0.07j, 0.58 - 0.12j, 0.77 + 0.21j, 0.44 + 0.0j])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
