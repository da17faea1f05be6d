import pytest

from chirpcpt.levelsystem import default_system
from chirpcpt.propagator import propagate
from chirpcpt.pulse import ChirpedPulse


@pytest.fixture(scope="session")
def sodium():
    return default_system()


@pytest.fixture(scope="session")
def run_plus(sodium):
    """Default run with t0 = +16.5 fs, full density matrices kept."""
    return propagate(sodium, ChirpedPulse(t0=16.5), keep_rho=True)


@pytest.fixture(scope="session")
def run_minus(sodium):
    return propagate(sodium, ChirpedPulse(t0=-16.5), keep_rho=True)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
