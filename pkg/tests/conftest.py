import numpy as np
import pytest

from admesh.geometry import GALLERY_NAMES, Boundary, circle_arc, gallery, segment


@pytest.fixture(scope="session")
def boundaries():
    return {name: gallery(name) for name in GALLERY_NAMES}


@pytest.fixture(scope="session")
def interval():
    """[-1, 1] as the identity-parametrized segment."""
    return Boundary((segment(-1, 1),), "segment")


@pytest.fixture(scope="session")
def unit_circle():
    return Boundary((circle_arc(0, 1),), "circle")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config._admesh_acceptance = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_admesh_acceptance", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
