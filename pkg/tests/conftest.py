import random

import pytest

from cy2stab import pimod, universe


@pytest.fixture(scope="session")
def oracle():
    return pimod.PiOracle(3)


@pytest.fixture(scope="session")
def universe22():
    return universe.enumerate_iso_classes(3, (2, 2))


@pytest.fixture(scope="session")
def universe22_nonzero(universe22):
    return [m for m in universe22 if not m.is_zero()]


@pytest.fixture(scope="session")
def charge_grid_100():
    rng = random.Random(20240)
    return universe.standard_region_charges(100, rng)
