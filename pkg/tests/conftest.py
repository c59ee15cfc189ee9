import pytest

from calibration import load_device_profile, synthetic_linear
from config import settings
from lattice import fragment, make_heavy_hex


@pytest.fixture(scope="session")
def synthetic_cal():
    return synthetic_linear(1001)


@pytest.fixture(scope="session")
def device():
    return load_device_profile("advantage_system6_2")


@pytest.fixture(scope="session")
def falcon():
    return make_heavy_hex("falcon27")


@pytest.fixture(scope="session")
def frag10(falcon):
    return fragment(falcon, 10)


@pytest.fixture(scope="session")
def frag6(falcon):
    return fragment(falcon, 6)


@pytest.fixture(scope="session")
def frag4(falcon):
    return fragment(falcon, 4)


def pytest_collection_modifyitems(config, items):
    if settings.RUN_HEAVY_TESTS:
        return
    skip = pytest.mark.skip(reason="heavy test: set RUN_HEAVY_TESTS=1")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)
