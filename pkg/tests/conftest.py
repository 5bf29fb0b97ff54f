import time

import pytest

from gamma2cat.monoidal import fixture, promote
from gamma2cat.ktheory import ko_gamma, ko_level
from gamma2cat.adjunction import bounded_unit_target


def pytest_configure(config):
    config._gamma2cat_t0 = time.time()


def pytest_collection_modifyitems(config, items):
    # the acceptance module asserts the suite wall clock, so it runs last
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")


@pytest.fixture(scope="session")
def f2():
    return fixture("F2")


@pytest.fixture(scope="session")
def f3():
    return fixture("F3")


@pytest.fixture(scope="session")
def f5():
    return fixture("F5")


@pytest.fixture(scope="session")
def f2_gamma2(f2):
    return ko_gamma(promote(f2), 2)


@pytest.fixture(scope="session")
def f2_gamma3(f2):
    return ko_gamma(promote(f2), 3)


@pytest.fixture(scope="session")
def f5_level2(f5):
    return ko_level(f5, 2)


@pytest.fixture(scope="session")
def f5_gamma2(f5):
    return ko_gamma(f5, 2)


@pytest.fixture(scope="session")
def f2_unit_target(f2_gamma2):
    """The unit into the materialized subdiagram target, plus the target."""
    return bounded_unit_target(f2_gamma2, 2, 2)
