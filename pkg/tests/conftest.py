import pytest

from witt2 import GF2, RatFunc, SolverBounds
from witt2 import catalog


@pytest.fixture(scope="session")
def bounds():
    return SolverBounds(6, 4096)


@pytest.fixture(scope="session")
def Ft():
    return catalog.base_field()


@pytest.fixture(scope="session")
def Fst():
    return catalog.base_field_2var()


@pytest.fixture(scope="session")
def cats():
    return catalog.all_catalog()
