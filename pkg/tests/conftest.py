import pytest

from tracesys.fixtures import (
    aztec_system,
    smallest_irreducible_monoid,
    two_state_system,
    two_terminal_system,
)
from tracesys.measure import uniform_measure
from tracesys.system import ConcurrentSystem


@pytest.fixture(scope="session")
def e1():
    return two_state_system()


@pytest.fixture(scope="session")
def aztec():
    return aztec_system()


@pytest.fixture(scope="session")
def canonical_abc():
    return ConcurrentSystem.canonical(smallest_irreducible_monoid())


@pytest.fixture(scope="session")
def twelve():
    return two_terminal_system()


@pytest.fixture(scope="session")
def irreducible_fixtures(e1, aztec, canonical_abc, twelve):
    return {"e1": e1, "aztec": aztec, "canonical_abc": canonical_abc, "twelve": twelve}


@pytest.fixture(scope="session")
def e1_measure(e1):
    return uniform_measure(e1)


@pytest.fixture(scope="session")
def aztec_measure(aztec):
    return uniform_measure(aztec)


@pytest.fixture(scope="session")
def twelve_measure(twelve):
    return uniform_measure(twelve)
