import pytest

from qwmds.invariant import build_f
from qwmds.rootsys import build_root_system


_built = {}


def built(family, rank):
    key = (family, rank)
    if key not in _built:
        _built[key] = build_f(build_root_system(family, rank))
    return _built[key]


@pytest.fixture(scope="session")
def inv_a1():
    return built("A", 1)


@pytest.fixture(scope="session")
def inv_a2():
    return built("A", 2)


@pytest.fixture(scope="session")
def inv_a3():
    return built("A", 3)


@pytest.fixture(scope="session")
def inv_a4():
    return built("A", 4)


@pytest.fixture(scope="session")
def inv_d4():
    return built("D", 4)
