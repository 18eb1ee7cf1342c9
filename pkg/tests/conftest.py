import pytest

from orbicluster.orbsurf import quiver_of
from orbicluster.verify import digon_triangulations, kappa0_modules, load_fixture


@pytest.fixture(scope="session")
def tris():
    return digon_triangulations()


@pytest.fixture(scope="session")
def kappa0(tris):
    q, b = quiver_of(tris[0])
    return tris[0], q, b


@pytest.fixture(scope="session")
def mods():
    return kappa0_modules()[1]


@pytest.fixture(scope="session")
def golden():
    return load_fixture("golden_kappa0.json")
