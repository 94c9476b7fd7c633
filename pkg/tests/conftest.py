import pytest

from conelab.cone import SemilatticeCone
from conelab.generate import C3, M2, lattice_corpus


@pytest.fixture
def c3():
    return C3()


@pytest.fixture
def m2():
    return M2()


@pytest.fixture
def m2_cone(m2):
    return SemilatticeCone(m2)


@pytest.fixture
def c3_cone(c3):
    return SemilatticeCone(c3)


@pytest.fixture(scope="session")
def corpus():
    """Curated lattices plus 100 seeded random lattices of size <= 6."""
    return lattice_corpus(max_size=6, random_count=100, seed=20240601)
