import pytest

from skewlat import constructions, search


@pytest.fixture(scope="session")
def census5():
    """All skew lattices up to isomorphism for n = 1..5, computed once."""
    return {n: search.census(n) for n in range(1, 6)}


@pytest.fixture(scope="session")
def threes():
    return constructions.fixed("3R0"), constructions.fixed("3R1")
