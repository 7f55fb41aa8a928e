import pytest

from ramyip import (
    DUAL_UNTWISTED, KOORNWINDER, MIXED_A2N2, MIXED_A2N2_DAGGER, UNTWISTED,
    build_datum,
)


@pytest.fixture(scope="session")
def d32():
    """Reduced D_3^(2) over the Koornwinder lattice pair."""
    return build_datum(("B", 2), ("B", 2), "Q", "Q", DUAL_UNTWISTED)


@pytest.fixture(scope="session")
def koorn2():
    return build_datum(("B", 2), ("B", 2), "Q", "Q", KOORNWINDER)


@pytest.fixture(scope="session")
def a2pp():
    return build_datum(("A", 2), ("A", 2), "P", "P", UNTWISTED)


@pytest.fixture(scope="session")
def c2un():
    return build_datum(("C", 2), ("B", 2), "P", "P", UNTWISTED)


@pytest.fixture(scope="session")
def g2un():
    return build_datum(("G", 2), ("G", 2), "P", "P", UNTWISTED)


@pytest.fixture(scope="session")
def b2pp():
    return build_datum(("B", 2), ("B", 2), "P", "P", DUAL_UNTWISTED)


@pytest.fixture(scope="session")
def mixed2():
    return build_datum(("B", 2), ("B", 2), "Q", "Q", MIXED_A2N2)


@pytest.fixture(scope="session")
def mixed2dag():
    return build_datum(("B", 2), ("B", 2), "Q", "Q", MIXED_A2N2_DAGGER)
