from pathlib import Path

import pytest

from hyperflat.curve import HyperellipticCurve
from hyperflat.exact_algebra import QQ, PrimeField

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def g2():
    """y^2 = x^5 + 1 over Q with the rational point (0, 1)."""
    return HyperellipticCurve(QQ, [1, 0, 0, 0, 0, 1], hints=[(0, 1)])


@pytest.fixture(scope="session")
def g2p():
    return HyperellipticCurve(PrimeField(101), [3, 1, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def g3():
    return HyperellipticCurve(PrimeField(1009), [1, 1, 0, 0, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def data_dir():
    return DATA
