import pytest

from ybx.scalars import PrimeField, RATIONAL


@pytest.fixture(scope="session")
def fp():
    return PrimeField()


@pytest.fixture(scope="session")
def rational():
    return RATIONAL


@pytest.fixture(scope="session", params=["q", "fp"])
def field(request, fp, rational):
    return rational if request.param == "q" else fp
