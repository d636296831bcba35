import pytest

from semicanon.canonical import CanonicalSpec, build_canonical
from semicanon.exactfield import QQ, make_field


@pytest.fixture(scope="session")
def F():
    return make_field()


@pytest.fixture(scope="session")
def Q():
    return QQ


@pytest.fixture(scope="session")
def k2():
    return build_canonical(CanonicalSpec((1, 1)))


@pytest.fixture(scope="session")
def ts222():
    return build_canonical(CanonicalSpec((2, 2, 2), (2,)))


@pytest.fixture(scope="session")
def ts333():
    return build_canonical(CanonicalSpec((3, 3, 3), (2,)))


@pytest.fixture(scope="session")
def ts233():
    return build_canonical(CanonicalSpec((2, 3, 3), (2,)))
