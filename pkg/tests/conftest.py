import pytest

from hurwitz.branch_data import BranchDatum


def sphere(d, *parts):
    return BranchDatum.sphere_cover(0, d, *parts)


def torus(d, *parts):
    return BranchDatum.sphere_cover(1, d, *parts)


def genus(g, d, *parts):
    return BranchDatum.sphere_cover(g, d, *parts)


@pytest.fixture
def transposition_pair():
    return sphere(2, (2,), (2,))


@pytest.fixture
def torus_exception():
    return torus(6, (4, 2), (3, 3), (3, 3))


@pytest.fixture
def odd_sphere_datum():
    return sphere(5, (3, 2), (2, 2, 1), (4, 1))


@pytest.fixture
def sphere_first_family():
    return sphere(6, (4, 2), (2, 2, 2), (2, 2, 2))


@pytest.fixture
def sphere_second_family():
    return sphere(4, (2, 2), (2, 2), (3, 1))
