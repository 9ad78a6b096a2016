import pytest

from decspace.gallery import (
    binomial_B,
    forests_H,
    graphs_G,
    injections_I,
    nerve_of_poset,
    vect_S,
)
from decspace.gallery.posets import chain_poset, divisibility_poset


@pytest.fixture(scope="session")
def binomial3():
    return binomial_B(3, 3)


@pytest.fixture(scope="session")
def binomial4():
    return binomial_B(4, 3)


@pytest.fixture(scope="session")
def forests3():
    return forests_H(3, 3)


@pytest.fixture(scope="session")
def forests4():
    return forests_H(4, 3)


@pytest.fixture(scope="session")
def graphs3():
    return graphs_G(3, 3)


@pytest.fixture(scope="session")
def vect22():
    return vect_S(2, 2, 3)


@pytest.fixture(scope="session")
def chain_nerve():
    return nerve_of_poset(chain_poset(2), 3)


@pytest.fixture(scope="session")
def divisibility_nerve():
    return nerve_of_poset(divisibility_poset((1, 2, 4)), 3)


@pytest.fixture(scope="session")
def injections3():
    return injections_I(3, 3)
