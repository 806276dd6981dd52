import math

import pytest

from levycalc.measures import Discrete, LevyTriple, StableMixture


@pytest.fixture
def poisson():
    return LevyTriple(1.0, 0.0, Discrete(((1.0, 1.0),)))


@pytest.fixture
def gaussian():
    return LevyTriple(0.0, 1.0, Discrete())


@pytest.fixture
def stable():
    return LevyTriple(0.0, 0.0, StableMixture(((1, 1.0, 1.0),)))


@pytest.fixture
def atom_e():
    return LevyTriple(0.0, 0.0, Discrete(((math.e, 1.0),)))
