"""Shared fixtures: the small named posets and relations used across the suite."""

import pytest

from orderlab.auxrel import bottom_aux, leq_aux, validate_aux
from orderlab.poset import antichain, chain, diamond


@pytest.fixture
def c3():
    return chain(3)


@pytest.fixture
def d4():
    return diamond()


@pytest.fixture
def a2():
    return antichain(2)


@pytest.fixture
def r1(c3):
    """Relation on the 3-chain: 0 below everything, 1 below 2, nothing else."""
    return validate_aux(c3, [(0, 0), (0, 1), (0, 2), (1, 2)])


@pytest.fixture
def r_bot(c3):
    return bottom_aux(c3)


@pytest.fixture
def leq3(c3):
    return leq_aux(c3)
