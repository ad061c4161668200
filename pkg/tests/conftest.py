import random

import pytest

from char2orth.field import GF2, GF4, GF8, RATFUNC


@pytest.fixture
def gf2():
    return GF2


@pytest.fixture
def gf4():
    return GF4


@pytest.fixture
def gf8():
    return GF8


@pytest.fixture
def f2t():
    return RATFUNC


@pytest.fixture
def rng():
    return random.Random(20240611)
