import random

import pytest

from equidim import PolyRing, PrimeField


@pytest.fixture
def gf5():
    return PrimeField(5)


@pytest.fixture
def big_field():
    return PrimeField(65521)


@pytest.fixture
def ring_xy(gf5):
    return PolyRing(gf5, ("x", "y"))


@pytest.fixture
def ring_xyz(gf5):
    return PolyRing(gf5, ("x", "y", "z"))


@pytest.fixture
def rng():
    return random.Random(12345)


def random_poly(ring, rng, terms=4, max_deg=3):
    """Small random polynomial for property loops."""
    p = ring.field.p
    out = ring.zero()
    for _ in range(terms):
        exps = [0] * ring.nvars
        for _ in range(rng.randrange(max_deg + 1)):
            exps[rng.randrange(ring.nvars)] += 1
        out = out + ring.monomial(exps, rng.randrange(p))
    return out
