import random
from fractions import Fraction

import pytest
from hypothesis import settings

from e6coset import lattice

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260809)


def random_point(rng, bound=3) -> lattice.LatticePoint:
    return lattice.LatticePoint(rng.randint(-bound, bound) for _ in range(6))


@pytest.fixture(scope="session")
def sample_points(rng):
    return [random_point(rng) for _ in range(40)]


def frac(a, b=1) -> Fraction:
    return Fraction(a, b)
