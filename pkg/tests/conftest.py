import random
from fractions import Fraction

import pytest

from superalg import CRATIONAL, RATIONAL, ComplexRational, GrassmannElement


@pytest.fixture
def rng():
    return random.Random(20260811)


def random_fraction(rng, span=6, denom=4):
    return Fraction(rng.randrange(-span, span + 1), rng.randrange(1, denom + 1))


def random_crational(rng, span=6, denom=4):
    return ComplexRational(random_fraction(rng, span, denom),
                           random_fraction(rng, span, denom))


def random_element(rng, n, ring=RATIONAL, density=0.5, span=6):
    e = GrassmannElement.zero(n, ring)
    for mask in range(1 << n):
        if rng.random() < density:
            coeff = (
                random_crational(rng, span)
                if ring is CRATIONAL
                else random_fraction(rng, span)
            )
            e = e + GrassmannElement.monomial(n, ring, mask, coeff)
    return e


def random_even(rng, n, ring=RATIONAL, density=0.5):
    return random_element(rng, n, ring, density).even_part()


def random_odd(rng, n, ring=RATIONAL, density=0.5):
    return random_element(rng, n, ring, density).odd_part()
