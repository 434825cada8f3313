from fractions import Fraction

import pytest

from superalg import (
    RATIONAL,
    FiberSplit,
    GrassmannElement,
    OddSubstitution,
    berezin_integral,
    change_of_variables_residual,
    fiber_jacobian_piber,
    substitute_odd,
)
from conftest import random_element, random_fraction, random_odd


def gen(n, i):
    return GrassmannElement.generator(n, RATIONAL, i)


def mono(n, idx, c=None):
    return GrassmannElement.monomial(n, RATIONAL, idx, c)


def test_berezin_integral_examples():
    full2 = FiberSplit.full(2)
    c = Fraction(7, 3)
    assert berezin_integral(mono(2, (1, 2), c), full2) == GrassmannElement.scalar(2, RATIONAL, c)
    assert berezin_integral(gen(2, 2) * gen(2, 1), full2) == GrassmannElement.scalar(2, RATIONAL, -1)
    assert berezin_integral(GrassmannElement.one(1, RATIONAL), FiberSplit.full(1)).is_zero()


def test_berezin_integral_retains_parameters():
    split = FiberSplit(3, (1, 3))
    f = mono(3, (1, 2, 3), 5)
    # xi^(123) = -xi^(13) xi^(2): integral = -5 xi_2
    assert berezin_integral(f, split) == mono(3, (2,), -5)


def test_integral_is_linear(rng):
    split = FiberSplit(4, (2, 4))
    a, b = random_element(rng, 4), random_element(rng, 4)
    c = random_fraction(rng)
    assert berezin_integral(a + b * c, split) == berezin_integral(a, split) + berezin_integral(b, split) * c


def test_integral_parity():
    # integration over an n-generator fiber shifts parity by n
    for n_fib in (1, 2, 3):
        n = n_fib + 1
        split = FiberSplit(n, tuple(range(1, n_fib + 1)))
        for mask in range(1 << n):
            f = mono(n, mask)
            out = berezin_integral(f, split)
            if out.is_zero():
                continue
            assert out.parity() == (f.parity() + n_fib) % 2


def test_substitute_examples():
    swap = OddSubstitution(FiberSplit.full(2), {1: gen(2, 2), 2: gen(2, 1)})
    assert substitute_odd(gen(2, 1), swap) == gen(2, 2)

    split2 = FiberSplit.full(2)
    a, b, c, d = (Fraction(x) for x in (2, 3, 5, 7))
    images = {1: gen(2, 1) * a + gen(2, 2) * b, 2: gen(2, 1) * c + gen(2, 2) * d}
    sub2 = OddSubstitution(split2, images)
    out = substitute_odd(gen(2, 1) * gen(2, 2), sub2)
    assert out == mono(2, (1, 2), a * d - b * c)


def test_substitute_is_ring_homomorphism(rng):
    n = 4
    split = FiberSplit(n, (1, 2))
    images = {
        1: gen(n, 1) + gen(n, 2) * 2 + gen(n, 1) * gen(n, 3) * gen(n, 4),
        2: gen(n, 2) - gen(n, 3) * Fraction(1, 2),
    }
    sub = OddSubstitution(split, images)
    for _ in range(10):
        f, g = random_element(rng, n), random_element(rng, n)
        assert substitute_odd(f * g, sub) == substitute_odd(f, sub) * substitute_odd(g, sub)


def test_substitution_validation():
    split = FiberSplit.full(2)
    with pytest.raises(ValueError):
        OddSubstitution(split, {1: GrassmannElement.one(2, RATIONAL), 2: gen(2, 2)})
    with pytest.raises(ValueError):
        # singular body Jacobian
        OddSubstitution(split, {1: gen(2, 1), 2: gen(2, 1)})
    with pytest.raises(ValueError):
        OddSubstitution(split, {1: gen(2, 1)})


def test_fiber_jacobian_examples():
    split = FiberSplit.full(2)
    ident = OddSubstitution.identity(split, RATIONAL)
    assert fiber_jacobian_piber(ident) == GrassmannElement.one(2, RATIONAL)
    linear = OddSubstitution.linear(split, [[2, 0], [0, 3]], RATIONAL)
    assert fiber_jacobian_piber(linear) == GrassmannElement.scalar(2, RATIONAL, Fraction(1, 6))
    # frozen: xi1 -> xi1 (1 + xi2 xi3) at n = 3 has Det = 1 + xi2 xi3
    split3 = FiberSplit.full(3)
    sub3 = OddSubstitution(
        split3,
        {
            1: gen(3, 1) + gen(3, 1) * gen(3, 2) * gen(3, 3),
            2: gen(3, 2),
            3: gen(3, 3),
        },
    )
    expected = GrassmannElement.one(3, RATIONAL) - gen(3, 2) * gen(3, 3)
    assert fiber_jacobian_piber(sub3) == expected


def test_change_of_variables_identity_and_linear(rng):
    split = FiberSplit.full(3)
    ident = OddSubstitution.identity(split, RATIONAL)
    for _ in range(5):
        f = random_element(rng, 3)
        assert change_of_variables_residual(f, ident, split).is_zero()
    linear = OddSubstitution.linear(split, [[2, 1, 0], [0, 3, 1], [1, 0, 1]], RATIONAL)
    top = mono(3, (1, 2, 3), Fraction(4, 5))
    assert change_of_variables_residual(top, linear, split).is_zero()


def random_substitution(rng, split, n, extra_terms=1):
    """Invertible linear part plus sparse random nonlinear odd terms."""
    fiber = split.fiber
    while True:
        images = {}
        for i in fiber:
            img = GrassmannElement.zero(n, RATIONAL)
            for j in fiber:
                img = img + gen(n, j) * random_fraction(rng, 3)
            for _ in range(extra_terms):
                mask = 0
                size = rng.choice((3, 5))
                picks = rng.sample(range(1, n + 1), min(size, n))
                for p in picks:
                    mask |= 1 << (p - 1)
                if bin(mask).count("1") % 2:
                    img = img + GrassmannElement.monomial(n, RATIONAL, mask, random_fraction(rng, 3))
            images[i] = img
        try:
            return OddSubstitution(split, images)
        except ValueError:
            continue


def test_change_of_variables_random_nonlinear(rng):
    n = 5
    split = FiberSplit.full(n)
    for _ in range(25):
        sub = random_substitution(rng, split, n)
        f = random_element(rng, n)
        assert change_of_variables_residual(f, sub, split).is_zero()


def test_change_of_variables_with_parameters(rng):
    n = 5
    split = FiberSplit(n, (1, 2, 3))
    for _ in range(10):
        sub = random_substitution(rng, split, n)
        f = random_element(rng, n)
        assert change_of_variables_residual(f, sub, split).is_zero()


def test_translation_invariance(rng):
    # constant odd shifts by fresh parameter generators leave the integral fixed
    n = 5
    split = FiberSplit(n, (1, 2, 3))
    images = {j: gen(n, j) + gen(n, j + 2) for j in (1, 2, 3)}
    sub = OddSubstitution(split, images)
    # the shift generators 3+2=5 overlap the fiber for j=3; use disjoint shifts
    images = {1: gen(n, 1) + gen(n, 4), 2: gen(n, 2) + gen(n, 5), 3: gen(n, 3)}
    sub = OddSubstitution(split, images)
    for _ in range(10):
        f = random_element(rng, n)
        assert berezin_integral(substitute_odd(f, sub), split) == berezin_integral(f, split)
