import itertools
from fractions import Fraction

import pytest

from superalg import (
    CRATIONAL,
    F64,
    RATIONAL,
    ComplexRational,
    GrassmannElement,
    epsilon_sign,
    indices_of,
)
from conftest import random_element


def bubble_sort_sign(seq):
    """Brute-force oracle: parity of the bubble-sort transposition count."""
    seq = list(seq)
    swaps = 0
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                swaps += 1
    return -1 if swaps % 2 else 1


def test_epsilon_sign_examples():
    assert epsilon_sign((1,), (2,)) == 1
    assert epsilon_sign((2,), (1,)) == bubble_sort_sign([2, 1]) == -1
    assert epsilon_sign((1, 3), (2,)) == bubble_sort_sign([1, 3, 2]) == -1
    with pytest.raises(ValueError):
        epsilon_sign((1, 2), (2, 3))


def test_epsilon_sign_matches_bubble_oracle_exhaustively():
    n = 6
    universe = list(range(1, n + 1))
    for size_a in range(n + 1):
        for a in itertools.combinations(universe, size_a):
            rest = [x for x in universe if x not in a]
            for size_b in range(len(rest) + 1):
                for b in itertools.combinations(rest, size_b):
                    assert epsilon_sign(a, b) == bubble_sort_sign(list(a) + list(b))


def test_epsilon_cocycle_associativity_witness():
    n = 6
    universe = list(range(1, n + 1))
    for a in itertools.combinations(universe, 2):
        rest = [x for x in universe if x not in a]
        for b in itertools.combinations(rest, 2):
            rest2 = [x for x in rest if x not in b]
            for c in itertools.combinations(rest2, 1):
                ab = tuple(sorted(a + b))
                bc = tuple(sorted(b + c))
                assert epsilon_sign(a, b) * epsilon_sign(ab, c) == epsilon_sign(
                    b, c
                ) * epsilon_sign(a, bc)


def gen(n, i, ring=RATIONAL):
    return GrassmannElement.generator(n, ring, i)


def test_multiply_examples():
    x1, x2 = gen(2, 1), gen(2, 2)
    assert x1 * x2 == GrassmannElement.monomial(2, RATIONAL, (1, 2))
    assert x2 * x1 == -GrassmannElement.monomial(2, RATIONAL, (1, 2))
    # (xi1 + xi2 xi3 xi4)^2 = 0: both terms are odd
    n = 4
    e = gen(n, 1) + gen(n, 2) * gen(n, 3) * gen(n, 4)
    assert (e * e).is_zero()


def brute_force_monomial_product(a, b, n):
    seq = list(indices_of(a)) + list(indices_of(b))
    if len(set(seq)) != len(seq):
        return None, 0
    return tuple(sorted(seq)), bubble_sort_sign(seq)


def test_multiply_matches_brute_force_on_monomials():
    n = 5
    for a in range(1 << n):
        for b in range(1 << n):
            prod = GrassmannElement.monomial(n, RATIONAL, a) * GrassmannElement.monomial(n, RATIONAL, b)
            target, sign = brute_force_monomial_product(a, b, n)
            if target is None:
                assert prod.is_zero()
            else:
                assert prod == GrassmannElement.monomial(n, RATIONAL, target, sign)


def test_graded_commutativity_exhaustive_monomials():
    n = 6
    for a in range(1 << n):
        pa = bin(a).count("1") % 2
        ma = GrassmannElement.monomial(n, RATIONAL, a)
        for b in range(1 << n):
            pb = bin(b).count("1") % 2
            mb = GrassmannElement.monomial(n, RATIONAL, b)
            rhs = mb * ma
            if pa and pb:
                rhs = -rhs
            assert ma * mb == rhs


def test_graded_commutativity_random_dense(rng):
    for n in (3, 4, 5):
        for _ in range(5):
            a = random_element(rng, n)
            b = random_element(rng, n)
            a0, a1 = a.even_part(), a.odd_part()
            b0, b1 = b.even_part(), b.odd_part()
            assert a0 * b0 == b0 * a0
            assert a0 * b1 == b1 * a0
            assert a1 * b1 == -(b1 * a1)


def test_associativity_random(rng):
    for _ in range(10):
        a, b, c = (random_element(rng, 4) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_nilpotency_of_soul(rng):
    for n in (2, 4, 6):
        x = random_element(rng, n)
        power = GrassmannElement.one(n, RATIONAL)
        for _ in range(n + 1):
            power = power * x.soul()
        assert power.is_zero()


def test_odd_square_and_anticommute(rng):
    for _ in range(10):
        a = random_element(rng, 5).odd_part()
        b = random_element(rng, 5).odd_part()
        assert (a * a).is_zero()
        assert a * b == -(b * a)


def test_conjugation_examples(rng):
    n = 3
    one = GrassmannElement.one(n, RATIONAL)
    x1 = gen(n, 1)
    assert (one + x1).conjugation() == one - x1
    x12 = GrassmannElement.monomial(n, RATIONAL, (1, 2))
    assert x12.conjugation() == x12
    for _ in range(10):
        x = random_element(rng, 4)
        assert x.conjugation().conjugation() == x
        assert x.conjugation_pow(3) == x.conjugation()
        assert x.conjugation_pow(2) == x


def test_complex_conjugate_examples(rng):
    n = 2
    i = ComplexRational(0, 1)
    x1 = gen(n, 1, CRATIONAL)
    assert (x1 * i).complex_conjugate() == x1 * (-i)
    # 1 - (ik/2) th1 th2 conjugates to its inverse factor
    k = Fraction(3, 2)
    x12 = GrassmannElement.monomial(n, CRATIONAL, (1, 2))
    factor = GrassmannElement.one(n, CRATIONAL) - x12 * (i * k * Fraction(1, 2))
    conj = factor.complex_conjugate()
    assert conj == GrassmannElement.one(n, CRATIONAL) + x12 * (i * k * Fraction(1, 2))
    assert conj * factor == GrassmannElement.one(n, CRATIONAL)
    for _ in range(10):
        a = random_element(rng, 4, CRATIONAL)
        b = random_element(rng, 4, CRATIONAL)
        assert (a * b).complex_conjugate() == a.complex_conjugate() * b.complex_conjugate()
        # the two conjugations commute
        assert a.conjugation().complex_conjugate() == a.complex_conjugate().conjugation()


def test_complex_conjugate_requires_complex_ring():
    with pytest.raises(ValueError):
        gen(2, 1).complex_conjugate()


def test_adjoin_generators(rng):
    x1 = gen(1, 1)
    lifted = x1.adjoin_generators(1)
    assert lifted.n == 2 and lifted == gen(2, 1)
    for _ in range(10):
        a = random_element(rng, 3)
        b = random_element(rng, 3)
        assert (a * b).adjoin_generators(2) == a.adjoin_generators(2) * b.adjoin_generators(2)
        assert a.adjoin_generators(2).body() == a.body()
    with pytest.raises(ValueError):
        random_element(rng, 3).adjoin_generators(14)


def test_inverse_and_abs(rng):
    for _ in range(10):
        x = random_element(rng, 4)
        if RATIONAL.is_zero(x.body()):
            x = x + 1
        assert x * x.inverse() == GrassmannElement.one(4, RATIONAL)
    y = GrassmannElement.scalar(2, RATIONAL, -3) + GrassmannElement.monomial(
        2, RATIONAL, (1, 2), 2
    )
    assert y.grassmann_abs() == -y


def test_derivative_convention():
    # d_(xi_j) xi^I = (-1)^(position - 1) xi^(I \ j)
    n = 3
    x123 = GrassmannElement.monomial(n, RATIONAL, (1, 2, 3))
    assert x123.derivative(1) == GrassmannElement.monomial(n, RATIONAL, (2, 3))
    assert x123.derivative(2) == -GrassmannElement.monomial(n, RATIONAL, (1, 3))
    assert x123.derivative(3) == GrassmannElement.monomial(n, RATIONAL, (1, 2))
    assert GrassmannElement.one(n, RATIONAL).derivative(1).is_zero()


def test_rename_generators():
    n = 3
    e = GrassmannElement.monomial(n, RATIONAL, (1, 2))
    swapped = e.rename_generators({1: 2, 2: 1})
    assert swapped == -GrassmannElement.monomial(n, RATIONAL, (1, 2))
    rotated = GrassmannElement.monomial(n, RATIONAL, (1, 3)).rename_generators(
        {1: 2, 2: 3, 3: 1}
    )
    assert rotated == -GrassmannElement.monomial(n, RATIONAL, (1, 2))


def test_exp_even():
    n = 4
    x = GrassmannElement.monomial(n, RATIONAL, (1, 2), Fraction(1, 3))
    e = x.exp()
    assert e == GrassmannElement.one(n, RATIONAL) + x
    y = x + GrassmannElement.monomial(n, RATIONAL, (3, 4), 2)
    assert y.exp() * (-y).exp() == GrassmannElement.one(n, RATIONAL)
    with pytest.raises(ValueError):
        (GrassmannElement.one(n, RATIONAL) + x).exp()
    with pytest.raises(ValueError):
        GrassmannElement.generator(n, RATIONAL, 1).exp()


def test_json_round_trip(rng):
    for ring in (RATIONAL, CRATIONAL):
        x = random_element(rng, 3, ring)
        data = x.to_json()
        assert GrassmannElement.from_json(data, ring) == x
    xf = GrassmannElement.monomial(3, F64, (1, 3), 0.5)
    assert GrassmannElement.from_json(xf.to_json(), F64) == xf
    # omitted terms are zero; [] is the body term
    data = {"n": 2, "terms": [{"index": [], "re": "5/3"}]}
    parsed = GrassmannElement.from_json(data, RATIONAL)
    assert parsed.body() == Fraction(5, 3)
    assert parsed.soul().is_zero()


def test_capacity_cap():
    with pytest.raises(ValueError):
        GrassmannElement.zero(17, RATIONAL)


# -- hypothesis property suite for the algebra laws ---------------------------

from hypothesis import given, settings, strategies as st


def element_strategy(n):
    coeff = st.fractions(min_value=-9, max_value=9, max_denominator=6)
    return st.lists(
        st.tuples(st.integers(min_value=0, max_value=(1 << n) - 1), coeff),
        max_size=6,
    ).map(
        lambda terms: sum(
            (GrassmannElement.monomial(n, RATIONAL, m, c) for m, c in terms),
            GrassmannElement.zero(n, RATIONAL),
        )
    )


@settings(max_examples=60, deadline=None)
@given(element_strategy(4), element_strategy(4), element_strategy(4))
def test_hypothesis_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * GrassmannElement.one(4, RATIONAL) == a


@settings(max_examples=60, deadline=None)
@given(element_strategy(4), element_strategy(4))
def test_hypothesis_graded_commutativity(a, b):
    a0, a1 = a.even_part(), a.odd_part()
    b0, b1 = b.even_part(), b.odd_part()
    assert a0 * b0 == b0 * a0
    assert a1 * b0 == b0 * a1
    assert a1 * b1 == -(b1 * a1)


@settings(max_examples=40, deadline=None)
@given(element_strategy(4))
def test_hypothesis_conjugation_is_algebra_involution(a):
    assert a.conjugation().conjugation() == a
    assert (a * a).conjugation() == a.conjugation() * a.conjugation()
    assert a.soul() ** 5 == GrassmannElement.zero(4, RATIONAL)
