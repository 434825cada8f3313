import itertools
from fractions import Fraction

import pytest
import scipy.linalg
import numpy as np

from superalg import (
    CF64,
    F64,
    RATIONAL,
    GrassmannElement,
    SuperMatrix,
    berezinian,
    grassmann_det,
    pi_berezinian,
)
from conftest import random_element, random_even, random_odd


def scalar(n, v, ring=RATIONAL):
    return GrassmannElement.scalar(n, ring, v)


def gen(n, i, ring=RATIONAL):
    return GrassmannElement.generator(n, ring, i)


def leibniz_det_oracle(entries, n, ring):
    """Independent determinant oracle: the permutation sum."""
    size = len(entries)
    total = GrassmannElement.zero(n, ring)
    for perm in itertools.permutations(range(size)):
        sign = 1
        seen = list(perm)
        for i in range(size):
            for j in range(i + 1, size):
                if seen[i] > seen[j]:
                    sign = -sign
        term = GrassmannElement.one(n, ring)
        for i in range(size):
            term = term * entries[i][perm[i]]
        total = total + (term if sign > 0 else -term)
    return total


def random_even_matrix(rng, p, q, n, ring=RATIONAL, invertible=True):
    while True:
        entries = []
        for i in range(p + q):
            row = []
            for j in range(p + q):
                same_block = (i < p) == (j < p)
                e = random_even(rng, n, ring) if same_block else random_odd(rng, n, ring)
                row.append(e)
            entries.append(row)
        m = SuperMatrix(p, q, entries)
        if not invertible:
            return m
        try:
            m.inverse()
            det_d = grassmann_det(m.block_d(), n, ring) if q else None
            if q and ring.is_zero(det_d.body()):
                continue
            return m
        except ZeroDivisionError:
            continue


def test_grassmann_det_matches_leibniz_oracle(rng):
    for size in (1, 2, 3, 4):
        for _ in range(4):
            entries = [
                [random_even(rng, 4) for _ in range(size)] for _ in range(size)
            ]
            assert grassmann_det(entries, 4, RATIONAL) == leibniz_det_oracle(
                entries, 4, RATIONAL
            )


def test_berezinian_examples():
    n = 2
    z = GrassmannElement.zero(n, RATIONAL)
    m = SuperMatrix(1, 1, [[scalar(n, 2), z], [z, scalar(n, 3)]])
    assert berezinian(m) == scalar(n, Fraction(2, 3))
    for p, q in ((1, 1), (2, 1), (1, 2)):
        ident = SuperMatrix.identity(p, q, n, RATIONAL)
        assert berezinian(ident) == GrassmannElement.one(n, RATIONAL)
    coupled = SuperMatrix(
        1, 1, [[scalar(n, 1), gen(n, 1)], [gen(n, 2), scalar(n, 1)]]
    )
    expected = GrassmannElement.one(n, RATIONAL) - gen(n, 1) * gen(n, 2)
    assert berezinian(coupled) == expected


def test_berezinian_block_diagonal_is_det_ratio(rng):
    n = 3
    for _ in range(5):
        a = [[random_even(rng, n) for _ in range(2)] for _ in range(2)]
        d = [[random_even(rng, n) for _ in range(2)] for _ in range(2)]
        det_d = grassmann_det(d, n, RATIONAL)
        if RATIONAL.is_zero(det_d.body()):
            continue
        z = GrassmannElement.zero(n, RATIONAL)
        m = SuperMatrix.from_blocks(a, [[z, z], [z, z]], [[z, z], [z, z]], d)
        assert berezinian(m) == grassmann_det(a, n, RATIONAL) * det_d.inverse()


def test_berezinian_multiplicative_random(rng):
    # 200 random even invertible pairs across the three shapes, n <= 4
    count = 0
    for p, q, pairs, n in ((1, 1, 84, 3), (2, 2, 58, 4), (1, 2, 58, 4)):
        for _ in range(pairs):
            a = random_even_matrix(rng, p, q, n)
            b = random_even_matrix(rng, p, q, n)
            assert berezinian(a * b) == berezinian(a) * berezinian(b)
            count += 1
    assert count == 200


def test_pi_berezinian_examples(rng):
    n = 2
    z = GrassmannElement.zero(n, RATIONAL)
    m = SuperMatrix(1, 1, [[scalar(n, -2), z], [z, scalar(n, 3)]])
    assert pi_berezinian(m) == scalar(n, Fraction(2, 3))
    assert berezinian(m) == scalar(n, Fraction(-2, 3))
    ident = SuperMatrix.identity(1, 1, n, RATIONAL)
    assert pi_berezinian(ident) == GrassmannElement.one(n, RATIONAL)
    # multiplicative, and piBer = sign(body top determinant) Ber
    n = 4
    for _ in range(5):
        a = random_even_matrix(rng, 2, 2, n)
        b = random_even_matrix(rng, 2, 2, n)
        assert pi_berezinian(a * b) == pi_berezinian(a) * pi_berezinian(b)
        schur_sign = 1 if (berezinian(a) * grassmann_det(a.block_d(), n, RATIONAL)).body() > 0 else -1
        assert pi_berezinian(a) == berezinian(a) * schur_sign


def test_inverse(rng):
    n = 4
    ident = SuperMatrix.identity(2, 2, n, RATIONAL)
    assert ident.inverse() == ident
    one_entry = SuperMatrix(
        1,
        0,
        [[GrassmannElement.one(n, RATIONAL) + gen(n, 1) * gen(n, 2)]],
    )
    inv = one_entry.inverse()
    assert inv.entries[0][0] == GrassmannElement.one(n, RATIONAL) - gen(n, 1) * gen(n, 2)
    for _ in range(5):
        m = random_even_matrix(rng, 2, 2, n)
        assert m * m.inverse() == SuperMatrix.identity(2, 2, n, RATIONAL)
        assert m.inverse() * m == SuperMatrix.identity(2, 2, n, RATIONAL)
    singular = SuperMatrix.zero(1, 1, n, RATIONAL)
    with pytest.raises(ZeroDivisionError):
        singular.inverse()


def test_exp_nilpotent_osp_example():
    n = 2
    z = GrassmannElement.zero(n, RATIONAL)
    one = GrassmannElement.one(n, RATIONAL)
    xi, eta = gen(n, 1), gen(n, 2)
    v = SuperMatrix(1, 2, [[z, eta, xi], [xi, z, z], [-eta, z, z]])
    e = v.exp_nilpotent()
    bump = one + xi * eta * Fraction(1, 2)
    expected = SuperMatrix(
        1, 2, [[one - xi * eta, eta, xi], [xi, bump, z], [-eta, z, bump]]
    )
    assert e == expected
    assert e * (-v).exp_nilpotent() == SuperMatrix.identity(1, 2, n, RATIONAL)
    assert SuperMatrix.zero(1, 2, n, RATIONAL).exp_nilpotent() == SuperMatrix.identity(1, 2, n, RATIONAL)


def test_exp_nilpotent_commuting_split(rng):
    n = 4
    for _ in range(5):
        m = random_even_matrix(rng, 1, 1, n, invertible=False)
        nilpotent = SuperMatrix(
            1,
            1,
            [[e.soul() for e in row] for row in m.entries],
        )
        m2 = nilpotent * nilpotent
        lhs = (nilpotent + m2).exp_nilpotent()
        rhs = nilpotent.exp_nilpotent() * m2.exp_nilpotent()
        assert lhs == rhs


def test_exp_nilpotent_rejects_body():
    n = 2
    m = SuperMatrix.identity(1, 1, n, RATIONAL)
    with pytest.raises(ValueError):
        m.exp_nilpotent()


def test_exp_numeric_against_scipy_body(rng):
    n = 0
    for _ in range(5):
        body = np.array([[rng.uniform(-1, 1) for _ in range(2)] for _ in range(2)])
        entries = [
            [GrassmannElement.scalar(n, F64, body[i][j]) for j in range(2)]
            for i in range(2)
        ]
        m = SuperMatrix(2, 0, entries)
        result = m.exp_numeric(tol=1e-12)
        expected = scipy.linalg.expm(body)
        got = np.array([[result.entries[i][j].body() for j in range(2)] for i in range(2)])
        assert np.max(np.abs(got - expected)) < 1e-12


def test_exp_numeric_commuting_body_nilpotent_split(rng):
    # m = b + nu with b = c * I (so [b, nu] = 0): exp(m) = exp(b) exp_nilpotent(nu)
    n = 2
    c = 0.35
    b = SuperMatrix.identity(1, 1, n, F64).scale(c)
    nu = SuperMatrix(
        1,
        1,
        [
            [GrassmannElement.monomial(n, F64, (1, 2), 0.4), GrassmannElement.monomial(n, F64, (1,), -0.7)],
            [GrassmannElement.monomial(n, F64, (2,), 0.2), GrassmannElement.monomial(n, F64, (1, 2), -0.3)],
        ],
    )
    m = b + nu
    lhs = m.exp_numeric(tol=1e-12)
    rhs = nu.exp_nilpotent().scale(float(np.exp(c)))
    assert lhs.approx_eq(rhs, 1e-12)
    assert SuperMatrix.zero(1, 1, n, F64).exp_numeric() == SuperMatrix.identity(1, 1, n, F64)


def test_exp_numeric_requires_float_ring():
    m = SuperMatrix.identity(1, 1, 2, RATIONAL)
    with pytest.raises(ValueError):
        m.exp_numeric()


def test_declared_parity_validation():
    n = 2
    z = GrassmannElement.zero(n, RATIONAL)
    bad = [[GrassmannElement.one(n, RATIONAL), GrassmannElement.one(n, RATIONAL)],
           [z, GrassmannElement.one(n, RATIONAL)]]
    with pytest.raises(ValueError):
        SuperMatrix(1, 1, bad, declared_parity="even")
    ok = [[GrassmannElement.one(n, RATIONAL), gen(n, 1)], [gen(n, 2), GrassmannElement.one(n, RATIONAL)]]
    SuperMatrix(1, 1, ok, declared_parity="even")
    with pytest.raises(ValueError):
        berezinian(SuperMatrix(1, 1, bad))


def test_json_round_trip(rng):
    m = SuperMatrix(
        1,
        1,
        [
            [GrassmannElement.one(2, RATIONAL), gen(2, 1)],
            [gen(2, 2), GrassmannElement.one(2, RATIONAL)],
        ],
        declared_parity="even",
    )
    data = m.to_json()
    assert SuperMatrix.from_json(data, RATIONAL) == m
    assert data["p"] == 1 and data["q"] == 1 and data["parity"] == "even"
