import itertools
from fractions import Fraction

import pytest

from superalg import RATIONAL, GrassmannElement
from superalg import liealg as la
from conftest import random_fraction


def gen(n, i):
    return GrassmannElement.generator(n, RATIONAL, i)


def random_oddp_element(rng, alg, n, density=0.5):
    """Element of the odd-basis span with random odd coefficients."""
    coeffs = []
    for i in range(alg.dim):
        if i < alg.d:
            coeffs.append(GrassmannElement.zero(n, RATIONAL))
        else:
            e = GrassmannElement.zero(n, RATIONAL)
            for mask in range(1, 1 << n):
                if bin(mask).count("1") % 2 and rng.random() < density:
                    e = e + GrassmannElement.monomial(n, RATIONAL, mask, random_fraction(rng, 4))
            coeffs.append(e)
    return la.LieElement(alg, coeffs)


def test_presets_validate():
    for alg in (la.heisenberg_like(1), la.heisenberg_like(3), la.axi_beta(), la.osp12()):
        alg.validate()
    assert la.preset("heisenberg-like", 2).m == 2
    assert la.preset("heisenberg-like(3)").m == 3
    assert la.preset("osp12").name == "osp12"
    with pytest.raises(ValueError):
        la.preset("nonsense")


def test_corrupted_structure_constants_rejected():
    data = la.osp12().to_json()
    # flip one sign: breaks antisymmetry/Jacobi
    bad = [list(b) for b in data["brackets"]]
    for b in bad:
        if b[:3] == ["e2", "e3", "e1"]:
            b[3] = "-1"
    with pytest.raises(ValueError):
        la.SuperLieAlgebra.from_json({**data, "brackets": bad})
    # break the grading
    bad2 = [list(b) for b in data["brackets"]] + [["e1", "e2", "f1", "1"], ["e2", "e1", "f1", "-1"]]
    with pytest.raises(ValueError):
        la.SuperLieAlgebra.from_json({**data, "brackets": bad2})


def test_json_round_trip():
    alg = la.osp12()
    again = la.SuperLieAlgebra.from_json(alg.to_json())
    assert again == alg


def test_bracket_examples(rng):
    alg = la.osp12()
    n = 0
    e1 = alg.basis_element("e1", n, RATIONAL)
    e2 = alg.basis_element("e2", n, RATIONAL)
    e3 = alg.basis_element("e3", n, RATIONAL)
    assert la.bracket(e2, e3) == e1
    abelian = la.SuperLieAlgebra("abelian", ["x", "y"], [], [])
    n = 2
    X = abelian.basis_element("x", n, RATIONAL) + abelian.basis_element(
        "y", n, RATIONAL, gen(n, 1) * gen(n, 2)
    )
    assert la.bracket(X, X).is_zero()


def test_graded_jacobi_on_random_triples(rng):
    alg = la.osp12()
    n = 4
    for _ in range(5):
        xs = [random_oddp_element(rng, alg, n) for _ in range(3)]
        # all three are even overall, so the plain Jacobi identity applies
        a, b, c = xs
        residual = (
            la.bracket(a, la.bracket(b, c))
            + la.bracket(b, la.bracket(c, a))
            + la.bracket(c, la.bracket(a, b))
        )
        assert residual.is_zero()


def test_ad_matrix_osp_displayed():
    alg = la.osp12()
    n = 2
    xi, eta = gen(n, 1), gen(n, 2)
    v = alg.basis_element("f1", n, RATIONAL, xi) + alg.basis_element("f2", n, RATIONAL, eta)
    m = la.ad_matrix(v)
    from superalg.repharness.ospcheck import displayed_ad_matrix

    assert (m - displayed_ad_matrix(n, RATIONAL)).max_abs() == 0
    sq = m * m
    for i, coeff in enumerate((2, 2, 2, -3, -3)):
        assert sq.entries[i][i] == xi * eta * coeff
    zero = alg.zero_element(n, RATIONAL)
    assert la.ad_matrix(zero).is_zero()


def test_series_spec_identities():
    order = 12
    from superalg.liealg import _series_div, _series_mul

    f = la.SeriesSpec("f", order)
    h = la.SeriesSpec("h", order)
    b = la.SeriesSpec("b", order)
    bp = la.SeriesSpec("b+", order)
    bm = la.SeriesSpec("b-", order)
    assert all(h.coeffs[k] == 0 for k in range(0, order + 1, 2))
    assert all(b.coeffs[k] == 0 for k in range(1, order + 1, 2))
    assert all(bp.coeffs[k] == 0 for k in range(1, order + 1, 2))
    assert all(bm.coeffs[k] == 0 for k in range(1, order + 1, 2))
    one = [Fraction(1)] + [Fraction(0)] * order
    inv_f = _series_div(one, f.coeffs, order)
    assert b.coeffs == [inv_f[k] + (Fraction(1, 2) if k == 1 else 0) for k in range(order + 1)]
    bh = _series_mul(b.coeffs, h.coeffs, order)
    assert bh == [Fraction(0), Fraction(1, 2)] + [Fraction(0)] * (order - 1)
    assert bp.coeffs == b.rescale_argument(2)
    # leading terms as printed in the reference series
    assert h.coeffs[1] == Fraction(1, 2) and h.coeffs[3] == Fraction(-1, 24)
    assert b.coeffs[2] == Fraction(1, 12) and b.coeffs[4] == Fraction(-1, 720)
    assert bm.coeffs[2] == Fraction(-1, 6) and bm.coeffs[4] == Fraction(7, 360)
    assert bp.coeffs[2] == Fraction(1, 3) and bp.coeffs[4] == Fraction(-1, 45)


def test_series_of_ad_examples():
    alg = la.osp12()
    n = 2
    xi, eta = gen(n, 1), gen(n, 2)
    v = alg.basis_element("f1", n, RATIONAL, xi) + alg.basis_element("f2", n, RATIONAL, eta)
    f1 = alg.basis_element("f1", n, RATIONAL)
    bp = la.SeriesSpec("b+")
    zero = alg.zero_element(n, RATIONAL)
    assert la.series_of_ad(bp, zero, f1) == f1
    # b+(ad v) f1 = (1 - xi eta) f1
    got = la.series_of_ad(bp, v, f1)
    expected = alg.basis_element("f1", n, RATIONAL, GrassmannElement.one(n, RATIONAL) - xi * eta)
    assert got == expected
    # h(ad v) f1 = ad(v) f1 / 2 = (-eta e1 - 2 xi e2)/2
    h = la.SeriesSpec("h")
    got_h = la.series_of_ad(h, v, f1)
    expected_h = alg.basis_element("e1", n, RATIONAL, eta * Fraction(-1, 2)) + alg.basis_element(
        "e2", n, RATIONAL, -xi
    )
    assert got_h == expected_h


def test_series_of_ad_rejects_non_nilpotent():
    alg = la.osp12()
    e1 = alg.basis_element("e1", 0, RATIONAL)
    f1 = alg.basis_element("f1", 0, RATIONAL)
    with pytest.raises(ValueError):
        la.series_of_ad(la.SeriesSpec("b+"), e1, f1)


def test_bch_low_degree_terms(rng):
    alg = la.osp12()
    n = 4
    x = random_oddp_element(rng, alg, n, density=0.4)
    y = random_oddp_element(rng, alg, n, density=0.4)
    half = RATIONAL.of(Fraction(1, 2))
    d2 = la.bch_truncated(x, y, 2)
    assert d2 == la.bracket(x, y).scale(half)
    d3 = la.bch_truncated(x, y, 3)
    twelveth = RATIONAL.of(Fraction(1, 12))
    expected3 = d2 + (
        la.bracket(x, la.bracket(x, y)) + la.bracket(y, la.bracket(y, x))
    ).scale(twelveth)
    assert d3 == expected3
    # commuting arguments: zero correction
    ab = la.SuperLieAlgebra("ab2", [], ["u", "w"], [("u", "u", None, 0)][0:0])
    u = ab.basis_element("u", 2, RATIONAL, gen(2, 1))
    w = ab.basis_element("w", 2, RATIONAL, gen(2, 2))
    assert la.bch_truncated(u, w, 6).is_zero()


def test_bch_exp_identity(rng):
    alg = la.osp12()
    n = 4
    rep = la.osp12_matrix_rep(n, RATIONAL)
    for _ in range(5):
        x = random_oddp_element(rng, alg, n, density=0.4)
        y = random_oddp_element(rng, alg, n, density=0.4)
        corr = la.bch_truncated(x, y, n)
        assert rep.exp(x) * rep.exp(y) == rep.exp(x + y + corr)
    with pytest.raises(ValueError):
        la.bch_truncated(x, y, 9)


def test_separation_closed_forms(rng):
    for alg, n in ((la.osp12(), 4), (la.heisenberg_like(2), 4)):
        x = random_oddp_element(rng, alg, n, density=0.5)
        y = random_oddp_element(rng, alg, n, density=0.5)
        terms = la.separation_terms(x, y)
        z = alg.zero_element(n, RATIONAL)
        br = la.bracket
        b2 = br(x, y).scale(RATIONAL.of(Fraction(1, 2)))
        b3 = br(x, br(x, y)).scale(RATIONAL.of(Fraction(1, 3))) - br(
            y, br(y, x)
        ).scale(RATIONAL.of(Fraction(1, 6)))
        b4 = (
            br(y, br(x, br(y, x))).scale(RATIONAL.of(Fraction(1, 8)))
            - br(x, br(x, br(x, y))).scale(RATIONAL.of(Fraction(1, 24)))
            + br(y, br(y, br(y, x))).scale(RATIONAL.of(Fraction(1, 24)))
        )
        assert terms.get(2, z) == b2
        assert terms.get(3, z) == b3
        assert terms.get(4, z) == b4


def test_separation_exp_identity(rng):
    alg = la.osp12()
    n = 4
    rep = la.osp12_matrix_rep(n, RATIONAL)
    for _ in range(10):
        x = random_oddp_element(rng, alg, n, density=0.6)
        y = random_oddp_element(rng, alg, n, density=0.6)
        b0, b1 = la.separate_even_odd(x, y)
        assert b0.in_wod() and b1.in_oddp()
        assert rep.exp(x) * rep.exp(y) == rep.exp(b0) * rep.exp(x + y + b1)


def test_separation_requires_oddp_even():
    alg = la.osp12()
    n = 2
    e1 = alg.basis_element("e1", n, RATIONAL)
    f1 = alg.basis_element("f1", n, RATIONAL, gen(n, 1))
    with pytest.raises(ValueError):
        la.separate_even_odd(e1, f1)


def test_invariant_blocks_examples():
    # v = 0: A = 0, B = I, H = 0
    alg = la.osp12()
    n = 2
    zero_v = alg.zero_element(n, RATIONAL)
    a, b, h = la.invariant_vf_blocks(zero_v)
    assert all(e.is_zero() for row in a for e in row)
    assert all(e.is_zero() for row in h for e in row)
    for i in range(2):
        for j in range(2):
            expected = GrassmannElement.one(n, RATIONAL) if i == j else GrassmannElement.zero(n, RATIONAL)
            assert b[i][j] == expected
    # Clifford-Heisenberg m=1: H = -xi/2, A = 0, B = 1
    ch = la.heisenberg_like(1)
    v = ch.basis_element("f1", 1, RATIONAL, gen(1, 1))
    a, b, h = la.invariant_vf_blocks(v)
    assert a[0][0].is_zero()
    assert b[0][0] == GrassmannElement.one(1, RATIONAL)
    assert h[0][0] == gen(1, 1) * Fraction(-1, 2)
    delta = la.delta_function(a, b, h)
    assert delta == GrassmannElement.one(1, RATIONAL)


def test_delta_examples():
    # axi-beta: Delta = 1; osp12: Delta = 1 + xi eta
    ab = la.axi_beta()
    v = ab.basis_element("f", 1, RATIONAL, gen(1, 1))
    blocks = la.invariant_vf_blocks(v)
    assert la.delta_function(*blocks) == GrassmannElement.one(1, RATIONAL)
    osp = la.osp12()
    n = 2
    v2 = osp.basis_element("f1", n, RATIONAL, gen(n, 1)) + osp.basis_element(
        "f2", n, RATIONAL, gen(n, 2)
    )
    blocks2 = la.invariant_vf_blocks(v2)
    expected = GrassmannElement.one(n, RATIONAL) + gen(n, 1) * gen(n, 2)
    assert la.delta_function(*blocks2) == expected


def test_s_matrix_for_constant_delta():
    delta = GrassmannElement.one(1, RATIONAL)
    s = la.s_matrix(delta)
    assert s[0][1] == Fraction(1)
    assert s[1][0] == Fraction(1)
    assert s[0][0] == 0 and s[1][1] == 0


def test_s_matrix_oracle_against_direct_integral(rng):
    # S_IJ = integral of Delta_((IuJ)^c) xi^I xi^J xi^((IuJ)^c), recomputed
    # here through actual Grassmann products and the Berezin integral
    from superalg import FiberSplit, berezin_integral

    n = 3
    delta = GrassmannElement.one(n, RATIONAL)
    for mask in range(1 << n):
        if bin(mask).count("1") % 2 == 0 and mask:
            delta = delta + GrassmannElement.monomial(n, RATIONAL, mask, random_fraction(rng, 3))
    s = la.s_matrix(delta)
    split = FiberSplit.full(n)
    full = (1 << n) - 1
    for i_mask in range(1 << n):
        for j_mask in range(1 << n):
            if i_mask & j_mask:
                assert s[i_mask][j_mask] == 0
                continue
            rest = full ^ (i_mask | j_mask)
            integrand = (
                GrassmannElement.scalar(n, RATIONAL, delta.coeff(rest))
                * GrassmannElement.monomial(n, RATIONAL, i_mask)
                * GrassmannElement.monomial(n, RATIONAL, j_mask)
                * GrassmannElement.monomial(n, RATIONAL, rest)
            )
            direct = berezin_integral(integrand, split)
            assert s[i_mask][j_mask] == direct.body()


def test_matrix_rep_validation():
    rep = la.osp12_matrix_rep(2, RATIONAL)
    rep.validate()
    rep_ab = la.axi_beta_matrix_rep(2, RATIONAL)
    rep_ab.validate()
    # breaking a matrix must be caught
    bad = [m for m in rep.matrices]
    bad[0] = bad[0].scale(RATIONAL.of(2))
    with pytest.raises(ValueError):
        la.MatrixRep(rep.algebra, bad)


def test_separation_trivial_on_axibeta(rng):
    # the odd part of the odd-affine algebra is abelian: every separation
    # term vanishes and exp(X) exp(Y) = exp(X + Y)
    alg = la.axi_beta()
    rep = la.axi_beta_matrix_rep(4, RATIONAL)
    for _ in range(5):
        x = random_oddp_element(rng, alg, 4)
        y = random_oddp_element(rng, alg, 4)
        b0, b1 = la.separate_even_odd(x, y)
        assert b0.is_zero() and b1.is_zero()
        assert rep.exp(x) * rep.exp(y) == rep.exp(x + y)
