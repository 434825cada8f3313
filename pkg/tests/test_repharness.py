from fractions import Fraction

import pytest

from superalg import RATIONAL, GrassmannElement
from superalg import liealg as la
from superalg.repharness import ospcheck as oc
from superalg.repharness.heisenberg import HeisenbergHarness
from superalg.repharness.integrate import InfinitesimalRep
from superalg.repharness.verify import verify
from superalg.repharness.report import all_passed
from superalg.scalars import CRATIONAL, ComplexRational


def test_heisenberg_group_law():
    h = HeisenbergHarness(2, 1)
    eta1, eta2 = h.eta_block(1), h.eta_block(2)
    g1 = (h.zero(), eta1)
    g2 = (h.zero(), eta2)
    g3 = (h.spare(1) * h.spare(2), [h.zero()] * 2)
    # associativity and inverses, exact in the formal parameters
    lhs = h.group_mul(h.group_mul(g1, g2), g3)
    rhs = h.group_mul(g1, h.group_mul(g2, g3))
    assert (lhs[0] - rhs[0]).is_zero()
    assert all((a - b).is_zero() for a, b in zip(lhs[1], rhs[1]))
    inv = h.group_inv(g1)
    prod = h.group_mul(g1, inv)
    assert prod[0].is_zero() and all(c.is_zero() for c in prod[1])


def test_heisenberg_left_translation_blocks_via_group_law():
    # the x-shift of (x, xi) (0, tau y) is tau times the h-series
    # coefficient and the xi-shift is tau times the b+ image
    m = 2
    h = HeisenbergHarness(m, 1, extra_blocks=2)
    alg = la.heisenberg_like(m)
    n = h.n_total
    ring = h.ring
    xi_elts = [h.xi(j) for j in range(1, m + 1)]
    tau = h.param(2, 1)
    y_coeffs = [Fraction(2), Fraction(-3)]
    g = (h.zero(), xi_elts)
    shift = (h.zero(), [tau * ring.of(c) for c in y_coeffs])
    product = h.group_mul(g, shift)
    v = alg.zero_element(n, ring)
    for j in range(1, m + 1):
        v = v + alg.basis_element(f"f{j}", n, ring, xi_elts[j - 1])
    y_elt = alg.zero_element(n, ring)
    for j in range(1, m + 1):
        y_elt = y_elt + alg.basis_element(
            f"f{j}", n, ring, GrassmannElement.scalar(n, ring, y_coeffs[j - 1])
        )
    h_img = la.series_of_ad(la.SeriesSpec("h"), v, y_elt)
    bp_img = la.series_of_ad(la.SeriesSpec("b+"), v, y_elt)
    # x-part: tau * (e-coefficient of h(ad v) Y)
    assert product[0] == tau * h_img.coeffs[0]
    for j in range(1, m + 1):
        expected = xi_elts[j - 1] + tau * bp_img.coeffs[alg.d + j - 1]
        assert product[1][j - 1] == expected
    # even direction: flowing along the center adds to x and fixes xi, and
    # the bracket correction [v, e] vanishes (e is central)
    t_even = h.param(2, 1) * h.param(2, 2)
    flowed = h.group_mul(g, (t_even, [h.zero()] * m))
    assert flowed[0] == t_even
    assert all(a == b for a, b in zip(flowed[1], xi_elts))
    e_elt = alg.basis_element("e", n, ring)
    assert la.bracket(v, e_elt).is_zero()


def test_tau_e_matches_center():
    h = HeisenbergHarness(2, Fraction(5, 3))
    taus = h.tau_matrices()
    expected = ComplexRational(0, Fraction(-5, 3))
    for i in range(4):
        for j in range(4):
            want = expected if i == j else ComplexRational(0)
            assert taus["e"][i][j] == want


def test_invariant_subspace_bases():
    h = HeisenbergHarness(2, Fraction(1))
    chi0, chi1 = h.invariant_subspace_basis(1)
    x12 = h.xi(1) * h.xi(2)
    assert chi0 == h.one() - x12 * Fraction(1, 2)
    assert chi1 == h.xi(1) + h.xi(2) * ComplexRational(0, 1)


def test_non_skew_rejected_at_skew_stage():
    # a valid morphism that is not graded skew must be caught by the skew
    # check specifically: abelian odd algebra, tau(f) strictly triangular
    alg = la.SuperLieAlgebra("abelian-odd", ["e"], ["f"], [])
    ring = CRATIONAL
    i_unit = ComplexRational(0, 1)
    taus = {
        "e": [[ring.zero, ring.zero], [ring.zero, ring.zero]],
        "f": [[ring.zero, ring.one], [ring.zero, ring.zero]],
    }
    # under the form diag(1, i) this valid morphism is not graded skew
    sp_diag = [[ring.one, ring.zero], [ring.zero, i_unit]]
    with pytest.raises(ValueError, match="skew"):
        InfinitesimalRep(alg, taus, [0, 1], sp_diag, ring)
    # under the off-diagonal pairing the same data is skew and validates
    sp_offdiag = [[ring.zero, ring.one], [ring.one, ring.zero]]
    InfinitesimalRep(alg, taus, [0, 1], sp_offdiag, ring)


def test_osp_f2_displayed_matrix_variant_fails():
    """The e3 entries of the displayed f2 matrix carry the wrong sign.

    The variant transcribed literally from the displayed component matrix
    (rather than from the displayed vector field) does not preserve the
    super scalar product; this pins the sign convention we implement.
    """
    import random

    from superalg.repharness.ospcheck import (
        OpExpr,
        random_poly_vector,
        skew_residual_on_vectors,
    )

    h = Fraction(1, 2)
    displayed_variant = [
        [OpExpr.zero(), OpExpr.zero(), OpExpr.of((1, ("b",))), OpExpr.of((1, ("a",)))],
        [
            OpExpr.zero(),
            OpExpr.zero(),
            OpExpr.of((h, ("b",)), (h, ("b", "E1")), (1, ("d", "E3"))),
            OpExpr.of((h, ("a",)), (h, ("a", "E1")), (1, ("c", "E3"))),
        ],
        [
            OpExpr.of((h, ("a", "E1")), (-1, ("c", "E3"))),
            OpExpr.of((-1, ("a",))),
            OpExpr.zero(),
            OpExpr.zero(),
        ],
        [
            OpExpr.of((-h, ("b", "E1")), (1, ("d", "E3"))),
            OpExpr.of((1, ("b",))),
            OpExpr.zero(),
            OpExpr.zero(),
        ],
    ]
    rng = random.Random(11)
    vectors = [random_poly_vector(rng) for _ in range(5)]
    assert skew_residual_on_vectors(displayed_variant, vectors) != 0
    assert skew_residual_on_vectors(oc.right_field_matrix(2), vectors) == 0


def test_osp_dossier_all_pass():
    d = oc.dossier(seed=3, skew_vectors=5)
    for name, value in d.items():
        if isinstance(value, bool):
            assert value, name
        else:
            assert value == 0, (name, value)


@pytest.mark.parametrize("example", ["heisenberg", "axibeta", "osp12"])
def test_verify_examples_pass(example):
    reports = verify(example, grid_n=1024, grid_l=16.0)
    assert all_passed(reports), [r for r in reports if not r.passed]


def test_verify_parallel_matches_serial():
    serial = verify("axibeta", grid_n=512, grid_l=12.0)
    parallel = verify("axibeta", grid_n=512, grid_l=12.0, workers=4)
    assert [r.check for r in serial] == [r.check for r in parallel]
    assert all(r.passed for r in parallel)


def test_osp12_generated_elements_stay_in_the_group():
    """Products of body elements and odd exponentials satisfy the group
    membership normal form (the defining-form preservation predicate)."""
    n = 4
    ring = RATIONAL
    rep = la.osp12_matrix_rep(n, ring)
    alg = rep.algebra
    th = [GrassmannElement.generator(n, ring, i) for i in range(1, 5)]
    body = [
        oc.embed_body_element(2, 3, 1, 2, n, ring),
        oc.embed_body_element(1, 0, -3, 1, n, ring),
    ]
    odd = [
        rep.exp(
            alg.basis_element("f1", n, ring, th[0])
            + alg.basis_element("f2", n, ring, th[1])
        ),
        rep.exp(
            alg.basis_element("f1", n, ring, th[2] + th[0] * th[1] * th[2])
            + alg.basis_element("f2", n, ring, th[3])
        ),
    ]
    elements = body + odd
    for g in elements:
        assert oc.osp12_membership(g), g
    for g in elements:
        for h in elements:
            assert oc.osp12_membership(g * h)
    assert oc.osp12_membership(body[0] * odd[0] * body[1] * odd[1])
    assert oc.osp12_membership((body[0] * odd[1]).inverse())
    # a matrix outside the group fails
    bad = oc.embed_body_element(2, 3, 1, 2, n, ring)
    bad.entries[1][1] = bad.entries[1][1] + GrassmannElement.one(n, ring)
    assert not oc.osp12_membership(bad)
