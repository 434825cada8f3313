"""The OSp(1,2) dossier: every displayed formula reproduced exactly.

The right-invariant odd vector fields are checked for super-scalar-product
preservation on an exact polynomial module over the matrix-entry
coordinates (a, b, c, d): the body-group vector fields e_i^R act there as
genuine derivations, declared skew-symmetric when forming adjoints (they
are skew on the group with Haar measure), and the coordinate
multiplications are self-adjoint.  Finite-dimensional matrix stand-ins
cannot reproduce the required commutators [e_i^R, mult_x] = mult_(e_i x)
(the adjoint action of a skew matrix has no nonzero real eigenvalue on
symmetric matrices), so the polynomial module is the faithful exact model.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .. import liealg
from ..grassmann import GrassmannElement
from ..scalars import RATIONAL
from ..supermatrix import SuperMatrix

COMMUTATOR_TABLE = {
    ("e1", "e2"): {"e2": 2},
    ("e1", "e3"): {"e3": -2},
    ("e2", "e3"): {"e1": 1},
    ("e1", "f1"): {"f1": 1},
    ("e2", "f1"): {},
    ("e3", "f1"): {"f2": -1},
    ("e1", "f2"): {"f2": -1},
    ("e2", "f2"): {"f1": -1},
    ("e3", "f2"): {},
    ("f1", "f1"): {"e2": -2},
    ("f1", "f2"): {"e1": -1},
    ("f2", "f2"): {"e3": 2},
}


def matrix_bracket_table(n=0, ring=RATIONAL):
    """Structure constants computed from the defining 3x3 matrices."""
    rep = liealg.osp12_matrix_rep(n, ring)
    alg = rep.algebra
    table = {}
    for i, ni in enumerate(alg.names):
        for j, nj in enumerate(alg.names):
            if (ni, nj) not in COMMUTATOR_TABLE:
                continue
            a, b = rep.matrices[i], rep.matrices[j]
            both_odd = alg.parity(i) and alg.parity(j)
            comm = a * b + b * a if both_odd else a * b - b * a
            table[(ni, nj)] = _decompose_in_basis(comm, rep)
    return table


def _decompose_in_basis(mat, rep):
    """Coefficients of a 3x3 algebra element in the e/f basis."""
    e = mat.entries
    coeffs = {
        "e1": e[1][1].body(),
        "e2": e[1][2].body(),
        "e3": e[2][1].body(),
        "f1": e[0][2].body(),
        "f2": e[0][1].body(),
    }
    # consistency: the reconstruction must reproduce the matrix
    recon = None
    alg = rep.algebra
    for name, c in coeffs.items():
        term = rep.matrices[alg.index[name]].scale(RATIONAL.of(c))
        recon = term if recon is None else recon + term
    if not (recon - mat).is_zero():
        raise AssertionError("matrix does not lie in the algebra span")
    return {k: Fraction(v) for k, v in coeffs.items() if v}


def embed_body_element(a, b, c, d, n, ring):
    """diag(1, [[a, b], [c, d]]) with ad - bc = 1 as a 3x3 supermatrix."""
    if Fraction(a) * Fraction(d) - Fraction(b) * Fraction(c) != 1:
        raise ValueError("body element must satisfy ad - bc = 1")
    rows = [[1, 0, 0], [0, a, b], [0, c, d]]
    return SuperMatrix(
        1,
        2,
        [[GrassmannElement.scalar(n, ring, v) for v in row] for row in rows],
    )


def adjoint_matrix(a, b, c, d):
    """Ad(g) on the basis (e1, e2, e3, f1, f2) for g = embedded (a,b,c,d)."""
    n, ring = 0, RATIONAL
    rep = liealg.osp12_matrix_rep(n, ring)
    g = embed_body_element(a, b, c, d, n, ring)
    g_inv = g.inverse()
    cols = []
    names = rep.algebra.names
    for i in range(5):
        image = g * rep.matrices[i] * g_inv
        coeffs = _decompose_in_basis(image, rep)
        cols.append([coeffs.get(nm, Fraction(0)) for nm in names])
    return [[cols[j][i] for j in range(5)] for i in range(5)]


def expected_adjoint_matrix(a, b, c, d):
    a, b, c, d = map(Fraction, (a, b, c, d))
    return [
        [a * d + b * c, -a * c, b * d, 0, 0],
        [-2 * a * b, a * a, -b * b, 0, 0],
        [2 * c * d, -c * c, d * d, 0, 0],
        [0, 0, 0, a, -b],
        [0, 0, 0, -c, d],
    ]


def identification_map_matrix(a, b, c, d, n, ring):
    """g . exp(xi f1 + eta f2) with xi, eta the first two odd generators."""
    rep = liealg.osp12_matrix_rep(n, ring)
    alg = rep.algebra
    xi = GrassmannElement.generator(n, ring, 1)
    eta = GrassmannElement.generator(n, ring, 2)
    v = alg.basis_element("f1", n, ring, xi) + alg.basis_element("f2", n, ring, eta)
    return embed_body_element(a, b, c, d, n, ring) * rep.exp(v)


def expected_identification_matrix(a, b, c, d, n, ring):
    xi = GrassmannElement.generator(n, ring, 1)
    eta = GrassmannElement.generator(n, ring, 2)
    one = GrassmannElement.one(n, ring)
    half = Fraction(1, 2)
    s = lambda v: GrassmannElement.scalar(n, ring, v)
    bump = one + (xi * eta) * half
    return SuperMatrix(
        1,
        2,
        [
            [one - xi * eta, eta, xi],
            [xi * s(a) - eta * s(b), bump * a, bump * b],
            [xi * s(c) - eta * s(d), bump * c, bump * d],
        ],
    )


def osp12_membership(g: SuperMatrix) -> bool:
    """Membership in OSp(1,2) through the parametrized normal form.

    Every group element is
        [[1 + ab, a, b], [x b - y a, x, y], [z b - w a, z, w]]
    with a, b odd, x, y, z, w even and x w - y z = 1 - a b; this encodes
    preservation of the defining graded-symmetric form without needing a
    graded-transpose convention.
    """
    if (g.p, g.q) != (1, 2):
        return False
    e = g.entries
    alpha, beta = e[0][1], e[0][2]
    x, y = e[1][1], e[1][2]
    z, w = e[2][1], e[2][2]
    for odd in (alpha, beta, e[1][0], e[2][0]):
        if not odd.is_odd():
            return False
    for even in (x, y, z, w, e[0][0]):
        if not even.is_even():
            return False
    one = GrassmannElement.one(g.n, g.ring)
    checks = [
        e[0][0] - (one + alpha * beta),
        e[1][0] - (x * beta - y * alpha),
        e[2][0] - (z * beta - w * alpha),
        (x * w - y * z) - (one - alpha * beta),
    ]
    return all(c.is_zero() for c in checks)


# -- the polynomial module for the right-invariant field check ----------------

E_ACTION = {
    # e_i^R applied to the matrix coordinates of g in SL(2)
    "E1": {"a": {"a": 1}, "b": {"b": 1}, "c": {"c": -1}, "d": {"d": -1}},
    "E2": {"a": {"c": 1}, "b": {"d": 1}, "c": {}, "d": {}},
    "E3": {"a": {}, "b": {}, "c": {"a": 1}, "d": {"b": 1}},
}

VARS = ("a", "b", "c", "d")


class Poly:
    """Polynomial in the coordinates a, b, c, d over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms or {})

    @classmethod
    def variable(cls, name):
        exps = tuple(1 if v == name else 0 for v in VARS)
        return cls({exps: Fraction(1)})

    @classmethod
    def constant(cls, c):
        c = Fraction(c)
        return cls({(0, 0, 0, 0): c} if c else {})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Poly({k: v for k, v in out.items() if v})

    def __sub__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) - v
        return Poly({k: v for k, v in out.items() if v})

    def __mul__(self, other):
        if isinstance(other, Fraction):
            return Poly({k: v * other for k, v in self.terms.items() if v * other})
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                out[key] = out.get(key, Fraction(0)) + va * vb
        return Poly({k: v for k, v in out.items() if v})

    def scale(self, c):
        c = Fraction(c)
        return Poly({k: v * c for k, v in self.terms.items() if v * c})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))


def apply_symbol(symbol, poly: Poly) -> Poly:
    """Multiplication by a coordinate or a right-invariant derivation."""
    if symbol in VARS:
        return Poly.variable(symbol) * poly
    action = E_ACTION[symbol]
    out = Poly()
    for exps, coeff in poly.terms.items():
        for vi, var in enumerate(VARS):
            e = exps[vi]
            if not e:
                continue
            for target, factor in action[var].items():
                new = list(exps)
                new[vi] -= 1
                new[VARS.index(target)] += 1
                out = out + Poly({tuple(new): coeff * e * factor})
    return out


class OpExpr:
    """Rational combination of composition words in {a,b,c,d,E1,E2,E3}.

    A word (s1, s2, ...) denotes s1 o s2 o ...; the formal adjoint reverses
    words, fixes coordinate multiplications and negates the derivations
    (e_i^R are skew-symmetric on the group).
    """

    def __init__(self, terms=None):
        # terms: dict word tuple -> Fraction
        self.terms = dict(terms or {})

    @classmethod
    def of(cls, *pieces):
        """pieces: (coefficient, word) pairs."""
        out = {}
        for coeff, word in pieces:
            coeff = Fraction(coeff)
            if coeff:
                out[tuple(word)] = out.get(tuple(word), Fraction(0)) + coeff
        return cls(out)

    @classmethod
    def zero(cls):
        return cls()

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return OpExpr({w: c for w, c in out.items() if c})

    def scale(self, factor):
        factor = Fraction(factor)
        return OpExpr({w: c * factor for w, c in self.terms.items() if c * factor})

    def adjoint(self):
        out = {}
        for word, coeff in self.terms.items():
            sign = (-1) ** sum(1 for s in word if s.startswith("E"))
            out_word = tuple(reversed(word))
            out[out_word] = out.get(out_word, Fraction(0)) + sign * coeff
        return OpExpr({w: c for w, c in out.items() if c})

    def apply(self, poly: Poly) -> Poly:
        out = Poly()
        for word, coeff in self.terms.items():
            value = poly
            for symbol in reversed(word):
                value = apply_symbol(symbol, value)
            out = out + value.scale(coeff)
        return out


def right_field_matrix(which: int):
    """The 4x4 operator matrix of f_which^R on components (0, xi.eta, xi, eta)."""
    h = Fraction(1, 2)
    if which == 1:
        return [
            [OpExpr.zero(), OpExpr.zero(), OpExpr.of((1, ("d",))), OpExpr.of((1, ("c",)))],
            [
                OpExpr.zero(),
                OpExpr.zero(),
                OpExpr.of((h, ("d",)), (-h, ("d", "E1")), (1, ("b", "E2"))),
                OpExpr.of((h, ("c",)), (-h, ("c", "E1")), (1, ("a", "E2"))),
            ],
            [
                OpExpr.of((-h, ("c", "E1")), (1, ("a", "E2"))),
                OpExpr.of((-1, ("c",))),
                OpExpr.zero(),
                OpExpr.zero(),
            ],
            [
                OpExpr.of((h, ("d", "E1")), (-1, ("b", "E2"))),
                OpExpr.of((1, ("d",))),
                OpExpr.zero(),
                OpExpr.zero(),
            ],
        ]
    if which == 2:
        # rows 3 and 4 follow the displayed vector field
        # f2^R = (a xi - b eta)/2 e1^R + (c xi - d eta) e3^R
        #        + (1 + xi eta / 2)(b d_xi + a d_eta);
        # the e3^R entries of the separately displayed component matrix
        # carry the opposite sign and fail the preservation identity.
        return [
            [OpExpr.zero(), OpExpr.zero(), OpExpr.of((1, ("b",))), OpExpr.of((1, ("a",)))],
            [
                OpExpr.zero(),
                OpExpr.zero(),
                OpExpr.of((h, ("b",)), (h, ("b", "E1")), (1, ("d", "E3"))),
                OpExpr.of((h, ("a",)), (h, ("a", "E1")), (1, ("c", "E3"))),
            ],
            [
                OpExpr.of((h, ("a", "E1")), (1, ("c", "E3"))),
                OpExpr.of((-1, ("a",))),
                OpExpr.zero(),
                OpExpr.zero(),
            ],
            [
                OpExpr.of((-h, ("b", "E1")), (-1, ("d", "E3"))),
                OpExpr.of((1, ("b",))),
                OpExpr.zero(),
                OpExpr.zero(),
            ],
        ]
    raise ValueError("which must be 1 or 2")


# Components ordered (empty, xi.eta, xi, eta): parities (0, 0, 1, 1) and the
# super scalar product with the Delta(xi) = 1 + xi.eta contribution on the
# (empty, empty) slot.
S_MATRIX = [
    [1, 1, 0, 0],
    [1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, -1, 0],
]
COMPONENT_PARITIES = [0, 0, 1, 1]


def skew_residual_operator(field_matrix, s_matrix=S_MATRIX):
    """Operator matrix of the graded-skew residual of an odd field F.

    <F chi | psi> + <C chi | F psi> = sum_IK <<chi_I, R_IK psi_K>> with
        R = F^H S + D_C S F,
    where (F^H)_IJ = adjoint(F_JI), D_C = diag((-1)^(parity of I)), and the
    component pairing <<.,.>> is the real L^2 pairing on the body group.
    Preservation of the super scalar product is R = 0.
    """
    size = len(s_matrix)
    out = [[OpExpr.zero()] * size for _ in range(size)]
    for i in range(size):
        ci = -1 if COMPONENT_PARITIES[i] else 1
        for k in range(size):
            acc = OpExpr.zero()
            for j in range(size):
                s_jk = Fraction(s_matrix[j][k])
                if s_jk:
                    acc = acc + field_matrix[j][i].adjoint().scale(s_jk)
                s_ij = Fraction(s_matrix[i][j]) * ci
                if s_ij:
                    acc = acc + field_matrix[j][k].scale(s_ij)
            out[i][k] = acc
    return out


def skew_residual_on_vectors(field_matrix, vectors, s_matrix=S_MATRIX):
    """Largest coefficient of the residual applied to polynomial 4-vectors.

    Returns an exact Fraction; 0 means the field preserves the form.
    """
    op = skew_residual_operator(field_matrix, s_matrix)
    worst = Fraction(0)
    size = len(s_matrix)
    for vec in vectors:
        for i in range(size):
            image = Poly()
            for k in range(size):
                image = image + op[i][k].apply(vec[k])
            if not image.is_zero():
                worst = max(
                    worst, max(abs(c) for c in image.terms.values())
                )
    return worst


def random_poly(rng, degree=2):
    p = Poly()
    for _ in range(4):
        exps = tuple(rng.randrange(0, degree + 1) for _ in VARS)
        p = p + Poly({exps: Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))})
    return p


def random_poly_vector(rng, degree=2):
    return [random_poly(rng, degree) for _ in range(4)]


def s_matrix_without_delta_term():
    """The S-form with the Delta-contribution <<chi_0, psi_0>> removed."""
    out = [row[:] for row in S_MATRIX]
    out[0][0] = 0
    return out


# -- the full dossier -----------------------------------------------------------


def displayed_ad_matrix(n, ring):
    """The 5x5 matrix of ad(xi f1 + eta f2) as displayed."""
    xi = GrassmannElement.generator(n, ring, 1)
    eta = GrassmannElement.generator(n, ring, 2)
    z = GrassmannElement.zero(n, ring)
    rows = [
        [z, z, z, -eta, -xi],
        [z, z, z, xi * (-2), z],
        [z, z, z, z, eta * 2],
        [xi, -eta, z, z, z],
        [-eta, z, -xi, z, z],
    ]
    return SuperMatrix(3, 2, rows)


def displayed_blocks(n, ring):
    xi = GrassmannElement.generator(n, ring, 1)
    eta = GrassmannElement.generator(n, ring, 2)
    z = GrassmannElement.zero(n, ring)
    one = GrassmannElement.one(n, ring)
    half = Fraction(1, 2)
    a_block = [[xi, -eta, z], [-eta, z, -xi]]
    b_block = [
        [one - xi * eta, z],
        [z, one - xi * eta],
    ]
    h_block = [
        [eta * (-half), xi * (-half)],
        [-xi, z],
        [z, eta],
    ]
    return a_block, b_block, h_block


def dossier(seed=0, skew_vectors=20):
    """Run every OSp(1,2) check; returns {name: residual or bool}."""
    out = {}
    ring = RATIONAL
    n = 2
    alg = liealg.osp12()
    rep = liealg.osp12_matrix_rep(n, ring)
    xi = GrassmannElement.generator(n, ring, 1)
    eta = GrassmannElement.generator(n, ring, 2)
    v = alg.basis_element("f1", n, ring, xi) + alg.basis_element(
        "f2", n, ring, eta
    )

    # commutator table from the defining matrices
    table = matrix_bracket_table()
    expected_table = {
        key: {k: Fraction(c) for k, c in val.items()}
        for key, val in COMMUTATOR_TABLE.items()
    }
    out["commutator_table"] = table == expected_table

    # ad matrix, its square, and the exponential
    ad = liealg.ad_matrix(v)
    out["ad_matrix"] = (ad - displayed_ad_matrix(n, ring)).max_abs()
    sq = ad * ad
    diag = [2, 2, 2, -3, -3]
    sq_expected = SuperMatrix(
        3,
        2,
        [
            [
                (xi * eta) * diag[i]
                if i == j
                else GrassmannElement.zero(n, ring)
                for j in range(5)
            ]
            for i in range(5)
        ],
    )
    out["ad_square"] = (sq - sq_expected).max_abs()

    exp_v = rep.exp(v)
    one = GrassmannElement.one(n, ring)
    z = GrassmannElement.zero(n, ring)
    bump = one + (xi * eta) * Fraction(1, 2)
    exp_expected = SuperMatrix(
        1,
        2,
        [[one - xi * eta, eta, xi], [xi, bump, z], [-eta, z, bump]],
    )
    out["exp_matrix"] = (exp_v - exp_expected).max_abs()

    # Ad(g) for rational body elements with ad - bc = 1
    samples = [(2, 3, 1, 2), (1, 4, 0, 1), (5, 2, 2, 1), (1, 0, -3, 1)]
    ad_ok = True
    for a, b, c, d in samples:
        if adjoint_matrix(a, b, c, d) != expected_adjoint_matrix(a, b, c, d):
            ad_ok = False
    out["adjoint_matrix"] = ad_ok

    ident_ok = True
    for a, b, c, d in samples:
        got = identification_map_matrix(a, b, c, d, n, ring)
        want = expected_identification_matrix(a, b, c, d, n, ring)
        if (got - want).max_abs() != 0:
            ident_ok = False
    out["identification_map"] = ident_ok

    # invariant vector field blocks, Delta, and the S-form
    a_block, b_block, h_block = liealg.invariant_vf_blocks(v)
    ea, eb, eh = displayed_blocks(n, ring)
    blocks_res = 0.0
    for got, want in ((a_block, ea), (b_block, eb), (h_block, eh)):
        for rg, rw in zip(got, want):
            for x, y in zip(rg, rw):
                blocks_res = max(blocks_res, (x - y).max_abs())
    out["blocks"] = blocks_res
    delta = liealg.delta_function(a_block, b_block, h_block)
    out["delta"] = (delta - (one + xi * eta)).max_abs()

    s_table = liealg.s_matrix(delta)
    expected_s = [[ring.zero] * 4 for _ in range(4)]
    expected_s[0][0] = ring.one
    expected_s[0][3] = ring.one
    expected_s[3][0] = ring.one
    expected_s[1][2] = ring.one
    expected_s[2][1] = -ring.one
    out["s_form"] = s_table == expected_s
    from .. import linalg

    out["s_invertible"] = linalg.is_invertible(s_table, ring)
    sparsity_ok = True
    n_par = 2
    for i_mask in range(4):
        for j_mask in range(4):
            bad = (i_mask & j_mask) or (
                (i_mask.bit_count() + j_mask.bit_count()) % 2 != n_par % 2
            )
            if bad and s_table[i_mask][j_mask] != ring.zero:
                sparsity_ok = False
    out["s_sparsity"] = sparsity_ok

    # S as a map is invertible but does not preserve the metric: the
    # component metric is the identity Gram, and S has a column of norm
    # sqrt(2) (the Delta contribution), witnessed explicitly
    witness = [ring.one, ring.zero, ring.zero, ring.zero]
    image = [sum((s_table[j][i] * witness[j] for j in range(4)), ring.zero) for i in range(4)]
    norm_before = sum((w * w for w in witness), ring.zero)
    norm_after = sum((y * y for y in image), ring.zero)
    out["s_not_isometry"] = norm_before != norm_after

    # right-invariant odd fields preserve the S-form on the polynomial module
    rng = random.Random(seed)
    vectors = [random_poly_vector(rng) for _ in range(skew_vectors)]
    out["f1_field_skew"] = skew_residual_on_vectors(right_field_matrix(1), vectors)
    out["f2_field_skew"] = skew_residual_on_vectors(right_field_matrix(2), vectors)
    out["f1_field_needs_delta"] = (
        skew_residual_on_vectors(
            right_field_matrix(1), vectors, s_matrix_without_delta_term()
        )
        != 0
    )

    # exponential-splitting identities and the left-translation flow
    from .lemmas import (
        left_translation_even_direction_residual,
        six_identities_residual,
    )

    n4 = 4
    rep4 = liealg.osp12_matrix_rep(n4, ring)
    th = [GrassmannElement.generator(n4, ring, i) for i in range(1, 5)]
    t_even = th[0] * th[1]
    x_even = (
        alg.basis_element("e1", n4, ring, t_even * Fraction(2, 3))
        + alg.basis_element("e2", n4, ring, t_even * Fraction(-1, 2))
        + alg.basis_element("e3", n4, ring, t_even * Fraction(5, 7))
    )
    v4 = alg.basis_element("f1", n4, ring, th[0]) + alg.basis_element(
        "f2", n4, ring, th[1]
    )
    six = 0.0
    for x_case in (x_even, v4):
        for yname in ("f1", "f2"):
            y = alg.basis_element(yname, n4, ring)
            six = max(six, six_identities_residual(rep4, x_case, y, th[2]))
    out["six_identities"] = six

    # every generated element satisfies the group membership normal form
    generated = [
        embed_body_element(2, 3, 1, 2, n4, ring),
        embed_body_element(1, 4, 0, 1, n4, ring),
        rep4.exp(v4),
        rep4.exp(
            alg.basis_element("f1", n4, ring, th[2])
            + alg.basis_element("f2", n4, ring, th[3])
        ),
    ]
    membership = all(osp12_membership(g) for g in generated)
    for g in generated:
        for h in generated:
            membership = membership and osp12_membership(g * h)
            membership = membership and osp12_membership((g * h).inverse())
    out["group_membership"] = membership
    flow = 0.0
    for xname in ("e1", "e2", "e3"):
        xb = alg.basis_element(xname, n4, ring)
        flow = max(
            flow,
            left_translation_even_direction_residual(rep4, v4, xb, th[2] * th[3]),
        )
    out["left_translation_even"] = flow
    return out
