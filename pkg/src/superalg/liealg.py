"""Finite-dimensional super Lie algebras with Grassmann coefficients.

Basis vectors are ordered even-first; elements carry their coefficients on
the left (v = sum_i c_i X_i).  Matrices of maps follow the right-coefficient
convention f(X_i) = sum_j X_j f_ji, so converting a left coefficient on an
odd basis vector to a matrix entry applies the Grassmann conjugation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .grassmann import GrassmannElement
from .supermatrix import SuperMatrix, grassmann_det


class SuperLieAlgebra:
    """Graded basis plus structure constants over the rationals.

    Structure constants are validated on construction: grading
    compatibility, graded antisymmetry and the graded Jacobi identity.
    """

    def __init__(self, name, even_names, odd_names, brackets, validate=True):
        self.name = name
        self.even_names = list(even_names)
        self.odd_names = list(odd_names)
        self.names = self.even_names + self.odd_names
        self.d = len(self.even_names)
        self.m = len(self.odd_names)
        self.dim = self.d + self.m
        self.index = {nm: i for i, nm in enumerate(self.names)}
        if len(self.index) != self.dim:
            raise ValueError("duplicate basis names")
        # c[i][j] maps k -> Fraction with [X_i, X_j] = sum_k c_ijk X_k
        self.c = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for i_n, j_n, k_n, coeff in brackets:
            i, j, k = self.index[i_n], self.index[j_n], self.index[k_n]
            coeff = Fraction(coeff)
            if coeff:
                self.c[i][j][k] = self.c[i][j].get(k, Fraction(0)) + coeff
        if validate:
            self.validate()

    def parity(self, i):
        return 0 if i < self.d else 1

    def validate(self):
        for i in range(self.dim):
            for j in range(self.dim):
                pij = (self.parity(i) + self.parity(j)) % 2
                for k, coeff in self.c[i][j].items():
                    if coeff and self.parity(k) != pij:
                        raise ValueError(
                            f"bracket [{self.names[i]},{self.names[j]}] leaves "
                            f"the expected grading"
                        )
                sign = -1 if self.parity(i) and self.parity(j) else 1
                mirrored = {k: sign * v for k, v in self.c[j][i].items() if v}
                mine = {k: v for k, v in self.c[i][j].items() if v}
                if mine != {k: -v for k, v in mirrored.items()}:
                    raise ValueError(
                        f"graded antisymmetry fails on "
                        f"[{self.names[i]},{self.names[j]}]"
                    )
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            acc = {}
            for a, b, c_idx, outer_sign in (
                (i, j, k, self.parity(i) * self.parity(k)),
                (j, k, i, self.parity(j) * self.parity(i)),
                (k, i, j, self.parity(k) * self.parity(j)),
            ):
                sign = -1 if outer_sign % 2 else 1
                for mid, c1 in self.c[b][c_idx].items():
                    for out, c2 in self.c[a][mid].items():
                        acc[out] = acc.get(out, Fraction(0)) + sign * c1 * c2
            if any(v for v in acc.values()):
                raise ValueError(
                    f"graded Jacobi identity fails on "
                    f"({self.names[i]},{self.names[j]},{self.names[k]})"
                )

    # -- elements -----------------------------------------------------------

    def element(self, coeffs):
        return LieElement(self, list(coeffs))

    def zero_element(self, n, ring):
        z = GrassmannElement.zero(n, ring)
        return LieElement(self, [z] * self.dim)

    def basis_element(self, name, n, ring, coeff=None):
        z = GrassmannElement.zero(n, ring)
        coeffs = [z] * self.dim
        c = GrassmannElement.one(n, ring) if coeff is None else coeff
        coeffs[self.index[name]] = c
        return LieElement(self, coeffs)

    def to_json(self):
        brackets = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, coeff in self.c[i][j].items():
                    if coeff:
                        brackets.append(
                            [self.names[i], self.names[j], self.names[k], str(coeff)]
                        )
        return {
            "name": self.name,
            "even_basis": self.even_names,
            "odd_basis": self.odd_names,
            "brackets": brackets,
        }

    @classmethod
    def from_json(cls, data, validate=True):
        return cls(
            data.get("name", "algebra"),
            data["even_basis"],
            data["odd_basis"],
            data["brackets"],
            validate=validate,
        )

    def _signature(self):
        table = tuple(
            tuple(sorted(self.c[i][j].items()))
            for i in range(self.dim)
            for j in range(self.dim)
        )
        return (tuple(self.even_names), tuple(self.odd_names), table)

    def __eq__(self, other):
        if not isinstance(other, SuperLieAlgebra):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self):
        return hash((tuple(self.even_names), tuple(self.odd_names)))

    def __repr__(self):
        return f"SuperLieAlgebra({self.name}, {self.d}|{self.m})"


class LieElement:
    """Element of g tensor Lambda_n with left coefficients per basis vector."""

    __slots__ = ("algebra", "coeffs", "n", "ring")

    def __init__(self, algebra, coeffs):
        if len(coeffs) != algebra.dim:
            raise ValueError("coefficient count does not match the basis")
        self.algebra = algebra
        self.coeffs = list(coeffs)
        self.n = coeffs[0].n
        self.ring = coeffs[0].ring
        for c in coeffs:
            if c.n != self.n or c.ring is not self.ring:
                raise ValueError("coefficients must share one algebra and ring")

    def _check(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return LieElement(
            self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        return LieElement(
            self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return LieElement(self.algebra, [-a for a in self.coeffs])

    def scale(self, factor):
        """Left multiplication of every coefficient by a scalar/element."""
        return LieElement(self.algebra, [factor * a for a in self.coeffs])

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(id(self.algebra))

    def max_abs(self):
        return max((c.max_abs() for c in self.coeffs), default=0.0)

    def even_basis_part(self):
        z = GrassmannElement.zero(self.n, self.ring)
        return LieElement(
            self.algebra,
            [c if i < self.algebra.d else z for i, c in enumerate(self.coeffs)],
        )

    def odd_basis_part(self):
        z = GrassmannElement.zero(self.n, self.ring)
        return LieElement(
            self.algebra,
            [c if i >= self.algebra.d else z for i, c in enumerate(self.coeffs)],
        )

    def in_wod(self):
        """Supported on the even basis vectors only."""
        return self.odd_basis_part().is_zero()

    def in_oddp(self):
        """Supported on the odd basis vectors only."""
        return self.even_basis_part().is_zero()

    def in_even_part(self):
        """Member of (g tensor Lambda)_0: even coefficients on even basis
        vectors, odd coefficients on odd ones."""
        return all(
            c.is_zero() or c.parity() == self.algebra.parity(i)
            for i, c in enumerate(self.coeffs)
        )

    def in_oddp_even(self):
        """Member of (odd-basis span)_0: odd basis, odd coefficients."""
        return self.in_oddp() and self.in_even_part()

    def __repr__(self):
        parts = [
            f"({c!r})*{self.algebra.names[i]}"
            for i, c in enumerate(self.coeffs)
            if not c.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Graded bracket extended to Grassmann coefficients.

    [a X, b Y] = (-1)^(|b| |X|) a b [X, Y] on homogeneous pieces; the sign
    is realized by conjugating the second coefficient when X is odd.
    """
    x._check(y)
    alg = x.algebra
    out = [GrassmannElement.zero(x.n, x.ring) for _ in range(alg.dim)]
    for i, a in enumerate(x.coeffs):
        if a.is_zero():
            continue
        pi = alg.parity(i)
        for j, b in enumerate(y.coeffs):
            if b.is_zero():
                continue
            table = alg.c[i][j]
            if not table:
                continue
            coeff = a * b.conjugation_pow(pi)
            if coeff.is_zero():
                continue
            for k, c in table.items():
                out[k] = out[k] + coeff * x.ring.of(c)
    return LieElement(alg, out)


def ad_matrix(v: LieElement) -> SuperMatrix:
    """Matrix of ad(v) in the homogeneous basis (right-coefficient form)."""
    alg = v.algebra
    cols = []
    for i in range(alg.dim):
        image = bracket(v, alg.basis_element(alg.names[i], v.n, v.ring))
        cols.append(
            [
                image.coeffs[j].conjugation_pow(alg.parity(j))
                for j in range(alg.dim)
            ]
        )
    entries = [[cols[i][j] for i in range(alg.dim)] for j in range(alg.dim)]
    return SuperMatrix(alg.d, alg.m, entries)


def certify_nilpotent_ad(v: LieElement, cap=None):
    """Power-iteration certificate that ad(v) is nilpotent.

    Returns the smallest k with ad(v)^k = 0; raises if it does not vanish
    within dim+1 iterations.
    """
    alg = v.algebra
    cap = alg.dim + 1 if cap is None else cap
    basis = [alg.basis_element(nm, v.n, v.ring) for nm in alg.names]
    current = basis
    for k in range(1, max(cap, v.n + 2) + 1):
        current = [bracket(v, w) for w in current]
        if all(w.is_zero() for w in current):
            return k
    raise ValueError("ad(v) is not nilpotent within the iteration bound")


# -- scalar power series -------------------------------------------------------


def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[: order + 1 - i]):
            out[i + j] += ai * bj
    return out


def _series_div(a, b, order):
    if not b[0]:
        raise ZeroDivisionError("series division needs an invertible constant term")
    out = [Fraction(0)] * (order + 1)
    for k in range(order + 1):
        acc = a[k] if k < len(a) else Fraction(0)
        for j in range(1, k + 1):
            bj = b[j] if j < len(b) else Fraction(0)
            acc -= bj * out[k - j]
        out[k] = acc / b[0]
    return out


@lru_cache(maxsize=None)
def _named_series_coeffs(name: str, order: int):
    fact = [Fraction(1)]
    for k in range(1, order + 3):
        fact.append(fact[-1] * k)
    exp = [Fraction(1) / fact[k] for k in range(order + 2)]
    # f(t) = (e^t - 1)/t
    f = [Fraction(1) / fact[k + 1] for k in range(order + 1)]
    if name == "f":
        return tuple(f)
    if name == "exp":
        return tuple(exp[: order + 1])
    e_plus = [exp[k] + (1 if k == 0 else 0) for k in range(order + 1)]
    e_minus_over_t = f
    if name == "h":
        # h = (e^t - 1)/(e^t + 1) = t f / (e^t + 1)
        tf = [Fraction(0)] + list(f[:order])
        return tuple(_series_div(tf, e_plus, order))
    if name == "b":
        # b = (e^t + 1) / (2 (e^t - 1)/t) = (e^t+1) / (2 f)
        two_f = [2 * c for c in e_minus_over_t]
        return tuple(_series_div(e_plus, two_f, order))
    if name in ("b-", "b+"):
        b = _named_series_coeffs("b", order)
        h = _named_series_coeffs("h", order)
        th = [Fraction(0)] + [c / 2 for c in h[:order]]
        if name == "b-":
            return tuple(b[k] - th[k] for k in range(order + 1))
        return tuple(b[k] + th[k] for k in range(order + 1))
    raise ValueError(f"unknown series {name!r}")


class SeriesSpec:
    """Named scalar power series with exact rational Taylor coefficients."""

    NAMES = ("f", "h", "b", "b-", "b+", "exp")

    def __init__(self, name, order=20):
        if name not in self.NAMES:
            raise ValueError(f"unknown series {name!r}; choose from {self.NAMES}")
        self.name = name
        self.order = order
        self.coeffs = list(_named_series_coeffs(name, order))

    def coefficient(self, k):
        if k > self.order:
            raise ValueError(f"series {self.name} truncated at order {self.order}")
        return self.coeffs[k]

    def rescale_argument(self, factor):
        """Coefficients of t -> series(factor * t)."""
        return [c * Fraction(factor) ** k for k, c in enumerate(self.coeffs)]


def series_of_ad(
    spec: SeriesSpec, v: LieElement, y: LieElement, negate_argument=False
) -> LieElement:
    """Evaluate series(ad v) y; terminates because ad(v) is nilpotent."""
    depth = certify_nilpotent_ad(v)
    if depth - 1 > spec.order:
        raise ValueError("series truncation order below the nilpotency degree")
    out = y.scale(v.ring.of(spec.coefficient(0)))
    term = y
    for k in range(1, depth):
        term = bracket(v, term)
        if term.is_zero():
            break
        c = spec.coefficient(k)
        if negate_argument and k % 2:
            c = -c
        if c:
            out = out + term.scale(v.ring.of(c))
    return out


# -- Baker-Campbell-Hausdorff -----------------------------------------------


BCH_DEGREE_CAP = 8


@lru_cache(maxsize=None)
def _dynkin_words(degree: int):
    """Right-nested bracket words of Dynkin's formula at one total degree.

    Words are tuples over {0, 1} (0 = first argument, 1 = second); the word
    (w1, ..., wL) denotes [w1, [w2, [... [w_{L-1}, wL]]]].  Summing the
    emitted terms over all degrees >= 2 yields log(e^X e^Y) - X - Y.  Every
    word is kept (inner [w, w] pairs need not vanish in a superalgebra);
    only zero combined coefficients are pruned.
    """
    if degree > BCH_DEGREE_CAP:
        raise ValueError(f"BCH truncation degree capped at {BCH_DEGREE_CAP}")
    fact = [1]
    for k in range(1, degree + 1):
        fact.append(fact[-1] * k)
    acc = {}

    def emit(blocks):
        n_blocks = len(blocks)
        denom = n_blocks * degree
        for r, s in blocks:
            denom *= fact[r] * fact[s]
        coeff = Fraction((-1) ** (n_blocks - 1), denom)
        word = tuple(letter for r, s in blocks for letter in (0,) * r + (1,) * s)
        acc[word] = acc.get(word, Fraction(0)) + coeff

    def rec(remaining, blocks):
        if remaining == 0:
            if blocks:
                emit(blocks)
            return
        for r in range(remaining + 1):
            for s in range(remaining - r + 1):
                if r + s == 0:
                    continue
                rec(remaining - r - s, blocks + [(r, s)])

    rec(degree, [])
    return tuple((w, c) for w, c in acc.items() if c)


def bch_truncated(x: LieElement, y: LieElement, degree: int) -> LieElement:
    """BCH correction: exp(x) exp(y) = exp(x + y + bch_truncated(x, y, d)).

    Exact whenever every repeated bracket of total degree > `degree`
    vanishes (nilpotent Grassmann coefficients).
    """
    x._check(y)
    if degree > BCH_DEGREE_CAP:
        raise ValueError(f"BCH truncation degree capped at {BCH_DEGREE_CAP}")
    if not (x.in_even_part() and y.in_even_part()):
        raise ValueError("BCH arguments must lie in the even part of g tensor A")
    out = x.algebra.zero_element(x.n, x.ring)
    args = (x, y)
    for deg in range(2, degree + 1):
        for word, coeff in _dynkin_words(deg):
            term = _nested_bracket(word, args)
            if term is not None and not term.is_zero():
                out = out + term.scale(x.ring.of(coeff))
    return out


def _nested_bracket(word, args):
    term = args[word[-1]]
    for letter in reversed(word[:-1]):
        term = bracket(args[letter], term)
        if term.is_zero():
            return None
    return term


# -- even/odd separation of exp(X) exp(Y) -------------------------------------


def _graded_bch(a: dict, b: dict, cap: int, ring):
    """BCH correction of graded arguments, split by total degree."""
    out = {}
    args = (a, b)
    for deg in range(2, cap + 1):
        for word, coeff in _dynkin_words(deg):
            # each letter contributes at least degree 1, so words longer than
            # cap cannot contribute
            if len(word) > cap:
                continue
            terms = _graded_nested(word, args, cap)
            for d, t in terms.items():
                scaled = t.scale(ring.of(coeff))
                out[d] = out[d] + scaled if d in out else scaled
    return {d: t for d, t in out.items() if not t.is_zero()}


def _graded_nested(word, args, cap):
    current = dict(args[word[-1]])
    for letter in reversed(word[:-1]):
        nxt = {}
        for da, xa in args[letter].items():
            for db, xb in current.items():
                d = da + db
                if d > cap:
                    continue
                t = bracket(xa, xb)
                if not t.is_zero():
                    nxt[d] = nxt[d] + t if d in nxt else t
        current = nxt
        if not current:
            return {}
    return current


def separation_terms(x: LieElement, y: LieElement, cap=None) -> dict:
    """Homogeneous pieces B_k of the even/odd separation recursion.

    Solves degree by degree the identity
        BCH(x, y) = sum_k B_k + BCH(sum B_even, x + y + sum B_odd),
    so that exp(x) exp(y) = exp(sum B_even) exp(x + y + sum B_odd).
    Even-degree pieces land on the even basis, odd-degree pieces on the odd
    basis (checked).
    """
    x._check(y)
    if not (x.in_oddp_even() and y.in_oddp_even()):
        raise ValueError(
            "separation requires odd-basis elements with odd coefficients"
        )
    alg, n, ring = x.algebra, x.n, x.ring
    cap = min(n, BCH_DEGREE_CAP) if cap is None else cap
    bch_xy = {}
    for deg in range(2, cap + 1):
        for word, coeff in _dynkin_words(deg):
            term = _nested_bracket(word, (x, y))
            if term is not None and not term.is_zero():
                scaled = term.scale(ring.of(coeff))
                bch_xy[deg] = (
                    bch_xy[deg] + scaled if deg in bch_xy else scaled
                )
    terms = {}
    b_even = {}
    b_odd = {1: x + y}
    for k in range(2, cap + 1):
        rhs = _graded_bch(b_even, b_odd, k, ring)
        b_k = bch_xy.get(k, alg.zero_element(n, ring)) - rhs.get(
            k, alg.zero_element(n, ring)
        )
        if b_k.is_zero():
            continue
        if k % 2 == 0:
            if not b_k.in_wod():
                raise AssertionError(
                    f"even-degree separation term B_{k} leaves the even basis"
                )
            b_even[k] = b_k
        else:
            if not b_k.in_oddp():
                raise AssertionError(
                    f"odd-degree separation term B_{k} leaves the odd basis"
                )
            b_odd[k] = b_k
        terms[k] = b_k
    return terms


def separate_even_odd(x: LieElement, y: LieElement, cap=None):
    """(B0, B1) with exp(x) exp(y) = exp(B0) exp(x + y + B1).

    B0 collects the even-degree pieces (even basis support), B1 the
    odd-degree pieces (odd basis support).
    """
    terms = separation_terms(x, y, cap)
    alg, n, ring = x.algebra, x.n, x.ring
    b0 = alg.zero_element(n, ring)
    b1 = alg.zero_element(n, ring)
    for k, t in terms.items():
        if k % 2 == 0:
            b0 = b0 + t
        else:
            b1 = b1 + t
    return b0, b1


# -- left-regular coordinate data ---------------------------------------------


def invariant_vf_blocks(v: LieElement):
    """The matrices A, B, H of the left-invariant vector fields.

    [v, e_i] = sum_j f_j A_ji,   b+(ad v) f_j = sum_k f_k B_kj,
    h(ad v) f_j = sum_i e_i H_ij; coefficients on the right of the basis.
    Requires v in the even part of the odd-basis span.
    """
    if not v.in_oddp_even():
        raise ValueError("blocks are defined for v in the odd-basis even part")
    alg, n, ring = v.algebra, v.n, v.ring
    d, m = alg.d, alg.m
    h_series = SeriesSpec("h")
    bplus_series = SeriesSpec("b+")
    a_block = [[None] * d for _ in range(m)]
    for i in range(d):
        image = bracket(v, alg.basis_element(alg.names[i], n, ring))
        if not image.in_oddp():
            raise ValueError("[v, e_i] left the odd-basis span")
        for j in range(m):
            a_block[j][i] = image.coeffs[d + j].conjugation()
    b_block = [[None] * m for _ in range(m)]
    h_block = [[None] * m for _ in range(d)]
    for j in range(m):
        f_j = alg.basis_element(alg.names[d + j], n, ring)
        b_img = series_of_ad(bplus_series, v, f_j)
        h_img = series_of_ad(h_series, v, f_j)
        if not b_img.in_oddp() or not h_img.in_wod():
            raise ValueError("series images violate the expected basis split")
        for k in range(m):
            b_block[k][j] = b_img.coeffs[d + k].conjugation()
        for i in range(d):
            h_block[i][j] = h_img.coeffs[i]
    return a_block, b_block, h_block


def delta_function(a_block, b_block, h_block) -> GrassmannElement:
    """Delta = Det(B) / Det(1 - H B^-1 A)."""
    m = len(b_block)
    d = len(h_block)
    sample = b_block[0][0]
    n, ring = sample.n, sample.ring
    det_b = grassmann_det(b_block, n, ring)
    if ring.is_zero(det_b.body()):
        raise ZeroDivisionError("Det(B) has zero body")
    b_inv = SuperMatrix(m, 0, b_block).inverse().entries
    hba = _gmat_mul(_gmat_mul(h_block, b_inv, n, ring), a_block, n, ring)
    one = GrassmannElement.one(n, ring)
    zero = GrassmannElement.zero(n, ring)
    denom_entries = [
        [(one if i == j else zero) - hba[i][j] for j in range(d)] for i in range(d)
    ]
    det_denom = grassmann_det(denom_entries, n, ring)
    return det_b * det_denom.inverse()


def _gmat_mul(a, b, n, ring):
    rows, inner, cols = len(a), len(b), len(b[0])
    zero = GrassmannElement.zero(n, ring)
    out = [[zero] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            e = a[i][k]
            if e.is_zero():
                continue
            for j in range(cols):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + e * b[k][j]
    return out


def s_matrix(delta: GrassmannElement):
    """Coefficients S_IJ = integral of Delta_((I u J)^c) xi^I xi^J xi^((I u J)^c).

    Returned as a dense 2^n x 2^n table of ring scalars indexed by subset
    bitmasks.
    """
    from .grassmann import epsilon_sign

    n, ring = delta.n, delta.ring
    size = 1 << n
    full = size - 1
    table = [[ring.zero] * size for _ in range(size)]
    for i_mask in range(size):
        for j_mask in range(size):
            if i_mask & j_mask:
                continue
            rest = full ^ (i_mask | j_mask)
            coeff = delta.coeff(rest)
            if ring.is_zero(coeff):
                continue
            sign = epsilon_sign(i_mask, j_mask) * epsilon_sign(
                i_mask | j_mask, rest
            )
            table[i_mask][j_mask] = coeff if sign > 0 else -coeff
    return table


# -- matrix realizations -------------------------------------------------------


class MatrixRep:
    """Faithful matrix realization of a super Lie algebra.

    `matrices[i]` is the image of basis vector i as a numeric SuperMatrix
    (shape p|q).  The graded commutator of the images must reproduce the
    structure constants (checked on construction).
    """

    def __init__(self, algebra: SuperLieAlgebra, matrices, validate=True):
        if len(matrices) != algebra.dim:
            raise ValueError("one matrix per basis vector required")
        self.algebra = algebra
        self.matrices = list(matrices)
        self.p = matrices[0].p
        self.q = matrices[0].q
        if validate:
            self.validate()

    def validate(self):
        alg = self.algebra
        for i in range(alg.dim):
            for j in range(alg.dim):
                a, b = self.matrices[i], self.matrices[j]
                both_odd = alg.parity(i) and alg.parity(j)
                comm = a * b + b * a if both_odd else a * b - b * a
                expected = None
                for k, c in alg.c[i][j].items():
                    term = self.matrices[k].scale(a.ring.of(c))
                    expected = term if expected is None else expected + term
                if expected is None:
                    if not comm.is_zero():
                        raise ValueError(
                            f"matrix bracket [{alg.names[i]},{alg.names[j]}] "
                            f"should vanish"
                        )
                elif not (comm - expected).is_zero():
                    raise ValueError(
                        f"matrix realization violates "
                        f"[{alg.names[i]},{alg.names[j]}]"
                    )

    def matrix(self, elt: LieElement) -> SuperMatrix:
        """SuperMatrix of a LieElement with left coefficients.

        Converting the left coefficient c on basis image B to entries
        multiplies row r by the conjugation power of the row parity:
        (c B)_rs = C^(parity of row r)(c) * B_rs.
        """
        if elt.algebra is not self.algebra and elt.algebra != self.algebra:
            raise ValueError("element belongs to a different algebra")
        n, ring = elt.n, elt.ring
        size = self.p + self.q
        zero = GrassmannElement.zero(n, ring)
        entries = [[zero] * size for _ in range(size)]
        for i, c in enumerate(elt.coeffs):
            if c.is_zero():
                continue
            c_even_rows = c
            c_odd_rows = c.conjugation()
            base = self.matrices[i]
            for r in range(size):
                cc = c_even_rows if r < self.p else c_odd_rows
                for s in range(size):
                    b = base.entries[r][s]
                    if not b.is_zero():
                        entries[r][s] = entries[r][s] + cc * b.adjoin_generators(
                            n - b.n
                        )
        return SuperMatrix(self.p, self.q, entries)

    def exp(self, elt: LieElement) -> SuperMatrix:
        """Exact exponential of the matrix of a zero-body element."""
        return self.matrix(elt).exp_nilpotent()


def osp12_matrix_rep(n, ring) -> MatrixRep:
    """The defining 3x3 realization of osp(1|2) (shape 1|2)."""
    alg = osp12()

    def m(rows):
        return SuperMatrix(
            1,
            2,
            [[GrassmannElement.scalar(n, ring, v) for v in row] for row in rows],
        )

    matrices = [
        m([[0, 0, 0], [0, 1, 0], [0, 0, -1]]),
        m([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
        m([[0, 0, 0], [0, 0, 0], [0, 1, 0]]),
        m([[0, 0, 1], [-1, 0, 0], [0, 0, 0]]),
        m([[0, 1, 0], [0, 0, 0], [1, 0, 0]]),
    ]
    return MatrixRep(alg, matrices)


def axi_beta_matrix_rep(n, ring) -> MatrixRep:
    """2x2 realization of the odd-affine algebra (shape 1|1)."""
    alg = axi_beta()

    def m(rows):
        return SuperMatrix(
            1,
            1,
            [[GrassmannElement.scalar(n, ring, v) for v in row] for row in rows],
        )

    matrices = [m([[1, 0], [0, 0]]), m([[0, 1], [0, 0]])]
    return MatrixRep(alg, matrices)


# -- shipped presets --------------------------------------------------------------


def heisenberg_like(m: int) -> SuperLieAlgebra:
    """Central even e with [f_j, f_j] = -e; models the odd Heisenberg group
    with multiplication (x, xi) (x', xi') = (x + x' + <xi, xi'>/2, xi + xi')."""
    brackets = [(f"f{j}", f"f{j}", "e", "-1") for j in range(1, m + 1)]
    return SuperLieAlgebra(
        f"heisenberg-like({m})",
        ["e"],
        [f"f{j}" for j in range(1, m + 1)],
        brackets,
    )


def axi_beta() -> SuperLieAlgebra:
    """Affine transformations of the odd line: [e, f] = f."""
    return SuperLieAlgebra(
        "axi-beta", ["e"], ["f"], [("e", "f", "f", "1"), ("f", "e", "f", "-1")]
    )


def osp12() -> SuperLieAlgebra:
    brackets = [
        ("e1", "e2", "e2", "2"),
        ("e2", "e1", "e2", "-2"),
        ("e1", "e3", "e3", "-2"),
        ("e3", "e1", "e3", "2"),
        ("e2", "e3", "e1", "1"),
        ("e3", "e2", "e1", "-1"),
        ("e1", "f1", "f1", "1"),
        ("f1", "e1", "f1", "-1"),
        ("e3", "f1", "f2", "-1"),
        ("f1", "e3", "f2", "1"),
        ("e1", "f2", "f2", "-1"),
        ("f2", "e1", "f2", "1"),
        ("e2", "f2", "f1", "-1"),
        ("f2", "e2", "f1", "1"),
        ("f1", "f1", "e2", "-2"),
        ("f1", "f2", "e1", "-1"),
        ("f2", "f1", "e1", "-1"),
        ("f2", "f2", "e3", "2"),
    ]
    return SuperLieAlgebra("osp12", ["e1", "e2", "e3"], ["f1", "f2"], brackets)


PRESETS = {
    "axi-beta": axi_beta,
    "osp12": osp12,
}


def preset(name: str, m: int | None = None) -> SuperLieAlgebra:
    if name.startswith("heisenberg-like"):
        if m is None and "(" in name:
            m = int(name.split("(")[1].rstrip(")"))
        return heisenberg_like(m or 1)
    if name in PRESETS:
        return PRESETS[name]()
    raise ValueError(f"unknown algebra preset {name!r}")
