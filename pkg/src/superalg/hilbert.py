"""Finite-dimensional proto super Hilbert spaces and function spaces over them.

A ProtoSuperHilbert carries an explicit basis-parity vector, a
positive-definite metric that is block diagonal across parities, and a
non-degenerate graded-symmetric super scalar product.  FnSpace models the
2^n-component space of functions of n odd variables with values in such a
space, together with the Inv_j operators, the Fermionic Fourier transform
and the (twisted) Hodge star.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .berezin import FiberSplit, berezin_integral
from .grassmann import GrassmannElement, indices_of, inversions, mask_of
from .scalars import imaginary_unit


class ProtoSuperHilbert:
    """Graded inner-product data on K^dim with explicit basis parities."""

    def __init__(self, ring, parities, metric, super_sp, tol=1e-9, validate=True):
        self.ring = ring
        self.parities = list(parities)
        self.dim = len(self.parities)
        self.d0 = sum(1 for p in self.parities if p == 0)
        self.d1 = self.dim - self.d0
        self.metric = [list(map(ring.of, row)) for row in metric]
        self.super_sp = [list(map(ring.of, row)) for row in super_sp]
        self.tol = tol
        if validate:
            self.validate()

    @classmethod
    def standard(cls, ring, d0, d1=0, super_sp=None):
        """Identity metric; default super scalar product also the identity."""
        parities = [0] * d0 + [1] * d1
        dim = d0 + d1
        metric = [
            [ring.one if i == j else ring.zero for j in range(dim)]
            for i in range(dim)
        ]
        if super_sp is None:
            super_sp = metric
        return cls(ring, parities, metric, super_sp)

    def validate(self):
        g, s, ring = self.metric, self.super_sp, self.ring
        for i in range(self.dim):
            for j in range(self.dim):
                if not ring.eq(g[i][j], ring.conj(g[j][i])):
                    raise ValueError("metric is not hermitian")
                if self.parities[i] != self.parities[j] and not ring.is_zero(
                    g[i][j]
                ):
                    raise ValueError("metric must be parity block-diagonal")
                sign = -1 if self.parities[i] and self.parities[j] else 1
                expected = ring.conj(s[i][j])
                if sign < 0:
                    expected = -expected
                if not ring.eq(s[j][i], expected):
                    raise ValueError("super scalar product is not graded symmetric")
        if not self._positive_definite(g):
            raise ValueError("metric is not positive definite")
        if not linalg.is_invertible(s, ring, self.tol):
            raise ValueError("super scalar product is degenerate")

    def _positive_definite(self, g):
        if self.ring.is_exact:
            for k in range(1, self.dim + 1):
                minor = [row[:k] for row in g[:k]]
                det = linalg.scalar_det(minor, self.ring)
                real = det.re if self.ring.is_complex else det
                if real <= 0:
                    return False
            return True
        arr = np.array(g, dtype=complex if self.ring.is_complex else float)
        return bool(np.all(np.linalg.eigvalsh(arr) > 0))

    # -- serialization ---------------------------------------------------------

    def to_json(self):
        return {
            "parities": self.parities,
            "metric": [[_scalar_json(x, self.ring) for x in row] for row in self.metric],
            "super_sp": [
                [_scalar_json(x, self.ring) for x in row] for row in self.super_sp
            ],
        }

    @classmethod
    def from_json(cls, data, ring):
        return cls(
            ring,
            data["parities"],
            [[_scalar_from_json(x, ring) for x in row] for row in data["metric"]],
            [[_scalar_from_json(x, ring) for x in row] for row in data["super_sp"]],
        )

    # -- scalar-coefficient pairings -----------------------------------------

    def pair_metric(self, u, v):
        ring = self.ring
        out = ring.zero
        for i, ui in enumerate(u):
            if ring.is_zero(ui):
                continue
            cu = ring.conj(ui)
            for j, vj in enumerate(v):
                out = out + cu * self.metric[i][j] * vj
        return out

    def pair_super(self, u, v):
        ring = self.ring
        out = ring.zero
        for i, ui in enumerate(u):
            if ring.is_zero(ui):
                continue
            cu = ring.conj(ui)
            for j, vj in enumerate(v):
                out = out + cu * self.super_sp[i][j] * vj
        return out

    def conj_c(self, u):
        """The conjugation operator on coordinates: flips odd entries."""
        return [-x if p else x for x, p in zip(u, self.parities)]

    def basis_vector(self, i):
        return [
            self.ring.one if j == i else self.ring.zero for j in range(self.dim)
        ]

    # -- extension of the super scalar product to Grassmann coefficients ------

    def extend_super_sp(self, u, v):
        """Unique smooth extension to module vectors (GrassmannElement coords).

        On decomposables: <b_i l | b_j m> = S_ij * C^(p_j)(conj l) * m, the
        form derived from right-linearity and anti-right-linearity of the
        extension.
        """
        sample = u[0]
        n, gring = sample.n, sample.ring
        out = GrassmannElement.zero(n, gring)
        for i, ui in enumerate(u):
            if ui.is_zero():
                continue
            cu = ui.complex_conjugate() if gring.is_complex else ui
            cu_flip = cu.conjugation()
            for j, vj in enumerate(v):
                s = self.super_sp[i][j]
                if self.ring.is_zero(s) or vj.is_zero():
                    continue
                left = cu_flip if self.parities[j] else cu
                out = out + left * vj * _lift_scalar(s, n, gring)
        return out


def _scalar_json(value, ring):
    from .scalars import CRATIONAL, RATIONAL

    if ring is RATIONAL:
        return str(value)
    if ring is CRATIONAL:
        return {"re": str(value.re), "im": str(value.im)}
    if ring.is_complex:
        return {"re": value.real, "im": value.imag}
    return value


def _scalar_from_json(value, ring):
    from fractions import Fraction

    from .scalars import CRATIONAL, RATIONAL, ComplexRational

    if ring is RATIONAL:
        return Fraction(value)
    if ring is CRATIONAL:
        return ComplexRational(Fraction(value["re"]), Fraction(value["im"]))
    if ring.is_complex:
        return complex(value["re"], value["im"])
    return float(value)


def _lift_scalar(value, n, gring):
    return GrassmannElement.scalar(n, gring, _convert_scalar(value, gring))


def _convert_scalar(value, gring):
    try:
        return gring.of(value)
    except TypeError:
        return gring.of(complex(value)) if gring.is_complex else gring.of(float(value))


def extend_form_to_A(space: ProtoSuperHilbert, first, second):
    """Evaluate the extension of the super scalar product on decomposables.

    `first` and `second` are pairs (vector, GrassmannElement) representing
    v (x) lambda and w (x) mu.
    """
    v, lam = first
    w, mu = second
    n, gring = lam.n, lam.ring
    u_coords = [_lift_scalar(c, n, gring) * lam for c in v]
    w_coords = [_lift_scalar(c, n, gring) * mu for c in w]
    return space.extend_super_sp(u_coords, w_coords)


class FnElement:
    """Element of FnSpace: one E-coordinate vector per subset of {1..n}."""

    __slots__ = ("space", "comps")

    def __init__(self, space, comps):
        self.space = space
        self.comps = [list(c) for c in comps]

    def __add__(self, other):
        return FnElement(
            self.space,
            [
                [a + b for a, b in zip(ca, cb)]
                for ca, cb in zip(self.comps, other.comps)
            ],
        )

    def __sub__(self, other):
        return FnElement(
            self.space,
            [
                [a - b for a, b in zip(ca, cb)]
                for ca, cb in zip(self.comps, other.comps)
            ],
        )

    def scale(self, factor):
        return FnElement(
            self.space, [[factor * a for a in c] for c in self.comps]
        )

    def flat(self):
        return [a for c in self.comps for a in c]

    def max_abs_diff(self, other):
        return max(
            (
                abs(a - b)
                for ca, cb in zip(self.comps, other.comps)
                for a, b in zip(ca, cb)
            ),
            default=0.0,
        )

    def parity(self):
        """Parity as a homogeneous element, or None if mixed/zero."""
        ring = self.space.base.ring
        seen = set()
        for mask, comp in enumerate(self.comps):
            for a, p in zip(comp, self.space.base.parities):
                if not ring.is_zero(a):
                    seen.add((mask.bit_count() + p) % 2)
        if len(seen) == 1:
            return seen.pop()
        return None

    def to_json(self):
        ring = self.space.ring
        return {
            "n": self.space.n,
            "components": [
                {
                    "index": list(indices_of(mask)),
                    "vector": [_scalar_json(x, ring) for x in comp],
                }
                for mask, comp in enumerate(self.comps)
                if any(not ring.is_zero(x) for x in comp)
            ],
        }


class FnSpace:
    """Functions of n odd variables valued in a proto super Hilbert space."""

    def __init__(self, base: ProtoSuperHilbert, n: int):
        self.base = base
        self.n = n
        self.size = 1 << n
        self.flat_dim = self.size * base.dim
        self.ring = base.ring

    # flat index = mask * dimE + coordinate
    def flat_parity(self, idx):
        mask, a = divmod(idx, self.base.dim)
        return (mask.bit_count() + self.base.parities[a]) % 2

    @property
    def flat_parities(self):
        return [self.flat_parity(i) for i in range(self.flat_dim)]

    def zero(self):
        z = self.ring.zero
        return FnElement(self, [[z] * self.base.dim for _ in range(self.size)])

    def basis_element(self, mask, coord):
        e = self.zero()
        e.comps[mask][coord] = self.ring.one
        return e

    def from_flat(self, flat):
        d = self.base.dim
        return FnElement(
            self, [flat[mask * d : (mask + 1) * d] for mask in range(self.size)]
        )

    def element(self, comps):
        return FnElement(self, comps)

    def element_from_json(self, data):
        if data["n"] != self.n:
            raise ValueError("element and space disagree on the variable count")
        out = self.zero()
        for entry in data["components"]:
            mask = mask_of(entry["index"])
            out.comps[mask] = [
                _scalar_from_json(x, self.ring) for x in entry["vector"]
            ]
        return out

    # -- pairings ------------------------------------------------------------

    def metric_g0(self, chi, psi):
        """<chi, psi> = sum_I <chi_I, psi_I>_E (positive definite)."""
        out = self.ring.zero
        for cI, pI in zip(chi.comps, psi.comps):
            out = out + self.base.pair_metric(cI, pI)
        return out

    def super_sp_g0(self, chi, psi):
        """sum_I (-1)^eps(I, I^c) <C^|I| chi_I | C^n psi_(I^c)>_E."""
        out = self.ring.zero
        full = self.size - 1
        for mask in range(self.size):
            comp = mask ^ full
            sign = -1 if inversions(mask, comp) & 1 else 1
            left = chi.comps[mask]
            if mask.bit_count() % 2:
                left = self.base.conj_c(left)
            right = psi.comps[comp]
            if self.n % 2:
                right = self.base.conj_c(right)
            term = self.base.pair_super(left, right)
            out = out + term if sign > 0 else out - term
        return out

    def super_sp_gram(self):
        """Flat Gram matrix of the super scalar product on this space."""
        basis = [
            self.basis_element(mask, a)
            for mask in range(self.size)
            for a in range(self.base.dim)
        ]
        return [
            [self.super_sp_g0(u, v) for v in basis] for u in basis
        ]

    def super_sp_pairs(self):
        """Sparse flat Gram of the super scalar product: {(i, j): value}.

        Nonzero only between complementary monomial components, so the dict
        has at most 2^n * (dim E)^2 entries.
        """
        ring = self.ring
        d = self.base.dim
        full = self.size - 1
        pairs = {}
        for mask in range(self.size):
            comp = mask ^ full
            sign_eps = -1 if inversions(mask, comp) & 1 else 1
            for a in range(d):
                ca = -1 if (mask.bit_count() % 2) and self.base.parities[a] else 1
                for b in range(d):
                    s = self.base.super_sp[a][b]
                    if ring.is_zero(s):
                        continue
                    cb = -1 if (self.n % 2) and self.base.parities[b] else 1
                    sign = sign_eps * ca * cb
                    pairs[(mask * d + a, comp * d + b)] = (
                        s if sign > 0 else -s
                    )
        return pairs

    def metric_pairs(self):
        """Sparse flat Gram of the metric: {(i, j): value}."""
        ring = self.ring
        d = self.base.dim
        pairs = {}
        for mask in range(self.size):
            for a in range(d):
                for b in range(d):
                    g = self.base.metric[a][b]
                    if not ring.is_zero(g):
                        pairs[(mask * d + a, mask * d + b)] = g
        return pairs

    def as_proto(self, validate=False):
        """The space itself as a proto super Hilbert space (flat basis)."""
        basis = [
            self.basis_element(mask, a)
            for mask in range(self.size)
            for a in range(self.base.dim)
        ]
        metric = [[self.metric_g0(u, v) for v in basis] for u in basis]
        super_sp = [[self.super_sp_g0(u, v) for v in basis] for u in basis]
        return ProtoSuperHilbert(
            self.ring, self.flat_parities, metric, super_sp, validate=validate
        )

    # -- operators -------------------------------------------------------------

    def identity_op(self):
        return LinearOp(self, linalg.identity(self.flat_dim, self.ring))

    def inv_operator(self, j):
        """Inv_j = xi_j + i d_j, an odd operator squaring to i*id."""
        if not 1 <= j <= self.n:
            raise ValueError(f"index {j} out of range 1..{self.n}")
        if not self.ring.is_complex:
            raise ValueError("Inv operators need a complex coefficient ring")
        i_unit = imaginary_unit(self.ring)
        d = self.base.dim
        mat = [[self.ring.zero] * self.flat_dim for _ in range(self.flat_dim)]
        bit = 1 << (j - 1)
        for mask in range(self.size):
            below = (mask & (bit - 1)).bit_count()
            sign = -self.ring.one if below % 2 else self.ring.one
            for a in range(d):
                if not mask & bit:
                    # multiplication by xi_j : mask -> mask | bit
                    mat[(mask | bit) * d + a][mask * d + a] = sign
                else:
                    # i * derivative : mask -> mask ^ bit
                    mat[(mask ^ bit) * d + a][mask * d + a] = i_unit * sign
        return LinearOp(self, mat)

    def fourier_via_inv(self):
        """F = (-i)^n Inv_n o ... o Inv_1 as a LinearOp."""
        op = self.identity_op()
        for j in range(1, self.n + 1):
            op = self.inv_operator(j) @ op
        minus_i = -imaginary_unit(self.ring)
        factor = self.ring.one
        for _ in range(self.n):
            factor = factor * minus_i
        return op.scale(factor)

    def fourier_via_integral(self):
        """F from the Berezin integral of exp(-i<xi,kappa>) psi(xi).

        Works in the doubled Grassmann algebra with the kappa generators
        adjoined after the xi generators, then renames kappa back to xi.
        """
        if not self.ring.is_complex:
            raise ValueError("Fourier transform needs a complex coefficient ring")
        from .scalars import CF64, CRATIONAL

        gring = CRATIONAL if self.ring.is_exact else CF64
        n = self.n
        big = 2 * n
        i_unit = imaginary_unit(gring)
        kernel = GrassmannElement.one(big, gring)
        for p in range(1, n + 1):
            xi_p = GrassmannElement.generator(big, gring, p)
            kappa_p = GrassmannElement.generator(big, gring, n + p)
            kernel = kernel * (
                GrassmannElement.one(big, gring) - i_unit * (xi_p * kappa_p)
            )
        split = FiberSplit(big, tuple(range(1, n + 1)))
        # swap the xi and kappa blocks; the integral output has no xi left
        rename = {n + p: p for p in range(1, n + 1)}
        rename.update({p: n + p for p in range(1, n + 1)})
        d = self.base.dim
        mat = [[self.ring.zero] * self.flat_dim for _ in range(self.flat_dim)]
        for mask in range(self.size):
            mono = GrassmannElement.monomial(big, gring, mask)
            integrand = kernel * mono
            image = berezin_integral(integrand, split).rename_generators(rename)
            for out_mask, coeff in image.terms:
                if out_mask >> n:
                    raise AssertionError("integral image left the xi algebra")
                for a in range(d):
                    mat[out_mask * d + a][mask * d + a] = _convert_scalar(
                        coeff, self.ring
                    )
        return LinearOp(self, mat)

    def fourier_odd(self, chi=None, method="inv"):
        op = (
            self.fourier_via_inv() if method == "inv" else self.fourier_via_integral()
        )
        if chi is None:
            return op
        return op.apply(chi)

    def hodge_star(self):
        """*(v^I) = (-1)^eps(I, I^c) v^(I^c), identity on the E factor."""
        d = self.base.dim
        full = self.size - 1
        mat = [[self.ring.zero] * self.flat_dim for _ in range(self.flat_dim)]
        for mask in range(self.size):
            comp = mask ^ full
            sign = -self.ring.one if inversions(mask, comp) & 1 else self.ring.one
            for a in range(d):
                mat[comp * d + a][mask * d + a] = sign
        return LinearOp(self, mat)

    def j_k_matrices(self, j_matrix):
        """The sequence J_k = C^n o J o C^k (depends on k mod 2 only)."""
        d = self.base.dim
        ring = self.ring
        c_diag = [-ring.one if p else ring.one for p in self.base.parities]
        out = []
        for k in range(self.n + 1):
            out.append(
                [
                    [
                        (c_diag[i] if self.n % 2 else ring.one)
                        * j_matrix[i][j]
                        * (c_diag[j] if k % 2 else ring.one)
                        for j in range(d)
                    ]
                    for i in range(d)
                ]
            )
        return out

    def twisted_hodge_star(self, j_matrix):
        """H*(v^I (x) e) = *(v^I) (x) J_k(e) with J_k = C^n o J o C^k, k = |I|."""
        d = self.base.dim
        full = self.size - 1
        ring = self.ring
        c_diag = [
            -ring.one if p else ring.one for p in self.base.parities
        ]
        j_mats = []
        for k in range(2):
            jk = [
                [
                    (c_diag[i] if self.n % 2 else ring.one)
                    * j_matrix[i][j]
                    * (c_diag[j] if k % 2 else ring.one)
                    for j in range(d)
                ]
                for i in range(d)
            ]
            j_mats.append(jk)
        mat = [[ring.zero] * self.flat_dim for _ in range(self.flat_dim)]
        for mask in range(self.size):
            comp = mask ^ full
            sign = -ring.one if inversions(mask, comp) & 1 else ring.one
            jk = j_mats[mask.bit_count() % 2]
            for a in range(d):
                for b in range(d):
                    if not ring.is_zero(jk[a][b]):
                        mat[comp * d + a][mask * d + b] = sign * jk[a][b]
        return LinearOp(self, mat)


class LinearOp:
    """Flat-matrix operator on an FnSpace (or between two of them)."""

    __slots__ = ("space", "matrix", "codomain")

    def __init__(self, space, matrix, codomain=None):
        self.space = space
        self.codomain = codomain or space
        self.matrix = matrix

    def apply(self, elt: FnElement) -> FnElement:
        flat = elt.flat()
        out = linalg.mat_vec(self.matrix, flat, self.space.ring)
        return self.codomain.from_flat(out)

    def __matmul__(self, other):
        """Composition self o other, column-sparsely (operators here are
        mostly signed permutations)."""
        ring = self.space.ring
        self_cols = self.columns_sparse()
        other_cols = other.columns_sparse()
        rows = len(self.matrix)
        out = [[ring.zero] * other.space.flat_dim for _ in range(rows)]
        for j, col in enumerate(other_cols):
            for k, b in col:
                for r, a in self_cols[k]:
                    out[r][j] = out[r][j] + a * b
        return LinearOp(other.space, out, codomain=self.codomain)

    def scale(self, factor):
        return LinearOp(
            self.space,
            [[factor * x for x in row] for row in self.matrix],
            codomain=self.codomain,
        )

    def __add__(self, other):
        return LinearOp(
            self.space,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.matrix, other.matrix)
            ],
            codomain=self.codomain,
        )

    def __sub__(self, other):
        return self + other.scale(-self.space.ring.one)

    def parity_component(self, alpha):
        """The homogeneous part mapping parity beta to beta + alpha."""
        src = self.space
        dst = self.codomain
        ring = src.ring
        out = [row[:] for row in self.matrix]
        for r in range(dst.flat_dim):
            pr = dst.flat_parity(r)
            for c in range(src.flat_dim):
                if (pr + src.flat_parity(c)) % 2 != alpha:
                    out[r][c] = ring.zero
        return LinearOp(src, out, codomain=dst)

    def declared_parity(self, tol=None):
        """0, 1 or None according to the nonzero entry pattern."""
        ring = self.space.ring
        seen = set()
        for r, row in enumerate(self.matrix):
            pr = self.codomain.flat_parity(r)
            for c, x in enumerate(row):
                if not ring.is_zero(x):
                    seen.add((pr + self.space.flat_parity(c)) % 2)
        if len(seen) == 1:
            return seen.pop()
        return None

    def max_abs_diff(self, other):
        return max(
            (
                abs(a - b)
                for ra, rb in zip(self.matrix, other.matrix)
                for a, b in zip(ra, rb)
            ),
            default=0.0,
        )

    def is_equal(self, other, tol=None):
        ring = self.space.ring
        return all(
            ring.eq(a, b, tol)
            for ra, rb in zip(self.matrix, other.matrix)
            for a, b in zip(ra, rb)
        )

    def columns_sparse(self):
        """Per-column nonzero entries: list of [(row, value), ...]."""
        ring = self.space.ring
        cols = [[] for _ in range(self.space.flat_dim)]
        for r, row in enumerate(self.matrix):
            for c, x in enumerate(row):
                if not ring.is_zero(x):
                    cols[c].append((r, x))
        return cols

    def transform_pairing(self, pairs: dict) -> dict:
        """{(i, j): <A e_i, A e_j>} for a sparse pairing {(r, s): value}.

        Works column-sparsely, so signed permutations cost O(nnz) rather
        than O(dim^4).
        """
        ring = self.space.ring
        conj = ring.conj
        cols = self.columns_sparse()
        dim = self.space.flat_dim
        out = {}
        for i in range(dim):
            for r, a in cols[i]:
                ca = conj(a)
                for j in range(dim):
                    for s, b in cols[j]:
                        v = pairs.get((r, s))
                        if v is None:
                            continue
                        key = (i, j)
                        term = ca * v * b
                        out[key] = out[key] + term if key in out else term
        return {k: v for k, v in out.items() if not ring.is_zero(v)}


def _graded_pairing_residual(op: LinearOp, sign) -> float:
    """Entrywise residual of <Av|w> + s (<v|A0 w> + <C v|A1 w>) over the
    flat basis, assembled sparsely as A^H S + s (S A0 + (C S) A1)."""
    space = op.space
    ring = space.ring
    dim = space.flat_dim
    pairs = space.super_sp_pairs()
    conj = ring.conj
    matrix = op.matrix
    entries = {}

    def parity_part(r, c, alpha):
        return (space.flat_parity(r) + space.flat_parity(c)) % 2 == alpha

    # A^H S: contribution conj(A[j][i]) S[j][k] at (i, k)
    for (j, k), s_val in pairs.items():
        row = matrix[j]
        for i in range(dim):
            a = row[i]
            if ring.is_zero(a):
                continue
            key = (i, k)
            term = conj(a) * s_val
            entries[key] = entries[key] + term if key in entries else term
    # S A0 and (C S) A1: contribution S[i][j] A_alpha[j][k] at (i, k)
    for (i, j), s_val in pairs.items():
        row = matrix[j]
        ci = -1 if space.flat_parity(i) else 1
        for k in range(dim):
            a = row[k]
            if ring.is_zero(a):
                continue
            factor = 1 if parity_part(j, k, 0) else ci
            term = s_val * a
            if sign < 0:
                term = -term
            if factor < 0:
                term = -term
            key = (i, k)
            entries[key] = entries[key] + term if key in entries else term
    return max((abs(v) for v in entries.values()), default=0.0)


def check_graded_skew(op: LinearOp) -> float:
    """Max residual of <Av|w> + <v|A0 w> + <C(v)|A1 w> over the flat basis."""
    return _graded_pairing_residual(op, 1)


def check_graded_symmetric(op: LinearOp) -> float:
    """Same residual with the sign flipped: <Av|w> - <v|A0 w> - <C(v)|A1 w>."""
    return _graded_pairing_residual(op, -1)


def conj_c_element(elt: FnElement) -> FnElement:
    """Total-parity conjugation: flips components with |I| + parity(a) odd."""
    space = elt.space
    parities = space.base.parities
    return FnElement(
        space,
        [
            [
                -x if (mask.bit_count() + p) % 2 else x
                for x, p in zip(comp, parities)
            ]
            for mask, comp in enumerate(elt.comps)
        ],
    )


def check_shs_equivalence(
    op: LinearOp, src: ProtoSuperHilbert, dst: ProtoSuperHilbert, tol=1e-9
) -> bool:
    """Equivalence of proto super Hilbert spaces through a linear bijection.

    Checks (i) ker(A0) + ker(A1) = E, (ii) metric preservation, and (iii)
    the three-case rule for the super scalar products, with the factor i on
    ker(A0) x ker(A0).
    """
    ring = src.ring
    matrix = op.matrix
    dim = src.dim
    if not linalg.is_invertible(matrix, ring, tol):
        raise ValueError("equivalence candidate must be bijective")
    a_parts = []
    for alpha in (0, 1):
        part = [row[:] for row in matrix]
        for r in range(len(matrix)):
            pr = dst.parities[r]
            for c in range(dim):
                if (pr + src.parities[c]) % 2 != alpha:
                    part[r][c] = ring.zero
        a_parts.append(part)
    ker0 = linalg.nullspace(a_parts[0], ring, tol)
    ker1 = linalg.nullspace(a_parts[1], ring, tol)
    if len(ker0) + len(ker1) != dim:
        return False
    combined = ker0 + ker1
    if not linalg.is_invertible(combined, ring, tol):
        return False

    def apply(m, v):
        return linalg.mat_vec(m, v, ring)

    basis = [src.basis_vector(i) for i in range(dim)]
    for x in basis:
        for y in basis:
            lhs = dst.pair_metric(apply(matrix, x), apply(matrix, y))
            if not ring.eq(lhs, src.pair_metric(x, y), tol):
                return False
    i_unit = imaginary_unit(ring) if ring.is_complex else None

    def sp_after(x, y):
        return dst.pair_super(apply(matrix, x), apply(matrix, y))

    for x in basis:
        for y in ker1:
            if not ring.eq(sp_after(x, y), src.pair_super(x, y), tol):
                return False
    for x in ker1:
        for y in ker0:
            if not ring.eq(
                sp_after(x, y), src.pair_super(src.conj_c(x), y), tol
            ):
                return False
    for x in ker0:
        for y in ker0:
            expected = src.pair_super(src.conj_c(x), y)
            if i_unit is not None:
                expected = i_unit * expected
            else:
                raise ValueError(
                    "the ker(A0) x ker(A0) case needs a complex ring"
                )
            if not ring.eq(sp_after(x, y), expected, tol):
                return False
    return True
