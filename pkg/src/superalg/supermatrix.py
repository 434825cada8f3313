"""Block-graded matrices over the Grassmann algebra.

A SuperMatrix acts as a right-linear map in the convention f(e_i) =
sum_j e_j f_ji, so composition is the plain matrix product of the entry
tables (entries multiply left-to-right in the Grassmann algebra).  The
homogeneous basis is ordered even-first: p even rows/columns, then q odd
ones.
"""

from __future__ import annotations

import math

from . import linalg
from .grassmann import GrassmannElement
from .scalars import F64, CF64


class SuperMatrix:
    """(p+q) x (p+q) matrix with GrassmannElement entries."""

    __slots__ = ("p", "q", "n", "ring", "entries", "declared_parity")

    def __init__(self, p, q, entries, declared_parity=None):
        size = p + q
        if len(entries) != size or any(len(row) != size for row in entries):
            raise ValueError(f"expected a {size}x{size} entry table")
        first = entries[0][0] if size else None
        self.p = p
        self.q = q
        self.n = first.n if size else 0
        self.ring = first.ring if size else None
        self.entries = [list(row) for row in entries]
        for row in self.entries:
            for e in row:
                if e.n != self.n or e.ring is not self.ring:
                    raise ValueError("entries must share one algebra and ring")
        self.declared_parity = declared_parity
        if declared_parity is not None:
            self._check_declared_parity()

    def _check_declared_parity(self):
        want_flip = 1 if self.declared_parity == "odd" else 0
        for i in range(self.p + self.q):
            for j in range(self.p + self.q):
                e = self.entries[i][j]
                if e.is_zero():
                    continue
                row_par = 0 if i < self.p else 1
                col_par = 0 if j < self.p else 1
                expected = (row_par + col_par + want_flip) % 2
                actual = e.parity()
                if actual is None or actual != expected:
                    raise ValueError(
                        f"entry ({i},{j}) violates declared "
                        f"{self.declared_parity} parity"
                    )

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p, q, n, ring):
        z = GrassmannElement.zero(n, ring)
        size = p + q
        return cls(p, q, [[z] * size for _ in range(size)])

    @classmethod
    def identity(cls, p, q, n, ring):
        z = GrassmannElement.zero(n, ring)
        one = GrassmannElement.one(n, ring)
        size = p + q
        return cls(
            p, q,
            [[one if i == j else z for j in range(size)] for i in range(size)],
            declared_parity="even",
        )

    @classmethod
    def from_blocks(cls, a, b, c, d, declared_parity=None):
        p, q = len(a), len(d)
        entries = [list(ra) + list(rb) for ra, rb in zip(a, b)]
        entries += [list(rc) + list(rd) for rc, rd in zip(c, d)]
        return cls(p, q, entries, declared_parity)

    def _new(self, entries, declared_parity=None):
        return SuperMatrix(self.p, self.q, entries, declared_parity)

    @property
    def size(self):
        return self.p + self.q

    # -- blocks --------------------------------------------------------------

    def block_a(self):
        return [row[: self.p] for row in self.entries[: self.p]]

    def block_b(self):
        return [row[self.p :] for row in self.entries[: self.p]]

    def block_c(self):
        return [row[: self.p] for row in self.entries[self.p :]]

    def block_d(self):
        return [row[self.p :] for row in self.entries[self.p :]]

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        return self._new(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        self._check_compatible(other)
        return self._new(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return self._new([[-a for a in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, SuperMatrix):
            self._check_compatible(other)
            size = self.size
            zero = GrassmannElement.zero(self.n, self.ring)
            out = [[zero] * size for _ in range(size)]
            for i in range(size):
                row = self.entries[i]
                for k in range(size):
                    e = row[k]
                    if e.is_zero():
                        continue
                    other_row = other.entries[k]
                    out_row = out[i]
                    for j in range(size):
                        if not other_row[j].is_zero():
                            out_row[j] = out_row[j] + e * other_row[j]
            return self._new(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor):
        """Multiply every entry on the left by a scalar or GrassmannElement."""
        if not isinstance(factor, GrassmannElement):
            factor = GrassmannElement.scalar(self.n, self.ring, factor)
        return self._new([[factor * a for a in row] for row in self.entries])

    def apply(self, vector):
        """Image coordinates of a coordinate column (right-linear action)."""
        return [
            sum(
                (e * x for e, x in zip(row, vector)),
                GrassmannElement.zero(self.n, self.ring),
            )
            for row in self.entries
        ]

    def _check_compatible(self, other):
        if (self.p, self.q, self.n) != (other.p, other.q, other.n):
            raise ValueError("supermatrix shape/algebra mismatch")

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        if (self.p, self.q) != (other.p, other.q):
            return False
        return all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash((self.p, self.q))

    def approx_eq(self, other, tol=None):
        return all(
            a.approx_eq(b, tol)
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )

    def max_abs(self):
        return max(
            (e.max_abs() for row in self.entries for e in row), default=0.0
        )

    def inf_norm(self):
        """Max row sum of entry 1-norms; submultiplicative."""
        return max(
            (sum(e.one_norm() for e in row) for row in self.entries), default=0.0
        )

    def body_matrix(self):
        return [[e.body() for e in row] for row in self.entries]

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    # -- determinants and Berezinians -------------------------------------------

    def berezinian(self):
        return berezinian(self)

    def pi_berezinian(self):
        return pi_berezinian(self)

    def inverse(self):
        """Inverse via body inverse plus a terminating geometric series."""
        body = self.body_matrix()
        if not linalg.is_invertible(body, self.ring):
            raise ZeroDivisionError("supermatrix body is singular")
        body_inv = linalg.scalar_inv(body, self.ring)
        b_inv = self._new(
            [
                [GrassmannElement.scalar(self.n, self.ring, c) for c in row]
                for row in body_inv
            ]
        )
        ident = SuperMatrix.identity(self.p, self.q, self.n, self.ring)
        nil = ident - b_inv * self
        result = ident
        power = ident
        for _ in range(self.n):
            power = power * nil
            if power.is_zero():
                break
            result = result + power
        return result * b_inv

    def exp_nilpotent(self):
        """Exact exponential of a matrix whose entries all have zero body."""
        for row in self.entries:
            for e in row:
                if not self.ring.is_zero(e.body()):
                    raise ValueError("exp_nilpotent requires zero-body entries")
        result = SuperMatrix.identity(self.p, self.q, self.n, self.ring)
        term = SuperMatrix.identity(self.p, self.q, self.n, self.ring)
        for k in range(1, self.n + 1):
            term = term * self
            if term.is_zero():
                break
            result = result + term.scale(
                self.ring.of(1) / self.ring.of(math.factorial(k))
            )
        return result

    def exp_numeric(self, tol=1e-12, max_squarings=60):
        """Scaling-and-squaring exponential over a float coefficient ring.

        The residual ||exp(m) exp(-m) - I||_inf over all Grassmann
        coefficients is checked against `tol`.
        """
        if self.ring not in (F64, CF64):
            raise ValueError("exp_numeric requires a float coefficient ring")
        result = self._exp_numeric_unchecked(max_squarings)
        inverse = (-self)._exp_numeric_unchecked(max_squarings)
        residual = (result * inverse).max_abs_off_identity()
        if residual > tol:
            raise ArithmeticError(
                f"exp_numeric residual {residual:g} exceeds tolerance {tol:g}"
            )
        return result

    def _exp_numeric_unchecked(self, max_squarings=60):
        norm = self.inf_norm()
        s = 0
        while norm > 0.5 and s < max_squarings:
            norm /= 2.0
            s += 1
        if norm > 0.5:
            raise ArithmeticError("exp_numeric failed to scale the matrix down")
        scaled = self.scale(self.ring.of(0.5**s))
        result = SuperMatrix.identity(self.p, self.q, self.n, self.ring)
        term = SuperMatrix.identity(self.p, self.q, self.n, self.ring)
        for k in range(1, 19):
            term = term * scaled
            result = result + term.scale(self.ring.of(1.0 / math.factorial(k)))
        for _ in range(s):
            result = result * result
        return result

    def max_abs_off_identity(self):
        out = 0.0
        one = GrassmannElement.one(self.n, self.ring)
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                d = (e - one) if i == j else e
                out = max(out, d.max_abs())
        return out

    # -- serialization ------------------------------------------------------------

    def to_json(self):
        return {
            "p": self.p,
            "q": self.q,
            "entries": [[e.to_json() for e in row] for row in self.entries],
            "parity": self.declared_parity,
        }

    @classmethod
    def from_json(cls, data, ring):
        entries = [
            [GrassmannElement.from_json(e, ring) for e in row]
            for row in data["entries"]
        ]
        return cls(data["p"], data["q"], entries, data.get("parity"))

    def __repr__(self):
        rows = "\n".join(
            "  [" + ", ".join(repr(e) for e in row) + "]" for row in self.entries
        )
        return f"SuperMatrix(p={self.p}, q={self.q},\n{rows}\n)"


def grassmann_det(entries, n, ring):
    """Determinant of a matrix with commuting (even) Grassmann entries.

    Division-free subset dynamic program (Laplace over column subsets), so
    it is well defined over the even subalgebra despite its zero divisors.
    """
    size = len(entries)
    if size == 0:
        return GrassmannElement.one(n, ring)
    zero = GrassmannElement.zero(n, ring)
    # dp maps a column subset S (bitmask) to det of the first |S| rows on S.
    dp = {0: GrassmannElement.one(n, ring)}
    for row in range(size):
        new_dp = {}
        row_entries = entries[row]
        for subset, minor in dp.items():
            if minor.is_zero():
                continue
            pos = 0
            for col in range(size):
                bit = 1 << col
                if subset & bit:
                    continue
                e = row_entries[col]
                if not e.is_zero():
                    # parity of the column position within the new subset
                    below = (subset & (bit - 1)).bit_count()
                    term = minor * e if (row + below) % 2 == 0 else -(minor * e)
                    key = subset | bit
                    acc = new_dp.get(key)
                    new_dp[key] = term if acc is None else acc + term
                pos += 1
        dp = new_dp
        if not dp:
            return zero
    return dp.get((1 << size) - 1, zero)


def berezinian(m: SuperMatrix) -> GrassmannElement:
    """Ber = Det(A - B D^-1 C) * Det(D)^-1 for an even block matrix."""
    _require_even(m)
    n, ring = m.n, m.ring
    if m.q == 0:
        return grassmann_det(m.block_a(), n, ring)
    d_block = SuperMatrix(0, m.q, m.block_d())
    det_d = grassmann_det(m.block_d(), n, ring)
    if ring.is_zero(det_d.body()):
        raise ZeroDivisionError("berezinian: body of Det(D) is singular")
    if m.p == 0:
        return det_d.inverse()
    d_inv = d_block.inverse()
    schur = _schur_complement(m, d_inv)
    return grassmann_det(schur, n, ring) * det_d.inverse()


def pi_berezinian(m: SuperMatrix) -> GrassmannElement:
    """piBer = |Det(A - B D^-1 C)| * Det(D)^-1 (real coefficient rings)."""
    _require_even(m)
    n, ring = m.n, m.ring
    if m.q == 0:
        return grassmann_det(m.block_a(), n, ring).grassmann_abs()
    d_block = SuperMatrix(0, m.q, m.block_d())
    det_d = grassmann_det(m.block_d(), n, ring)
    if ring.is_zero(det_d.body()):
        raise ZeroDivisionError("pi_berezinian: body of Det(D) is singular")
    if m.p == 0:
        return det_d.inverse()
    d_inv = d_block.inverse()
    schur = _schur_complement(m, d_inv)
    det_top = grassmann_det(schur, n, ring)
    if ring.is_zero(det_top.body()):
        raise ZeroDivisionError("pi_berezinian: zero-body numerator determinant")
    return det_top.grassmann_abs() * det_d.inverse()


def _schur_complement(m: SuperMatrix, d_inv: SuperMatrix):
    a, b, c = m.block_a(), m.block_b(), m.block_c()
    zero = GrassmannElement.zero(m.n, m.ring)
    out = [row[:] for row in a]
    for i in range(m.p):
        for j in range(m.p):
            acc = zero
            for k in range(m.q):
                for l in range(m.q):
                    acc = acc + b[i][k] * d_inv.entries[k][l] * c[l][j]
            out[i][j] = out[i][j] - acc
    return out


def _require_even(m: SuperMatrix):
    for i in range(m.size):
        for j in range(m.size):
            e = m.entries[i][j]
            if e.is_zero():
                continue
            row_par = 0 if i < m.p else 1
            col_par = 0 if j < m.p else 1
            if e.parity() != (row_par + col_par) % 2:
                raise ValueError("berezinian is defined for even matrices only")
