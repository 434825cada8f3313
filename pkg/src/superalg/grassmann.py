"""Arithmetic in the Grassmann algebra on n anticommuting generators.

Elements are dense coefficient tables indexed by subsets of {1..n}
(bitmask order: bit j-1 represents the generator with index j), over a
pluggable coefficient ring.  All operations are pure; elements are never
mutated after construction.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from ._backend import collect_terms, gather_terms, inversions, mul_into
from .scalars import CRATIONAL, F64, RATIONAL, ComplexRational, Ring

N_MAX = 16

EVEN = 0
ODD = 1


def mask_of(indices) -> int:
    """Bitmask of a subset of {1..n} given as an iterable of indices."""
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if i < 1 or mask & bit:
            raise ValueError(f"invalid index set {tuple(indices)!r}")
        mask |= bit
    return mask


def indices_of(mask: int) -> tuple:
    """Sorted tuple of indices for a bitmask."""
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _sort_sign(values) -> int:
    """Sign of the permutation that sorts a sequence of distinct values."""
    inv = 0
    for i, a in enumerate(values):
        for b in values[i + 1 :]:
            if a > b:
                inv += 1
    return -1 if inv % 2 else 1


def epsilon_sign(first, second) -> int:
    """Sign (-1)^eps for the reordering of (sorted first, sorted second).

    eps counts the transpositions needed to sort the concatenation of the
    two sorted index sets.  The sets must be disjoint.
    """
    a = first if isinstance(first, int) else mask_of(first)
    b = second if isinstance(second, int) else mask_of(second)
    if a & b:
        raise ValueError("epsilon_sign requires disjoint index sets")
    return -1 if inversions(a, b) & 1 else 1


class GrassmannElement:
    """Element of the Grassmann algebra on n generators over a scalar ring."""

    __slots__ = ("n", "ring", "_coeffs", "_terms")

    def __init__(self, n: int, ring: Ring, coeffs=None, _trusted=False):
        if not 0 <= n <= N_MAX:
            raise ValueError(f"generator count must be in 0..{N_MAX}, got {n}")
        self.n = n
        self.ring = ring
        size = 1 << n
        if coeffs is None:
            self._coeffs = [ring.zero] * size
        elif _trusted:
            self._coeffs = coeffs
        else:
            if len(coeffs) != size:
                raise ValueError(f"expected {size} coefficients, got {len(coeffs)}")
            self._coeffs = [ring.of(c) for c in coeffs]
        self._terms = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n, ring):
        e = cls(n, ring)
        e._terms = []
        return e

    @classmethod
    def scalar(cls, n, ring, value):
        e = cls(n, ring)
        v = ring.of(value)
        e._coeffs[0] = v
        e._terms = [(0, v)] if v else []
        return e

    @classmethod
    def one(cls, n, ring):
        return cls.scalar(n, ring, ring.one)

    @classmethod
    def generator(cls, n, ring, index):
        if not 1 <= index <= n:
            raise ValueError(f"generator index {index} out of range 1..{n}")
        e = cls(n, ring)
        e._coeffs[1 << (index - 1)] = ring.one
        e._terms = [(1 << (index - 1), ring.one)]
        return e

    @classmethod
    def monomial(cls, n, ring, indices, coeff=None):
        e = cls(n, ring)
        mask = indices if isinstance(indices, int) else mask_of(indices)
        if mask >> n:
            raise ValueError(f"index set {indices!r} exceeds n={n}")
        v = ring.one if coeff is None else ring.of(coeff)
        e._coeffs[mask] = v
        e._terms = [(mask, v)] if v else []
        return e

    def _new(self, coeffs):
        return GrassmannElement(self.n, self.ring, coeffs, _trusted=True)

    # -- inspection ------------------------------------------------------

    @property
    def terms(self):
        """Cached list of (mask, coeff) pairs with nonzero coefficient."""
        if self._terms is None:
            self._terms = collect_terms(self._coeffs)
        return self._terms

    def coeff(self, indices):
        mask = indices if isinstance(indices, int) else mask_of(indices)
        return self._coeffs[mask]

    def body(self):
        """Coefficient of the empty monomial (the non-nilpotent part)."""
        return self._coeffs[0]

    def soul(self):
        """The nilpotent part: self minus its body."""
        out = GrassmannElement(self.n, self.ring)
        terms = []
        for m, c in self.terms:
            if m:
                out._coeffs[m] = c
                terms.append((m, c))
        out._terms = terms
        return out

    def is_zero(self):
        return not self.terms

    def even_part(self):
        out = GrassmannElement(self.n, self.ring)
        terms = []
        for m, c in self.terms:
            if m.bit_count() % 2 == 0:
                out._coeffs[m] = c
                terms.append((m, c))
        out._terms = terms
        return out

    def odd_part(self):
        out = GrassmannElement(self.n, self.ring)
        terms = []
        for m, c in self.terms:
            if m.bit_count() % 2 == 1:
                out._coeffs[m] = c
                terms.append((m, c))
        out._terms = terms
        return out

    def parity(self):
        """EVEN or ODD for homogeneous elements, None for mixed or zero."""
        has_even = any(m.bit_count() % 2 == 0 for m, _ in self.terms)
        has_odd = any(m.bit_count() % 2 == 1 for m, _ in self.terms)
        if has_even and has_odd:
            return None
        if has_odd:
            return ODD
        if has_even:
            return EVEN
        return None

    def is_even(self):
        return all(m.bit_count() % 2 == 0 for m, _ in self.terms)

    def is_odd(self):
        return all(m.bit_count() % 2 == 1 for m, _ in self.terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = GrassmannElement(self.n, self.ring)
        coeffs = out._coeffs
        touched = []
        for m, a in self.terms:
            coeffs[m] = a
            touched.append(m)
        for m, b in other.terms:
            coeffs[m] = coeffs[m] + b
            touched.append(m)
        out._terms = gather_terms(coeffs, touched)
        return out

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = GrassmannElement(self.n, self.ring)
        coeffs = out._coeffs
        touched = []
        for m, a in self.terms:
            coeffs[m] = a
            touched.append(m)
        for m, b in other.terms:
            coeffs[m] = coeffs[m] - b
            touched.append(m)
        out._terms = gather_terms(coeffs, touched)
        return out

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        out = GrassmannElement(self.n, self.ring)
        terms = []
        for m, c in self.terms:
            v = -c
            out._coeffs[m] = v
            terms.append((m, v))
        out._terms = terms
        return out

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            if other.n != self.n:
                raise ValueError(
                    f"generator count mismatch: {self.n} vs {other.n}"
                )
            out = [self.ring.zero] * (1 << self.n)
            touched = mul_into(self.terms, other.terms, out)
            result = self._new(out)
            result._terms = gather_terms(out, touched)
            return result
        try:
            c = self.ring.of(other)
        except TypeError:
            return NotImplemented
        if not c:
            return GrassmannElement.zero(self.n, self.ring)
        out = GrassmannElement(self.n, self.ring)
        terms = []
        for m, a in self.terms:
            v = a * c
            if v:
                out._coeffs[m] = v
                terms.append((m, v))
        out._terms = terms
        return out

    def __rmul__(self, other):
        # Scalars commute with everything, so left multiplication by a
        # scalar equals right multiplication.
        return self.__mul__(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are defined")
        result = GrassmannElement.one(self.n, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        """Multiplicative inverse; requires an invertible body."""
        b = self.body()
        if self.ring.is_zero(b):
            raise ZeroDivisionError("Grassmann element with zero body")
        binv = self.ring.one / b
        nil = self.soul() * (-binv)
        result = GrassmannElement.one(self.n, self.ring)
        power = GrassmannElement.one(self.n, self.ring)
        for _ in range(self.n):
            power = power * nil
            if power.is_zero():
                break
            result = result + power
        return result * binv

    def exp(self):
        """Exponential of an even element.

        The nilpotent part is summed exactly (terminating series); a nonzero
        body is only allowed over float rings, where exp(body) scales the
        result.
        """
        if not self.is_even():
            raise ValueError("exp is defined for even elements")
        body = self.body()
        factor = self.ring.one
        if not self.ring.is_zero(body):
            if self.ring.is_exact:
                raise ValueError(
                    "exp of a nonzero body is not exact; use a float ring"
                )
            factor = (
                cmath.exp(body) if self.ring.is_complex else math.exp(body)
            )
        nil = self.soul()
        result = GrassmannElement.one(self.n, self.ring)
        power = GrassmannElement.one(self.n, self.ring)
        kfact = 1
        for k in range(1, self.n + 1):
            power = power * nil
            if power.is_zero():
                break
            kfact *= k
            result = result + power * (self.ring.of(1) / self.ring.of(kfact))
        return result * factor

    def grassmann_abs(self):
        """|x| = |body x| * x / body x, for x with nonzero body."""
        b = self.body()
        if self.ring.is_zero(b):
            raise ZeroDivisionError("absolute value needs a nonzero body")
        if self.ring.is_complex:
            raise ValueError("Grassmann absolute value is defined over real rings")
        scale = abs(b) / b
        return self * scale

    def __eq__(self, other):
        if isinstance(other, GrassmannElement):
            if self.n != other.n or self.ring is not other.ring:
                return False
            if self.ring.is_exact:
                return self._coeffs == other._coeffs
            return all(
                self.ring.eq(a, b) for a, b in zip(self._coeffs, other._coeffs)
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.ring.name, tuple(map(str, self._coeffs))))

    def approx_eq(self, other, tol=None):
        return all(
            self.ring.eq(a, b, tol) for a, b in zip(self._coeffs, other._coeffs)
        )

    def max_abs(self):
        """Largest coefficient magnitude (the residual norm used in checks)."""
        return max((abs(c) for _, c in self.terms), default=0.0)

    def one_norm(self):
        """Sum of coefficient magnitudes; submultiplicative."""
        return sum((abs(c) for _, c in self.terms), 0.0)

    # -- structure maps ----------------------------------------------------

    def conjugation(self):
        """The involution x_even + x_odd -> x_even - x_odd."""
        out = GrassmannElement(self.n, self.ring)
        terms = []
        for m, c in self.terms:
            v = -c if m.bit_count() % 2 else c
            out._coeffs[m] = v
            terms.append((m, v))
        out._terms = terms
        return out

    def conjugation_pow(self, k: int):
        return self.conjugation() if k % 2 else self

    def complex_conjugate(self):
        """Antilinear automorphism fixing every generator.

        Conjugates coefficients only; products of generators are untouched,
        so conj(exp(-ik<eta,xi>/2)) * exp(-ik<eta,xi>/2) = 1 as required by
        the unitarity computations.
        """
        if not self.ring.is_complex:
            raise ValueError("complex_conjugate needs a complex coefficient ring")
        conj = self.ring.conj
        out = GrassmannElement(self.n, self.ring)
        terms = []
        for m, c in self.terms:
            v = conj(c)
            out._coeffs[m] = v
            terms.append((m, v))
        out._terms = terms
        return out

    def adjoin_generators(self, m: int):
        """Embed into the algebra on n+m generators (identity on the first n)."""
        if m < 0 or self.n + m > N_MAX:
            raise ValueError(
                f"cannot adjoin {m} generators to n={self.n} (cap {N_MAX})"
            )
        out = GrassmannElement(self.n + m, self.ring)
        for mask, c in self.terms:
            out._coeffs[mask] = c
        out._terms = list(self.terms)
        return out

    def rename_generators(self, mapping: dict):
        """Relabel generators by an injective map {old index: new index}.

        Unmapped generators keep their index; the target indices must be
        distinct and within range.  Signs follow from re-sorting monomials.
        """
        table = {i: mapping.get(i, i) for i in range(1, self.n + 1)}
        if len(set(table.values())) != self.n or not all(
            1 <= j <= self.n for j in table.values()
        ):
            raise ValueError(f"not a permutation of 1..{self.n}: {mapping!r}")
        out = GrassmannElement(self.n, self.ring)
        touched = []
        for mask, c in self.terms:
            new_indices = [table[i] for i in indices_of(mask)]
            sign = _sort_sign(new_indices)
            new_mask = mask_of(new_indices)
            out._coeffs[new_mask] = out._coeffs[new_mask] + (
                c if sign > 0 else -c
            )
            touched.append(new_mask)
        out._terms = gather_terms(out._coeffs, touched)
        return out

    def derivative(self, index: int):
        """Odd partial derivative d/d(xi_index).

        On a canonical monomial containing the generator at (1-based)
        position p among its factors the result carries the sign (-1)^(p-1);
        monomials without the generator map to zero.  This is the sign
        convention under which Inv_j = xi_j + i*d_j satisfies
        Inv_j o Inv_j = i*id.
        """
        if not 1 <= index <= self.n:
            raise ValueError(f"generator index {index} out of range 1..{self.n}")
        bit = 1 << (index - 1)
        out = GrassmannElement(self.n, self.ring)
        touched = []
        for mask, c in self.terms:
            if not mask & bit:
                continue
            below = (mask & (bit - 1)).bit_count()
            out._coeffs[mask ^ bit] = -c if below % 2 else c
            touched.append(mask ^ bit)
        out._terms = gather_terms(out._coeffs, touched)
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self):
        terms = []
        for mask, c in self.terms:
            entry = {"index": list(indices_of(mask))}
            if self.ring is RATIONAL:
                entry["re"] = str(c)
            elif self.ring is CRATIONAL:
                entry["re"] = str(c.re)
                entry["im"] = str(c.im)
            elif self.ring is F64:
                entry["re"] = c
            else:
                entry["re"] = c.real
                entry["im"] = c.imag
            terms.append(entry)
        return {"n": self.n, "terms": terms}

    @classmethod
    def from_json(cls, data, ring):
        e = cls(data["n"], ring)
        for entry in data["terms"]:
            mask = mask_of(entry["index"])
            if mask >> e.n:
                raise ValueError(f"index set {entry['index']} exceeds n={e.n}")
            re = entry["re"]
            im = entry.get("im", 0)
            if ring is RATIONAL:
                c = Fraction(re)
            elif ring is CRATIONAL:
                c = ComplexRational(Fraction(re), Fraction(im))
            elif ring is F64:
                c = float(re)
            else:
                c = complex(float(re), float(im))
            e._coeffs[mask] = c
        e._terms = None
        return e

    # -- misc ----------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GrassmannElement):
            if other.n != self.n:
                raise ValueError(
                    f"generator count mismatch: {self.n} vs {other.n}"
                )
            return other
        try:
            return GrassmannElement.scalar(self.n, self.ring, other)
        except TypeError:
            return NotImplemented

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask, c in self.terms:
            mono = "*".join(f"th{i}" for i in indices_of(mask)) or "1"
            parts.append(f"({c})*{mono}" if mask else f"({c})")
        return " + ".join(parts)
