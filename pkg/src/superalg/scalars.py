"""Coefficient rings for the Grassmann algebra.

Four rings are supported: exact rationals, exact complex rationals, 64-bit
floats and 64-bit complex floats.  Exact rings compare with exact equality;
float rings carry a tolerance that is used only in comparisons, never in
arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction


class ComplexRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = _as_crational(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_crational(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_crational(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _as_crational(other)
        if other is NotImplemented:
            return NotImplemented
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_crational(other)
        if other is NotImplemented:
            return NotImplemented
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero ComplexRational")
        return ComplexRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = _as_crational(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        other = _as_crational(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return ComplexRational(self.re, -self.im)

    def __abs__(self):
        # Exact only when the modulus is rational; used for norms/printing.
        return math.sqrt(float(self.re * self.re + self.im * self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _as_crational(value):
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, (int, Fraction)):
        return ComplexRational(value)
    return NotImplemented


class Ring:
    """Descriptor for a coefficient ring (factory + comparisons)."""

    def __init__(self, name, *, exact, complex_, zero, one, of, conj, default_tol):
        self.name = name
        self.is_exact = exact
        self.is_complex = complex_
        self.zero = zero
        self.one = one
        self.of = of
        self.conj = conj
        self.default_tol = default_tol

    def eq(self, a, b, tol=None):
        if self.is_exact:
            return a == b
        if tol is None:
            tol = self.default_tol
        scale = max(abs(a), abs(b), 1.0)
        return abs(a - b) <= tol * scale

    def is_zero(self, a):
        return not a

    def abs(self, a):
        return abs(a)

    def __repr__(self):
        return f"Ring({self.name})"


def _rational_of(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    raise TypeError(f"cannot coerce {value!r} into the rational ring")


def _crational_of(value):
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, complex):
        return ComplexRational(_rational_of(value.real), _rational_of(value.imag))
    return ComplexRational(_rational_of(value))


RATIONAL = Ring(
    "rational",
    exact=True,
    complex_=False,
    zero=Fraction(0),
    one=Fraction(1),
    of=_rational_of,
    conj=lambda c: c,
    default_tol=0,
)

CRATIONAL = Ring(
    "crational",
    exact=True,
    complex_=True,
    zero=ComplexRational(0),
    one=ComplexRational(1),
    of=_crational_of,
    conj=lambda c: c.conjugate(),
    default_tol=0,
)

F64 = Ring(
    "f64",
    exact=False,
    complex_=False,
    zero=0.0,
    one=1.0,
    of=float,
    conj=lambda c: c,
    default_tol=1e-12,
)

CF64 = Ring(
    "cf64",
    exact=False,
    complex_=True,
    zero=complex(0),
    one=complex(1),
    of=complex,
    conj=lambda c: c.conjugate(),
    default_tol=1e-12,
)

RINGS = {r.name: r for r in (RATIONAL, CRATIONAL, F64, CF64)}

I_CRATIONAL = ComplexRational(0, 1)


def imaginary_unit(ring):
    """The scalar i for a complex ring."""
    if not ring.is_complex:
        raise ValueError(f"ring {ring.name} has no imaginary unit")
    return I_CRATIONAL if ring is CRATIONAL else 1j


def one_or_i(ring, k: int):
    """1 if k is even, i if k is odd; equals (-1)^(k(k-1)/2) * i^k."""
    return imaginary_unit(ring) if k % 2 else ring.one


def one_or_minus_i(ring, k: int):
    """1 if k is even, -i if k is odd; the conjugate of one_or_i."""
    return -imaginary_unit(ring) if k % 2 else ring.one
