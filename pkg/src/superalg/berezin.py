"""Berezin integration, odd substitution and the change-of-variables identity.

The generator set {1..n} is split into parameter and fiber generators;
integration extracts the coefficient of the full fiber monomial while
retaining the parameter generators, following the convention that the
fiber monomial stands to the left of the parameter monomial.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from ._backend import gather_terms
from .grassmann import GrassmannElement, indices_of, inversions, mask_of
from .supermatrix import grassmann_det


@dataclass(frozen=True)
class FiberSplit:
    """Disjoint partition of the generators into parameters and fiber."""

    n: int
    fiber: tuple

    def __post_init__(self):
        mask = mask_of(self.fiber)
        if mask >> self.n:
            raise ValueError(f"fiber indices {self.fiber} exceed n={self.n}")
        object.__setattr__(self, "fiber", tuple(sorted(self.fiber)))

    @classmethod
    def full(cls, n):
        return cls(n, tuple(range(1, n + 1)))

    @property
    def fiber_mask(self):
        return mask_of(self.fiber)

    @property
    def parameter_mask(self):
        return ((1 << self.n) - 1) ^ self.fiber_mask

    @property
    def parameters(self):
        return indices_of(self.parameter_mask)


class OddSubstitution:
    """Replacement of each fiber generator by an odd element.

    The images may involve both parameter and fiber generators; the body
    Jacobian d(image_i)/d(xi_j) must be invertible.
    """

    def __init__(self, split: FiberSplit, images: dict):
        if set(images) != set(split.fiber):
            raise ValueError(
                f"images must cover exactly the fiber generators {split.fiber}"
            )
        self.split = split
        self.images = dict(images)
        first = next(iter(images.values()))
        self.n = first.n
        self.ring = first.ring
        if self.n != split.n:
            raise ValueError("image algebra size differs from the split")
        for j, img in self.images.items():
            if img.n != self.n or img.ring is not self.ring:
                raise ValueError("images must share one algebra and ring")
            if not img.is_odd():
                raise ValueError(f"image of generator {j} is not odd")
        if not linalg.is_invertible(self.body_jacobian(), self.ring):
            raise ValueError("body Jacobian of the substitution is singular")

    def body_jacobian(self):
        """Matrix of the linear parts d(image_i)/d(xi_j) on fiber generators."""
        fiber = self.split.fiber
        return [
            [self.images[i].coeff((j,)) for j in fiber]
            for i in fiber
        ]

    def jacobian_matrix(self):
        """Full odd Jacobian d(image_i)/d(xi_j) as even GrassmannElements."""
        fiber = self.split.fiber
        return [
            [self.images[i].derivative(j) for j in fiber]
            for i in fiber
        ]

    @classmethod
    def linear(cls, split: FiberSplit, matrix, ring, n=None):
        """Substitution xi_i -> sum_j T[i][j] xi_j over the fiber generators."""
        n = split.n if n is None else n
        fiber = split.fiber
        images = {}
        for row, i in enumerate(fiber):
            img = GrassmannElement.zero(n, ring)
            for col, j in enumerate(fiber):
                img = img + GrassmannElement.monomial(n, ring, (j,), matrix[row][col])
            images[i] = img
        return cls(split, images)

    @classmethod
    def identity(cls, split: FiberSplit, ring):
        return cls(
            split,
            {
                j: GrassmannElement.generator(split.n, ring, j)
                for j in split.fiber
            },
        )


def berezin_integral(f: GrassmannElement, split: FiberSplit) -> GrassmannElement:
    """Integrate out the fiber generators.

    Writing f = sum over fiber sets I and parameter sets J of
    xi^I sigma^J f_IJ, the result is sum_J sigma^J f_(full fiber)J.
    """
    if f.n != split.n:
        raise ValueError("element and split disagree on the generator count")
    fiber_mask = split.fiber_mask
    out = GrassmannElement.zero(f.n, f.ring)
    touched = []
    for mask, c in f.terms:
        if mask & fiber_mask != fiber_mask:
            continue
        param_part = mask ^ fiber_mask
        sign = -1 if inversions(fiber_mask, param_part) & 1 else 1
        out._coeffs[param_part] = out._coeffs[param_part] + (c if sign > 0 else -c)
        touched.append(param_part)
    out._terms = gather_terms(out._coeffs, touched)
    return out


def substitute_odd(f: GrassmannElement, sub: OddSubstitution) -> GrassmannElement:
    """Apply the substitution to every fiber generator and expand.

    A ring homomorphism on the full algebra: parameter generators are kept,
    fiber generators are replaced by their (odd) images.
    """
    if f.n != sub.n:
        raise ValueError("element and substitution disagree on the generator count")
    n, ring = f.n, f.ring
    fiber_mask = sub.split.fiber_mask
    out = GrassmannElement.zero(n, ring)
    cache = {}
    for mask, c in f.terms:
        factor = cache.get(mask)
        if factor is None:
            factor = GrassmannElement.one(n, ring)
            for i in indices_of(mask):
                gen = (
                    sub.images[i]
                    if (1 << (i - 1)) & fiber_mask
                    else GrassmannElement.generator(n, ring, i)
                )
                factor = factor * gen
            cache[mask] = factor
        out = out + factor * c
    return out


def fiber_jacobian_piber(sub: OddSubstitution) -> GrassmannElement:
    """piBer of the tangent map of a purely odd fiber change: Det(J)^-1."""
    jac = sub.jacobian_matrix()
    det = grassmann_det(jac, sub.n, sub.ring)
    if sub.ring.is_zero(det.body()):
        raise ZeroDivisionError("odd Jacobian has a singular body determinant")
    return det.inverse()


def change_of_variables_residual(
    f: GrassmannElement, sub: OddSubstitution, split: FiberSplit
) -> GrassmannElement:
    """LHS - RHS of the fibered change-of-variables identity (must be 0).

    LHS integrates f(Phi(.)) * piBer(T Phi) over the fiber; RHS integrates
    f itself.
    """
    if split != sub.split:
        raise ValueError("substitution and integral use different splits")
    transformed = substitute_odd(f, sub) * fiber_jacobian_piber(sub)
    lhs = berezin_integral(transformed, split)
    rhs = berezin_integral(f, split)
    return lhs - rhs
