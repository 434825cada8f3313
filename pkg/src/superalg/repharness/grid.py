"""Sampled L^2(R) factor for the non-compact parts of the group checks.

Functions live on a uniform periodic grid over [-L, L); grid-aligned
translations are index rolls (exactly unitary permutations), derivatives
are spectral, and the quadrature weight is the grid spacing (trapezoid on
a periodic window; the test functions are compactly supported packets).
Odd directions are handled exactly: group parameters are formal odd
generators and the nilpotent Taylor expansion of an even shift terminates.
"""

from __future__ import annotations

import math

import numpy as np

from ..grassmann import GrassmannElement, indices_of, inversions
from ..scalars import CF64


class Grid1D:
    def __init__(self, length=20.0, points=4096):
        self.L = float(length)
        self.N = int(points)
        self.dx = 2 * self.L / self.N
        self.x = -self.L + self.dx * np.arange(self.N)
        k = 2 * np.pi * np.fft.fftfreq(self.N, d=self.dx)
        if self.N % 2 == 0:
            k[self.N // 2] = 0.0  # drop the Nyquist mode from derivatives
        self.k = k

    def derivative(self, values):
        return np.fft.ifft(1j * self.k * np.fft.fft(values))

    def translate(self, values, steps):
        return np.roll(values, steps)

    def pair(self, a, b):
        """Trapezoid (periodic) pairing dx * sum(conj(a) b)."""
        return self.dx * np.sum(np.conj(a) * b)

    def norm_sq(self, a):
        return float(np.real(self.pair(a, a)))

    @property
    def k_full(self):
        """All frequencies including Nyquist (for diagonal Fourier factors)."""
        return 2 * np.pi * np.fft.fftfreq(self.N, d=self.dx)

    def gaussian_packet(self, center=0.0, width=1.0, momentum=0.0):
        g = np.exp(-((self.x - center) ** 2) / (2 * width**2)) * np.exp(
            1j * momentum * self.x
        )
        return g.astype(complex)

    def gaussian_packet_derivative(self, center=0.0, width=1.0, momentum=0.0):
        g = self.gaussian_packet(center, width, momentum)
        return (-(self.x - center) / width**2 + 1j * momentum) * g

    def hermite_functions(self, count):
        """Orthonormal Hermite functions by the stable recurrence."""
        out = [np.pi**-0.25 * np.exp(-self.x**2 / 2).astype(complex)]
        if count > 1:
            out.append(np.sqrt(2.0) * self.x * out[0])
        for k in range(2, count):
            out.append(
                np.sqrt(2.0 / k) * self.x * out[k - 1]
                - np.sqrt((k - 1) / k) * out[k - 2]
            )
        return out


class GridSuperFn:
    """Grid function with Grassmann structure: {mask: complex array(N)}.

    Masks index monomials in the generators; which generators are odd
    coordinates and which are formal parameters is decided by the harness.
    """

    __slots__ = ("grid", "comps")

    def __init__(self, grid, comps=None):
        self.grid = grid
        self.comps = dict(comps or {})

    def copy(self):
        return GridSuperFn(self.grid, {m: a.copy() for m, a in self.comps.items()})

    def __add__(self, other):
        out = {m: a.copy() for m, a in self.comps.items()}
        for m, a in other.comps.items():
            out[m] = out[m] + a if m in out else a.copy()
        return GridSuperFn(self.grid, out)

    def __sub__(self, other):
        out = {m: a.copy() for m, a in self.comps.items()}
        for m, a in other.comps.items():
            out[m] = out[m] - a if m in out else -a
        return GridSuperFn(self.grid, out)

    def scale(self, factor):
        return GridSuperFn(self.grid, {m: factor * a for m, a in self.comps.items()})

    def conj(self):
        """Complex conjugation of coefficients; generators are fixed."""
        return GridSuperFn(self.grid, {m: np.conj(a) for m, a in self.comps.items()})

    def map_arrays(self, fn):
        return GridSuperFn(self.grid, {m: fn(a) for m, a in self.comps.items()})

    def mul_grassmann(self, element: GrassmannElement):
        """Left multiplication by a constant Grassmann element."""
        out = {}
        for me, ce in element.terms:
            ce = complex(ce)
            for mf, arr in self.comps.items():
                if me & mf:
                    continue
                sign = -1.0 if inversions(me, mf) & 1 else 1.0
                key = me | mf
                term = (sign * ce) * arr
                out[key] = out[key] + term if key in out else term
        return GridSuperFn(self.grid, out)

    def max_abs(self):
        return max(
            (float(np.max(np.abs(a))) for a in self.comps.values()), default=0.0
        )


def berezin_over(fn: GridSuperFn, fiber_mask: int) -> dict:
    """Fiberwise Berezin integral: {parameter mask: complex array}."""
    out = {}
    for mask, arr in fn.comps.items():
        if mask & fiber_mask != fiber_mask:
            continue
        rest = mask ^ fiber_mask
        sign = -1.0 if inversions(fiber_mask, rest) & 1 else 1.0
        term = sign * arr
        out[rest] = out[rest] + term if rest in out else term
    return out


class HeisenbergGridHarness:
    """Left-regular representation of the odd Heisenberg group on the grid.

    Generators: xi_1..xi_m are the odd coordinates, the next m are the
    formal group parameters eta_1..eta_m.
    """

    def __init__(self, grid: Grid1D, m=1, derivative="spectral"):
        self.grid = grid
        self.m = m
        self.n_gen = 2 * m
        self.xi_mask = (1 << m) - 1
        self.derivative_mode = derivative
        # expansion of (xi_j - eta_j)-substituted monomials, precomputed at
        # scalar level
        self._subst_cache = {}

    def xi_element(self, j):
        return GrassmannElement.generator(self.n_gen, CF64, j)

    def eta_element(self, j):
        return GrassmannElement.generator(self.n_gen, CF64, self.m + j)

    def _substituted_monomial(self, mask):
        """xi^A eta^B with every xi_j replaced by xi_j - eta_j."""
        if mask not in self._subst_cache:
            out = GrassmannElement.one(self.n_gen, CF64)
            for idx in indices_of(mask):
                if idx <= self.m:
                    out = out * (self.xi_element(idx) - self.eta_element(idx))
                else:
                    out = out * GrassmannElement.generator(self.n_gen, CF64, idx)
            self._subst_cache[mask] = out
        return self._subst_cache[mask]

    def _derivative(self, arr):
        if self.derivative_mode == "spectral":
            return self.grid.derivative(arr)
        rolled_back = np.roll(arr, -1)
        rolled_fwd = np.roll(arr, 1)
        return (rolled_back - rolled_fwd) / (2 * self.grid.dx)

    def pairing_scalar(self, u: GrassmannElement):
        """<eta, xi>/2 = sum eta_j xi_j / 2 shifted by u (u usually zero)."""
        out = GrassmannElement.zero(self.n_gen, CF64)
        for j in range(1, self.m + 1):
            out = out + self.eta_element(j) * self.xi_element(j)
        return out * 0.5 + u

    def rho(self, steps: int, psi: GridSuperFn) -> GridSuperFn:
        """rho(y, eta) psi with y = steps * dx and formal eta.

        psi(x - y - <eta, xi>/2, xi - eta): odd substitution, grid roll,
        then the terminating nilpotent Taylor expansion with spectral (or
        central-difference) derivatives.
        """
        grid = self.grid
        shifted = GridSuperFn(grid)
        for mask, arr in psi.comps.items():
            expansion = self._substituted_monomial(mask)
            moved = grid.translate(arr, steps)
            for me, ce in expansion.terms:
                term = complex(ce) * moved
                shifted.comps[me] = (
                    shifted.comps[me] + term if me in shifted.comps else term
                )
        # nilpotent Taylor: f(x + u) = sum_r u^r/r! f^(r), u = -<eta, xi>/2
        u = self.pairing_scalar(GrassmannElement.zero(self.n_gen, CF64)) * (-1.0)
        result = shifted.copy()
        current = shifted
        u_power = GrassmannElement.one(self.n_gen, CF64)
        for r in range(1, self.m + 1):
            current = current.map_arrays(self._derivative)
            u_power = u_power * u
            if u_power.is_zero():
                break
            result = result + current.mul_grassmann(
                u_power * (1.0 / math.factorial(r))
            )
        return result

    def rho_hat_fourier_side(self, steps: int, k_values, psi_hat: GridSuperFn):
        """rho_k(y, eta) on the Fourier side, diagonal in the frequency k.

        psi_hat(k, xi - eta) exp(-ik(y + <eta, xi>/2)) with k the array of
        grid frequencies.
        """
        grid = self.grid
        y = steps * grid.dx
        shifted = GridSuperFn(grid)
        for mask, arr in psi_hat.comps.items():
            expansion = self._substituted_monomial(mask)
            for me, ce in expansion.terms:
                term = complex(ce) * arr
                shifted.comps[me] = (
                    shifted.comps[me] + term if me in shifted.comps else term
                )
        u = self.pairing_scalar(GrassmannElement.zero(self.n_gen, CF64))
        phase = np.exp(-1j * k_values * y)
        result = GridSuperFn(grid)
        # assemble exp(-ik(y + u)) = phase * sum_r (-ik)^r u^r / r!
        u_power = GrassmannElement.one(self.n_gen, CF64)
        terms = [
            (GrassmannElement.one(self.n_gen, CF64), phase)
        ]
        for r in range(1, self.m + 1):
            u_power = u_power * u
            if u_power.is_zero():
                break
            terms.append(
                (u_power, phase * (-1j * k_values) ** r / math.factorial(r))
            )
        for mask, arr in shifted.comps.items():
            for elem, factor in terms:
                for me, ce in elem.terms:
                    if me & mask:
                        continue
                    sign = -1.0 if inversions(me, mask) & 1 else 1.0
                    key = me | mask
                    term = (sign * complex(ce)) * (factor * arr)
                    result.comps[key] = (
                        result.comps[key] + term if key in result.comps else term
                    )
        return result

    def super_sp(self, chi: GridSuperFn, psi: GridSuperFn) -> dict:
        """<chi | psi> = integral dx integral d xi conj(chi) psi.

        Returns {parameter mask: complex} over the eta generators.
        """
        product = GridSuperFn(self.grid)
        conj_chi = chi.conj()
        for ma, aa in conj_chi.comps.items():
            for mb, ab in psi.comps.items():
                if ma & mb:
                    continue
                sign = -1.0 if inversions(ma, mb) & 1 else 1.0
                key = ma | mb
                term = sign * (aa * ab)
                product.comps[key] = (
                    product.comps[key] + term if key in product.comps else term
                )
        fiber = berezin_over(product, self.xi_mask)
        return {m: self.grid.dx * np.sum(a) for m, a in fiber.items()}

    def metric(self, chi: GridSuperFn, psi: GridSuperFn) -> dict:
        """sum over xi-components of <<chi_A, psi_A>>, eta-valued."""
        out = {}
        for ma, aa in chi.comps.items():
            for mb, ab in psi.comps.items():
                if (ma & self.xi_mask) != (mb & self.xi_mask):
                    continue
                pa, pb = ma ^ (ma & self.xi_mask), mb ^ (mb & self.xi_mask)
                if pa & pb:
                    continue
                sign = -1.0 if inversions(pa, pb) & 1 else 1.0
                key = pa | pb
                val = sign * self.grid.dx * np.sum(np.conj(aa) * ab)
                out[key] = out.get(key, 0.0) + val
        return out

    # -- checks -------------------------------------------------------------------

    def translation_unitarity_exact(self, psi_arrays, steps):
        """Permutations are exactly unitary: roll back recovers the values
        bitwise and the multiset of samples is unchanged."""
        for arr in psi_arrays:
            moved = self.grid.translate(arr, steps)
            if not np.array_equal(self.grid.translate(moved, -steps), arr):
                return False
            if not np.array_equal(
                np.sort_complex(moved), np.sort_complex(arr)
            ):
                return False
        return True

    def super_sp_invariance_residual(self, chi, psi, steps):
        before = self.super_sp(chi, psi)
        after = self.super_sp(self.rho(steps, chi), self.rho(steps, psi))
        keys = set(before) | set(after)
        return max(
            abs(after.get(k, 0.0) - before.get(k, 0.0)) for k in keys
        )

    def dft_conjugation_residual(self, psi, steps):
        """max |FFT(rho psi) - rho_hat(FFT psi)| over components."""
        transformed = psi.map_arrays(np.fft.fft)
        lhs = self.rho(steps, psi).map_arrays(np.fft.fft)
        rhs = self.rho_hat_fourier_side(steps, self.grid.k_full, transformed)
        return (lhs - rhs).max_abs() / max(transformed.max_abs(), 1.0)

    def tau_e_skew_residual(self, chi_arr, psi_arr):
        """|<D chi, psi> + <chi, D psi>| with the spectral derivative."""
        d_chi = self._derivative(chi_arr)
        d_psi = self._derivative(psi_arr)
        return abs(self.grid.pair(d_chi, psi_arr) + self.grid.pair(chi_arr, d_psi))

    def hermite_stability(self, count=6, orders=6, tail_fraction=0.1, tol=1e-8):
        """Iterated generators keep Hermite functions inside the window.

        Applies tau(e) = -d/dx and tau(f_j) = -d_(xi_j) - xi_j d/dx / 2 up
        to the given order; every iterate must keep the relative mass in
        the outer window fraction below `tol`.
        """
        grid = self.grid
        edge = int(grid.N * tail_fraction / 2)
        window = np.ones(grid.N)
        window[:edge] = 0.0
        window[-edge:] = 0.0

        def tail_ok(fn: GridSuperFn):
            for arr in fn.comps.values():
                total = grid.norm_sq(arr)
                if total == 0.0:
                    continue
                inside = float(np.real(grid.dx * np.sum(window * np.abs(arr) ** 2)))
                if (total - inside) / total > tol:
                    return False
            return True

        herm = grid.hermite_functions(count)
        for h in herm:
            state = GridSuperFn(grid, {0: h.astype(complex)})
            for order in range(orders):
                gen = order % (self.m + 1)
                if gen == 0:
                    state = state.map_arrays(lambda a: -self._derivative(a))
                else:
                    state = self._tau_f(gen, state)
                if not tail_ok(state):
                    return False
        return True

    def _tau_f(self, j, fn: GridSuperFn) -> GridSuperFn:
        """tau(f_j) = -d_(xi_j) - xi_j d/dx / 2 on grid superfunctions."""
        bit = 1 << (j - 1)
        out = GridSuperFn(self.grid)
        for mask, arr in fn.comps.items():
            if mask & bit:
                below = (mask & (bit - 1)).bit_count()
                sign = -1.0 if below % 2 else 1.0
                key = mask ^ bit
                term = -sign * arr
                out.comps[key] = out.comps[key] + term if key in out.comps else term
        half_d = fn.map_arrays(lambda a: -0.5 * self._derivative(a))
        out = out + half_d.mul_grassmann(self.xi_element(j))
        return out


def refinement_ratio(length, coarse_points, packets, halvings=1):
    """Quadrature floor of the tau(e)-skew residual under grid halving.

    Uses analytically differentiated Gaussian packets so the residual is
    pure quadrature error; returns the list of residuals for the coarse
    grid and each refinement.
    """
    out = []
    points = coarse_points
    for _ in range(halvings + 1):
        grid = Grid1D(length, points)
        (c1, w1, v1), (c2, w2, v2) = packets
        chi = grid.gaussian_packet(c1, w1, v1)
        psi = grid.gaussian_packet(c2, w2, v2)
        d_chi = grid.gaussian_packet_derivative(c1, w1, v1)
        d_psi = grid.gaussian_packet_derivative(c2, w2, v2)
        out.append(abs(grid.pair(d_chi, psi) + grid.pair(chi, d_psi)))
        points *= 2
    return out
