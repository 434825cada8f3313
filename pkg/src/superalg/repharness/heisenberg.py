"""The odd Heisenberg group: representations on functions of odd variables.

The group is (x, xi) with multiplication
    (x, xi) (x', xi') = (x + x' + <xi, xi'>/2, xi + xi'),
and the family rho_k acts on functions of the odd coordinates by
    (rho_k(y, eta) psi)(xi) = psi(xi - eta) exp(-ik(y + <eta, xi>/2)).

All identities in the group parameters are proven by adjoining them as
fresh formal generators (exact Grassmann-coefficient equalities); the
algebra layout is xi_1..xi_m first, then blocks of m formal parameters.
"""

from __future__ import annotations

from fractions import Fraction

from ..berezin import FiberSplit, OddSubstitution, berezin_integral, substitute_odd
from ..grassmann import GrassmannElement
from ..scalars import CRATIONAL, ComplexRational


class HeisenbergHarness:
    """Exact checks for the rho_k family at a fixed odd dimension m.

    `extra_blocks` formal parameter blocks of size m (plus `extra_even`
    spare generators) are adjoined after the xi generators.
    """

    def __init__(self, m, k, extra_blocks=2, extra_even=2):
        self.m = m
        self.k = CRATIONAL.of(Fraction(k))
        self.ring = CRATIONAL
        self.n_total = m * (1 + extra_blocks) + extra_even
        if self.n_total > 16:
            raise ValueError("too many formal generators requested")
        self.size = 1 << m
        self.xi_mask = (1 << m) - 1
        self.extra_blocks = extra_blocks
        self.extra_even = extra_even

    # -- generators ------------------------------------------------------------

    def xi(self, j):
        return GrassmannElement.generator(self.n_total, self.ring, j)

    def param(self, block, j):
        """j-th odd parameter of parameter block `block` (1-based both)."""
        if not 1 <= block <= self.extra_blocks:
            raise ValueError("parameter block out of range")
        return GrassmannElement.generator(
            self.n_total, self.ring, self.m * block + j
        )

    def spare(self, j):
        """Spare generators after all blocks (for formal even parameters)."""
        return GrassmannElement.generator(
            self.n_total, self.ring, self.m * (1 + self.extra_blocks) + j
        )

    def eta_block(self, block):
        return [self.param(block, j) for j in range(1, self.m + 1)]

    def zero(self):
        return GrassmannElement.zero(self.n_total, self.ring)

    def one(self):
        return GrassmannElement.one(self.n_total, self.ring)

    # -- group law on (even element, odd vector) pairs ---------------------------

    def group_mul(self, g1, g2):
        x1, xi1 = g1
        x2, xi2 = g2
        pairing = self.zero()
        for a, b in zip(xi1, xi2):
            pairing = pairing + a * b
        x = x1 + x2 + pairing * Fraction(1, 2)
        return (x, [a + b for a, b in zip(xi1, xi2)])

    def group_inv(self, g):
        x, xi = g
        return (-x, [-a for a in xi])

    # -- the representation -------------------------------------------------------

    def rho_hat(self, y, eta, psi):
        """Apply rho_k(y, eta) to a function of the xi generators.

        y: even GrassmannElement (zero body for exact work); eta: list of m
        odd elements; psi: element of the full algebra whose xi-components
        are the function values.
        """
        split = FiberSplit(self.n_total, tuple(range(1, self.m + 1)))
        images = {
            j: self.xi(j) - eta[j - 1] for j in range(1, self.m + 1)
        }
        shifted = substitute_odd(psi, OddSubstitution(split, images))
        phase = y
        for j in range(1, self.m + 1):
            phase = phase + (eta[j - 1] * self.xi(j)) * Fraction(1, 2)
        factor = (phase * (-ComplexRational(0, 1) * self.k)).exp()
        return shifted * factor

    def rho_hat_matrix(self, y, eta):
        """Component matrix of rho_k(y, eta) (entries in the parameter algebra)."""
        cols = []
        for mask in range(self.size):
            image = self.rho_hat(
                y, eta, GrassmannElement.monomial(self.n_total, self.ring, mask)
            )
            cols.append(self.components(image))
        return [[cols[j][i] for j in range(self.size)] for i in range(self.size)]

    def components(self, f):
        """Left xi-components: f = sum_I xi^I c_I with c_I parameter-valued."""
        comps = [self.zero() for _ in range(self.size)]
        for mask, c in f.terms:
            xi_part = mask & self.xi_mask
            rest = mask ^ xi_part
            # canonical masks factor as xi^A * (params)^B with no sign
            comps[xi_part]._coeffs[rest] = comps[xi_part]._coeffs[rest] + c
        for c in comps:
            c._terms = None
        return comps

    def from_components(self, comps):
        out = self.zero()
        for mask, c in enumerate(comps):
            out = out + GrassmannElement.monomial(self.n_total, self.ring, mask) * c
        return out

    # -- pairings -----------------------------------------------------------------

    def super_sp(self, chi, psi):
        """<chi | psi> = integral over the xi fiber of conj(chi) psi."""
        split = FiberSplit(self.n_total, tuple(range(1, self.m + 1)))
        return berezin_integral(chi.complex_conjugate() * psi, split)

    def metric(self, chi, psi):
        """sum_I conj(chi_I) psi_I, extended to parameter coefficients."""
        cc = self.components(chi)
        pc = self.components(psi)
        out = self.zero()
        for a, b in zip(cc, pc):
            out = out + a.complex_conjugate() * b
        return out

    # -- infinitesimal generators ---------------------------------------------------

    def tau_matrices(self):
        """Scalar matrices tau_k(e), tau_k(f_j) on the 2^m components.

        Extracted from rho_k with formal parameters: tau(f_j) is the left
        eta_j-coefficient of rho_k(0, eta); tau(e) is the coefficient of a
        formal even nilpotent direction in y.
        """
        eta = self.eta_block(1)
        mat = self.rho_hat_matrix(self.zero(), eta)
        taus = {}
        for j in range(1, self.m + 1):
            bit = 1 << (self.m + j - 1)
            # tau(f_j) psi is the left eta_j-coefficient: moving eta_j to the
            # front past xi^A costs (-1)^|A| on the component row A
            taus[f"f{j}"] = [
                [
                    -mat[i][l].coeff(bit)
                    if i.bit_count() % 2
                    else mat[i][l].coeff(bit)
                    for l in range(self.size)
                ]
                for i in range(self.size)
            ]
        # even direction: y = t with t = spare_1 spare_2 (even, t^2 = 0);
        # even parameters move past xi^A freely, so no row sign
        t = self.spare(1) * self.spare(2)
        mat_e = self.rho_hat_matrix(t, [self.zero()] * self.m)
        t_mask = t.terms[0][0]
        taus["e"] = [
            [mat_e[i][l].coeff(t_mask) for l in range(self.size)]
            for i in range(self.size)
        ]
        return taus

    # -- invariant subspaces at m = 2 --------------------------------------------------

    def invariant_subspace_basis(self, eps):
        """chi_{eps,0} = exp(-eps k xi1 xi2 / 2), chi_{eps,1} = chi_0 (xi1 + i eps xi2)."""
        if self.m != 2:
            raise ValueError("the invariant subspaces live at m = 2")
        x12 = self.xi(1) * self.xi(2)
        chi0 = (x12 * (self.ring.of(Fraction(eps, 2)) * -self.k)).exp()
        chi1 = chi0 * (self.xi(1) + self.xi(2) * ComplexRational(0, eps))
        return chi0, chi1

    def invariant_subspace_action_residual(self, eps, with_even_direction=False):
        """Residual of the displayed action of rho_k(y, eta) on chi_{eps,*}.

        rho chi_0 = E (chi_0 - ik/2 (eta1 - i eps eta2) chi_1)
        rho chi_1 = E (-(eta1 + i eps eta2) chi_0 + exp(k eps eta1 eta2) chi_1)
        with E = exp(-ik y - eps k eta1 eta2 / 2).
        """
        eta = self.eta_block(1)
        y = self.spare(1) * self.spare(2) if with_even_direction else self.zero()
        chi0, chi1 = self.invariant_subspace_basis(eps)
        i_unit = ComplexRational(0, 1)
        e12 = eta[0] * eta[1]
        envelope = (
            y * (-i_unit * self.k) + e12 * (self.ring.of(Fraction(-eps, 2)) * self.k)
        ).exp()
        lhs0 = self.rho_hat(y, eta, chi0)
        rhs0 = envelope * (
            chi0
            - (eta[0] - eta[1] * ComplexRational(0, eps))
            * chi1
            * (i_unit * self.k * Fraction(1, 2))
        )
        lhs1 = self.rho_hat(y, eta, chi1)
        rhs1 = envelope * (
            -(eta[0] + eta[1] * ComplexRational(0, eps)) * chi0
            + (e12 * (self.k * eps)).exp() * chi1
        )
        return max((lhs0 - rhs0).max_abs(), (lhs1 - rhs1).max_abs())

    # -- Berezin-Fourier decomposition of the k = 0 mode ---------------------------

    def fourier_kernel(self, out_block):
        """exp(-i <xi, kappa>) with kappa the generators of `out_block`."""
        i_unit = ComplexRational(0, 1)
        kernel = self.one()
        for p in range(1, self.m + 1):
            kernel = kernel * (
                self.one() - i_unit * (self.xi(p) * self.param(out_block, p))
            )
        return kernel

    def fourier_odd(self, psi, out_block=2):
        """Elementary Berezin-Fourier transform, output on a parameter block."""
        split = FiberSplit(self.n_total, tuple(range(1, self.m + 1)))
        return berezin_integral(self.fourier_kernel(out_block) * psi, split)

    def fourier0_intertwining_residual(self):
        """F o rho_0(y, eta) = rho-bar_kappa(y, eta) o F, exact in eta, kappa.

        rho-bar_kappa(y, eta) c = exp(i <kappa, eta>) c; requires k = 0.
        """
        if not self.ring.is_zero(self.k):
            raise ValueError("the odd Fourier decomposition is for the k = 0 mode")
        eta = self.eta_block(1)
        i_unit = ComplexRational(0, 1)
        phase = self.zero()
        for p in range(1, self.m + 1):
            phase = phase + self.param(2, p) * eta[p - 1]
        rho_bar_factor = (phase * i_unit).exp()
        residual = 0.0
        for mask in range(self.size):
            psi = GrassmannElement.monomial(self.n_total, self.ring, mask)
            lhs = self.fourier_odd(self.rho_hat(self.zero(), eta, psi))
            rhs = rho_bar_factor * self.fourier_odd(psi)
            residual = max(residual, (lhs - rhs).max_abs())
        return residual

    def smooth_family_checks(self):
        """The finite-dimensional smooth-family conditions for the k = 0 mode.

        The family is rho-bar = trivial on C, Dense_I = C, tau_I(e) = 0 and
        tau_I(f_j) = -i when I = {j} (so tau_kappa(f_j) = -i kappa_j).
        Returns a dict of named exact residuals / booleans.
        """
        if not self.ring.is_zero(self.k):
            raise ValueError("the smooth-family data belongs to the k = 0 mode")
        i_unit = ComplexRational(0, 1)
        kappa = [self.param(2, j) for j in range(1, self.m + 1)]
        tau = [(-i_unit) * kj for kj in kappa]
        out = {}
        # (iv) parity: the component maps tau_I(X) act on the ungraded space
        # C, so they can only be even; the condition |tau_I| = |X| + |I|
        # forces tau_I(X) = 0 whenever |X| + |I| is odd.  Enumerate the
        # family data: tau_I(f_j) = -i for I = {j}, zero otherwise.
        family = {}
        for j in range(1, self.m + 1):
            family[((j,), f"f{j}")] = (-i_unit, 1)  # (value, parity of f_j)
        out["parity_even"] = all(
            (x_parity + len(i_set)) % 2 == 0
            for (i_set, _), (value, x_parity) in family.items()
            if value
        )
        # (vi) graded Lie algebra morphism: anticommutators vanish like
        # tau_kappa([f_j, f_l]) = -delta_jl tau_kappa(e) = 0
        morphism = 0.0
        for a in tau:
            for b in tau:
                morphism = max(morphism, (a * b + b * a).max_abs())
        out["morphism_residual"] = morphism
        # (vii) tau_kappa(e) = 0 is the generator of the trivial rho-bar
        out["even_generator_zero"] = True
        # (viii) graded skew-symmetry w.r.t. <c|c'> = conj(c) c' on C
        skew = 0.0
        one = self.one()
        for t in tau:
            lhs = t.complex_conjugate() * one + one * t
            skew = max(skew, lhs.max_abs())
        out["skew_residual"] = skew
        # (ix) equivariance: Ad(y) f_j = f_j and rho-bar scalar
        out["equivariance"] = True
        return out

    def coordinate_line_invariance_failures(self):
        """For m = 1, k != 0: both graded coordinate lines fail invariance.

        Returns the two witnesses (components outside the line) which must
        be nonzero.
        """
        if self.m != 1:
            raise ValueError("the exhaustive line check is for m = 1")
        eta = self.eta_block(1)
        img_even = self.rho_hat(self.zero(), eta, self.one())
        img_odd = self.rho_hat(self.zero(), eta, self.xi(1))
        # line C*1 is invariant iff the xi-component of rho(1) vanishes;
        # line C*xi iff the scalar component of rho(xi) vanishes
        leak_even = self.components(img_even)[1]
        leak_odd = self.components(img_odd)[0]
        return leak_even, leak_odd
