"""Integrating an infinitesimal representation triple on a finite space.

Given scalar matrices tau(X) for the basis of a super Lie algebra acting on
a finite component space, the group representation is reconstructed as
rho(g exp(X)) = rho_o(g) exp(tau(X)); the validations and the exactness
checks (homomorphism through the even/odd separation, super-scalar-product
preservation through the binomial cancellation) follow the construction
step by step, with group parameters adjoined as formal generators.
"""

from __future__ import annotations

from .. import liealg, linalg
from ..grassmann import GrassmannElement
from ..supermatrix import SuperMatrix


class InfinitesimalRep:
    """tau: basis name -> scalar matrix, on components with given parities."""

    def __init__(self, algebra, taus, parities, sp_gram, ring, tol=None):
        self.algebra = algebra
        self.taus = dict(taus)
        self.parities = list(parities)
        self.size = len(parities)
        self.sp_gram = [list(map(ring.of, row)) for row in sp_gram]
        self.ring = ring
        self.tol = tol
        missing = set(algebra.names) - set(self.taus)
        if missing:
            raise ValueError(f"tau misses basis elements {sorted(missing)}")
        self.validate()

    # -- validations --------------------------------------------------------

    def validate(self):
        self._check_parities()
        self._check_morphism()
        self._check_graded_skew()

    def _check_parities(self):
        """tau is even: tau(X) must be homogeneous of the parity of X."""
        for name, mat in self.taus.items():
            want = self.algebra.parity(self.algebra.index[name])
            for r in range(self.size):
                for c in range(self.size):
                    if self.ring.is_zero(mat[r][c]):
                        continue
                    if (self.parities[r] + self.parities[c]) % 2 != want:
                        raise ValueError(
                            f"tau({name}) is not homogeneous of parity {want}"
                        )

    def _check_morphism(self):
        """Graded commutators of the tau images match the structure constants."""
        alg, ring = self.algebra, self.ring
        for i, ni in enumerate(alg.names):
            for j, nj in enumerate(alg.names):
                a, b = self.taus[ni], self.taus[nj]
                ab = linalg.mat_mul(a, b, ring)
                ba = linalg.mat_mul(b, a, ring)
                both_odd = alg.parity(i) and alg.parity(j)
                comm = [
                    [
                        x + y if both_odd else x - y
                        for x, y in zip(ra, rb)
                    ]
                    for ra, rb in zip(ab, ba)
                ]
                expected = [[ring.zero] * self.size for _ in range(self.size)]
                for k, cc in alg.c[i][j].items():
                    mk = self.taus[alg.names[k]]
                    coeff = ring.of(cc)
                    expected = [
                        [e + coeff * x for e, x in zip(re, rx)]
                        for re, rx in zip(expected, mk)
                    ]
                for ra, rb in zip(comm, expected):
                    for x, y in zip(ra, rb):
                        if not ring.eq(x, y, self.tol):
                            raise ValueError(
                                f"tau is not a graded Lie algebra morphism "
                                f"on [{ni},{nj}]"
                            )

    def _check_graded_skew(self):
        """A^H S + S A_0 + (C S) A_1 = 0 for every generator image A."""
        ring = self.ring
        s = self.sp_gram
        cs = [
            [(-v if self.parities[r] else v) for v in row]
            for r, row in enumerate(s)
        ]
        for name, mat in self.taus.items():
            a0 = [
                [
                    mat[r][c]
                    if (self.parities[r] + self.parities[c]) % 2 == 0
                    else ring.zero
                    for c in range(self.size)
                ]
                for r in range(self.size)
            ]
            a1 = [
                [
                    mat[r][c]
                    if (self.parities[r] + self.parities[c]) % 2 == 1
                    else ring.zero
                    for c in range(self.size)
                ]
                for r in range(self.size)
            ]
            ah = [
                [ring.conj(mat[c][r]) for c in range(self.size)]
                for r in range(self.size)
            ]
            total = linalg.mat_mul(ah, s, ring)
            total = [
                [x + y for x, y in zip(ra, rb)]
                for ra, rb in zip(total, linalg.mat_mul(s, a0, ring))
            ]
            total = [
                [x + y for x, y in zip(ra, rb)]
                for ra, rb in zip(total, linalg.mat_mul(cs, a1, ring))
            ]
            for row in total:
                for x in row:
                    if not ring.eq(x, ring.zero, self.tol):
                        raise ValueError(
                            f"tau({name}) is not graded skew-symmetric"
                        )

    def check_equivariance(self, rho_o_matrix, ad_images):
        """tau(Ad(g) X) = rho_o(g) tau(X) rho_o(g)^-1 for one body element.

        `ad_images` maps each odd basis name to the coefficient list of
        Ad(g) applied to it.
        """
        ring = self.ring
        rho_inv = linalg.scalar_inv(rho_o_matrix, ring)
        for name, coeffs in ad_images.items():
            lhs = [[ring.zero] * self.size for _ in range(self.size)]
            for base_name, coeff in coeffs.items():
                m = self.taus[base_name]
                c = ring.of(coeff)
                lhs = [
                    [x + c * y for x, y in zip(ra, rb)]
                    for ra, rb in zip(lhs, m)
                ]
            rhs = linalg.mat_mul(
                rho_o_matrix, linalg.mat_mul(self.taus[name], rho_inv, ring), ring
            )
            for ra, rb in zip(lhs, rhs):
                for x, y in zip(ra, rb):
                    if not ring.eq(x, y, self.tol):
                        raise ValueError(f"equivariance fails on {name}")

    # -- the integrated representation ------------------------------------------

    def tau_of(self, elt: liealg.LieElement) -> SuperMatrix:
        """Matrix of tau(Z) for Z with Grassmann coefficients.

        Left coefficients convert to entries with the row-parity
        conjugation, exactly as for matrix realizations of the algebra.
        """
        n, gring = elt.n, elt.ring
        zero = GrassmannElement.zero(n, gring)
        entries = [[zero] * self.size for _ in range(self.size)]
        for b, coeff in enumerate(elt.coeffs):
            if coeff.is_zero():
                continue
            mat = self.taus[self.algebra.names[b]]
            c_even = coeff
            c_odd = coeff.conjugation()
            for r in range(self.size):
                cc = c_odd if self.parities[r] else c_even
                for s in range(self.size):
                    v = mat[r][s]
                    if not self.ring.is_zero(v):
                        entries[r][s] = entries[r][s] + cc * _lift(v, n, gring)
        return SuperMatrix(self.size, 0, entries)

    def exp_tau(self, elt: liealg.LieElement) -> SuperMatrix:
        return self.tau_of(elt).exp_nilpotent()

    def check_homomorphism_via_separation(self, x, y):
        """exp(tau X) exp(tau Y) = exp(tau B0) exp(tau(X + Y + B1)), exactly."""
        b0, b1 = liealg.separate_even_odd(x, y)
        lhs = self.exp_tau(x) * self.exp_tau(y)
        rhs = self.exp_tau(b0) * self.exp_tau(x + y + b1)
        return (lhs - rhs).max_abs()

    def lifted_sp(self, u, v):
        """Extension of the super scalar product to Grassmann-coefficient
        coordinate vectors: sum_rs S_rs C^(p_s)(conj u_r) v_s."""
        sample = u[0]
        n, gring = sample.n, sample.ring
        out = GrassmannElement.zero(n, gring)
        for r, ur in enumerate(u):
            if ur.is_zero():
                continue
            cu = ur.complex_conjugate() if gring.is_complex else ur
            cu_flip = cu.conjugation()
            for s, vs in enumerate(v):
                val = self.sp_gram[r][s]
                if self.ring.is_zero(val) or vs.is_zero():
                    continue
                left = cu_flip if self.parities[s] else cu
                out = out + left * vs * _lift(val, n, gring)
        return out

    def check_sp_preservation(self, x, max_order=None):
        """Binomial-cancellation check that exp(tau X) preserves the form.

        Verifies the moved-power identity
            <tau(X)^a u | tau(X)^b v> = (-1)^a <u | tau(X)^(a+b) v>
        on basis vectors, then the full preservation
            <exp(tau X) u | exp(tau X) v> = <u | v>.
        Returns the max residual (0.0 when exact).
        """
        n, gring = x.n, x.ring
        tau_x = self.tau_of(x)
        order = max_order if max_order is not None else n + 1
        powers = [SuperMatrix.identity(self.size, 0, n, gring)]
        for _ in range(order):
            nxt = powers[-1] * tau_x
            powers.append(nxt)
            if nxt.is_zero():
                break
        residual = 0.0
        basis = []
        for i in range(self.size):
            vec = [GrassmannElement.zero(n, gring)] * self.size
            vec = list(vec)
            vec[i] = GrassmannElement.one(n, gring)
            basis.append(vec)
        cols = lambda m, i: [m.entries[r][i] for r in range(self.size)]
        for a in range(len(powers)):
            for b in range(len(powers) - a):
                sign = -1 if a % 2 else 1
                for i in range(self.size):
                    ua = cols(powers[a], i)
                    for j in range(self.size):
                        vb = cols(powers[b], j)
                        lhs = self.lifted_sp(ua, vb)
                        rhs = self.lifted_sp(
                            basis[i], cols(powers[a + b], j)
                        )
                        if sign < 0:
                            rhs = -rhs
                        residual = max(residual, (lhs - rhs).max_abs())
        e = self.exp_tau(x)
        for i in range(self.size):
            u = cols(e, i)
            for j in range(self.size):
                v = cols(e, j)
                lhs = self.lifted_sp(u, v)
                rhs = self.lifted_sp(basis[i], basis[j])
                residual = max(residual, (lhs - rhs).max_abs())
        return residual


def _lift(value, n, gring):
    try:
        return GrassmannElement.scalar(n, gring, value)
    except TypeError:
        coerced = complex(value) if gring.is_complex else float(value)
        return GrassmannElement.scalar(n, gring, coerced)
