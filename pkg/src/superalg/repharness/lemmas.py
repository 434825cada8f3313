"""Exponential-splitting identities, checked as exact matrix identities.

For X even (with nilpotent coefficients so every series terminates), Y an
odd basis vector and tau a formal odd parameter:

    exp(X + tau Y) = exp(X) exp(tau f(-ad X) Y)
                   = exp(tau f(ad X) Y) exp(X)
    exp(X) exp(tau Y) = exp(X + tau [X,Y]/2 + tau b(ad X) Y)
                      = exp(tau h(ad X) Y) exp(X + tau b+(ad X) Y)
    exp(tau Y) exp(X) = exp(X - tau [X,Y]/2 + tau b(ad X) Y)
                      = exp(-tau h(ad X) Y) exp(X + tau b-(ad X) Y)
"""

from __future__ import annotations

from fractions import Fraction

from .. import liealg


def six_identities_residual(rep: liealg.MatrixRep, x, y, tau):
    """Max coefficient residual over the six identities (0 when exact)."""
    ring = x.ring
    half = ring.of(Fraction(1, 2))
    f_series = liealg.SeriesSpec("f")
    h_series = liealg.SeriesSpec("h")
    b_series = liealg.SeriesSpec("b")
    bp_series = liealg.SeriesSpec("b+")
    bm_series = liealg.SeriesSpec("b-")
    tau_y = y.scale(tau)
    bxy = liealg.bracket(x, y)
    residual = 0.0

    def diff(a, b):
        return (a - b).max_abs()

    lhs_sum = rep.exp(x + tau_y)
    residual = max(
        residual,
        diff(
            lhs_sum,
            rep.exp(x)
            * rep.exp(
                liealg.series_of_ad(f_series, x, y, negate_argument=True).scale(tau)
            ),
        ),
    )
    residual = max(
        residual,
        diff(
            lhs_sum,
            rep.exp(liealg.series_of_ad(f_series, x, y).scale(tau)) * rep.exp(x),
        ),
    )
    lhs_right = rep.exp(x) * rep.exp(tau_y)
    residual = max(
        residual,
        diff(
            lhs_right,
            rep.exp(
                x
                + bxy.scale(tau * half)
                + liealg.series_of_ad(b_series, x, y).scale(tau)
            ),
        ),
    )
    residual = max(
        residual,
        diff(
            lhs_right,
            rep.exp(liealg.series_of_ad(h_series, x, y).scale(tau))
            * rep.exp(x + liealg.series_of_ad(bp_series, x, y).scale(tau)),
        ),
    )
    lhs_left = rep.exp(tau_y) * rep.exp(x)
    residual = max(
        residual,
        diff(
            lhs_left,
            rep.exp(
                x
                - bxy.scale(tau * half)
                + liealg.series_of_ad(b_series, x, y).scale(tau)
            ),
        ),
    )
    residual = max(
        residual,
        diff(
            lhs_left,
            rep.exp(liealg.series_of_ad(h_series, x, y).scale(-tau))
            * rep.exp(x + liealg.series_of_ad(bm_series, x, y).scale(tau)),
        ),
    )
    return residual


def left_translation_even_direction_residual(rep: liealg.MatrixRep, v, x, t):
    """exp(v) exp(t X) = exp(t X) exp(v + t [v, X]) for t^2 = 0, exactly."""
    lhs = rep.exp(v) * rep.exp(x.scale(t))
    rhs = rep.exp(x.scale(t)) * rep.exp(v + liealg.bracket(v, x).scale(t))
    return (lhs - rhs).max_abs()
