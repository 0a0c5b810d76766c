"""Short-period corrections of the elimination of the parallax.

A polar-nodal state ``x`` maps to prime (intermediary) variables ``x'``:

    direct:   x  = x' + eps * D(x')                       (first order only)
    inverse:  x' = x  - eps * D(x) + eps**2 / 2 * d2(x)   (d2 only for r, Theta)

with ``eps = -(alpha/p)**2 J2 / 2`` taken from the chart the corrections are
evaluated in. Both ``apply_*`` functions evaluate the corrections at the state
they receive, so the chart discipline is carried by which function is called.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .core import EARTH, GeoModel, PolarNodal, aux_quantities


class PNDeltas(NamedTuple):
    """Corrections on (r, theta, nu, R, Theta, N); ``N`` is always 0."""

    r: float
    theta: float
    nu: float
    R: float
    Theta: float
    N: float


class SecondOrder(NamedTuple):
    """Second-order inverse corrections d2r, d2R, d2Theta (d2R for diagnostics)."""

    r: float
    R: float
    Theta: float


def first_order_corrections(pn: PolarNodal, geo: GeoModel = EARTH) -> PNDeltas:
    """First-order corrections D(pn), not yet scaled by eps."""
    r, theta, _, _, Theta, _ = pn
    aq = aux_quantities(pn, geo)
    c, s, kappa, sigma, p = aq.c, aq.s, aq.kappa, aq.sigma, aq.p
    c2, s2 = c * c, s * s
    sin2t, cos2t = math.sin(2.0 * theta), math.cos(2.0 * theta)
    k15 = 1.5 + 2.0 * kappa
    return PNDeltas(
        p * (1.0 - 1.5 * s2 - 0.5 * s2 * cos2t),
        (1.0 - 6.0 * c2 + (1.0 - 2.0 * c2) * cos2t) * sigma
        - (0.25 - 1.75 * c2 + (1.0 - 3.0 * c2) * kappa) * sin2t,
        c * ((3.0 + cos2t) * sigma - k15 * sin2t),
        Theta / r * (1.0 + kappa) * s2 * sin2t,
        -Theta * s2 * (k15 * cos2t + sigma * sin2t),
        0.0,
    )


def second_order_inverse(pn: PolarNodal, geo: GeoModel = EARTH) -> SecondOrder:
    """Simplified second-order inverse corrections, truncated as printed.

    ``d2r`` keeps no eccentricity terms and ``d2Theta`` keeps terms up to first
    order in (kappa, sigma).
    """
    theta, Theta = pn.theta, pn.Theta
    aq = aux_quantities(pn, geo)
    c, s, kappa, sigma, p = aq.c, aq.s, aq.kappa, aq.sigma, aq.p
    if geo.J2 == 0.0:
        return SecondOrder(0.0, 0.0, 0.0)
    J3t, J4t = geo.J3t, geo.J4t
    q = p / geo.alpha
    c2, c4 = c * c, c**4
    s2 = s * s
    s3, s4 = s2 * s, s2 * s2
    st, s3t = math.sin(theta), math.sin(3.0 * theta)
    ct, c3t = math.cos(theta), math.cos(3.0 * theta)
    s2t, c2t = math.sin(2.0 * theta), math.cos(2.0 * theta)
    s4t, c4t = math.sin(4.0 * theta), math.cos(4.0 * theta)
    l5 = 1.0 - 5.0 * c2
    l7 = 1.0 - 7.0 * c2

    d2r = p * (
        -3.0 + 10.0 * c2 + c4
        - (4.0 - 32.0 * c2) * s2 * c2t
        - s4 * c4t
        - 1.5 * q * J3t * (l5 * s * st + 5.0 / 6.0 * s3 * s3t)
        - J4t * (9.0 / 8.0 * (3.0 - 30.0 * c2 + 35.0 * c4) + 2.5 * l7 * s2 * c2t - 7.0 / 8.0 * s4 * c4t)
    )
    d2R = Theta / p * (
        s2 * (2.0 - 22.0 * c2) * s2t
        + s4 * s4t
        + 1.5 * q * J3t * (l5 * s * ct - 2.5 * s3 * c3t)
        + J4t * (5.0 * l7 * s2 * s2t - 3.5 * s4 * s4t)
    )
    d2Theta = Theta * (
        -(0.25 * (7.0 - 25.0 * c2) + 6.0 * (1.0 - 3.0 * c2) * kappa) * s2
        - (1.5 * (1.0 - 9.0 * c2) + (4.0 - 44.0 * c2) * kappa) * s2 * c2t
        - sigma * (2.0 - 28.0 * c2) * s2 * s2t
        + 0.75 * s4 * c4t
        - 1.5 * sigma * s4 * s4t
        + q * J3t * (
            1.5 * l5 * s * (sigma * ct + (2.0 + kappa) * st)
            - 1.25 * (4.0 + 9.0 * kappa) * s3 * s3t
            + 3.75 * sigma * s3 * c3t
        )
        - J4t * (
            2.5 * l7 * s2 * (2.0 * sigma * s2t + (1.0 + 4.0 * kappa) * c2t)
            - 7.0 / 8.0 * (5.0 + 16.0 * kappa) * s4 * c4t
            - 3.5 * sigma * s4 * s4t
        )
    )
    return SecondOrder(d2r, d2R, d2Theta)


def apply_direct(pn_prime: PolarNodal, geo: GeoModel = EARTH) -> PolarNodal:
    """Prime -> osculating, first order, corrections evaluated at ``pn_prime``."""
    if geo.J2 == 0.0:
        return pn_prime
    eps = aux_quantities(pn_prime, geo).eps
    d = first_order_corrections(pn_prime, geo)
    r, theta, nu, R, Theta, N = pn_prime
    return PolarNodal(
        r + eps * d.r, theta + eps * d.theta, nu + eps * d.nu, R + eps * d.R, Theta + eps * d.Theta, N
    )


def apply_inverse(pn: PolarNodal, geo: GeoModel = EARTH) -> PolarNodal:
    """Osculating -> prime, with second-order terms for r and Theta."""
    if geo.J2 == 0.0:
        return pn
    eps = aux_quantities(pn, geo).eps
    d = first_order_corrections(pn, geo)
    d2 = second_order_inverse(pn, geo)
    h = 0.5 * eps * eps
    r, theta, nu, R, Theta, N = pn
    Theta_p = Theta - eps * d.Theta + h * d2.Theta
    # the O(s) J3 terms may dip Theta below |N| for s of order eps**2
    Theta_p = max(Theta_p, abs(N))
    return PolarNodal(
        r - eps * d.r + h * d2.r,
        theta - eps * d.theta,
        nu - eps * d.nu,
        R - eps * d.R,
        Theta_p,
        N,
    )


def delta_energy_terms(pn: PolarNodal, geo: GeoModel = EARTH) -> tuple[float, float, float]:
    """The radial-velocity, angular-momentum and radius contributions to the
    second-order change of Keplerian energy, in that order (km^2/s^2)."""
    r, _, _, R, Theta, _ = pn
    aq = aux_quantities(pn, geo)
    p = aq.p
    d2 = second_order_inverse(pn, geo)
    k = 0.5 * aq.eps**2 * Theta**2 / r**2
    return (
        k * (r * R / Theta) ** 2 * d2.R / (Theta / p),
        k * d2.Theta / Theta,
        k * (r / p - 1.0) * d2.r / p,
    )


def delta_energy(pn: PolarNodal, geo: GeoModel = EARTH) -> float:
    """Contribution of the second-order inverse corrections to the Kepler energy."""
    return sum(delta_energy_terms(pn, geo))
