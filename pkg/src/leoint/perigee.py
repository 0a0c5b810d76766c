"""Long-period J3 corrections of the elimination of the perigee.

Three formulations are provided:

* Delaunay-based corrections on (F, S, C, h, H, L), singular at low
  inclination; added when evaluated in double-prime variables (direct) and
  subtracted when evaluated in prime variables (inverse).
* Non-singular corrections on (psi, xi, chi, r, R, Theta), used for the
  direct map.
* Simplified low-eccentricity inverse corrections on (Psi, S, C, I). These are
  returned as the amounts to *add* to prime elements; they coincide with the
  long-period gravitational corrections of SGP4 up to sign, since SGP4 applies
  them in the direct sense.

All corrections scale with ``eps3 = (J3 / J2) (alpha / p) / 2``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .core import (
    EARTH,
    GeoModel,
    KeplerianElements,
    PolarNodal,
    aux_quantities,
    theta_mod,
)

S_MIN = math.sin(math.radians(5.0))


class LowInclinationError(ValueError):
    """The Delaunay-based corrections are singular for this inclination."""


class NonsingularSet(NamedTuple):
    psi: float
    xi: float
    chi: float
    r: float
    R: float
    Theta: float


class DelaunayLPDeltas(NamedTuple):
    F: float
    S: float
    C: float
    h: float
    H: float
    L: float


class SimplifiedLP(NamedTuple):
    Psi: float
    S: float
    C: float
    I: float


def eps3(p: float, geo: GeoModel = EARTH) -> float:
    return 0.5 * geo.J3 / geo.J2 * geo.alpha / p if geo.J2 else 0.0


def to_nonsingular(pn: PolarNodal) -> NonsingularSet:
    r, theta, nu, R, Theta, N = pn
    c = max(-1.0, min(1.0, N / Theta))
    s = math.sqrt(1.0 - c * c)
    return NonsingularSet(theta + nu, s * math.sin(theta), s * math.cos(theta), r, R, Theta)


def from_nonsingular(ns: NonsingularSet, sign: float = 1.0, N: float | None = None) -> PolarNodal:
    """Back to polar-nodal variables.

    The sign of ``cos I`` is lost in (xi, chi) and must be supplied, either as
    ``sign`` (negative for retrograde orbits) or by passing ``N`` itself. With
    ``N`` given only the direction of (xi, chi) is used, so corrected states of
    near-polar orbits with ``xi**2 + chi**2`` slightly above 1 are accepted.
    """
    psi, xi, chi, r, R, Theta = ns
    s2 = xi * xi + chi * chi
    if N is None:
        if s2 > 1.0 + 1e-12:
            raise ValueError(f"xi^2 + chi^2 = {s2} exceeds 1")
        N = math.copysign(math.sqrt(max(0.0, 1.0 - s2)), sign) * Theta
    theta = math.atan2(xi, chi) if s2 > 0.0 else 0.0
    return PolarNodal(r, theta, psi - theta, R, Theta, N)


def lp_corrections_nonsingular(ns: NonsingularSet, geo: GeoModel = EARTH, sign: float = 1.0) -> NonsingularSet:
    """Long-period corrections of the non-singular set (scaled by eps3).

    ``sign`` is the sign of ``cos I``; ``c`` enters the psi correction with its
    sign so that retrograde orbits are handled consistently.
    """
    psi, xi, chi, r, R, Theta = ns
    p = Theta * Theta / geo.mu
    e3 = eps3(p, geo)
    c = math.copysign(math.sqrt(max(0.0, 1.0 - xi * xi - chi * chi)), sign)
    kappa = p / r - 1.0
    sigma = p * R / Theta
    return NonsingularSet(
        e3 * (2.0 * chi + (kappa * chi - c * xi * sigma) / (1.0 + c)),
        e3 * (2.0 * chi * chi + kappa * (1.0 - xi * xi)),
        -e3 * (c * c * sigma + (2.0 + kappa) * xi * chi),
        e3 * xi * p,
        e3 * (1.0 + kappa) * chi * Theta / r,
        e3 * (kappa * xi - sigma * chi) * Theta,
    )


def apply_direct_nonsingular(pn: PolarNodal, geo: GeoModel = EARTH) -> PolarNodal:
    """Double-prime -> prime polar-nodal state; N is carried unchanged."""
    if geo.J3 == 0.0 or geo.J2 == 0.0:
        return pn
    sign = 1.0 if pn.N >= 0.0 else -1.0
    ns = to_nonsingular(pn)
    d = lp_corrections_nonsingular(ns, geo, sign)
    return from_nonsingular(NonsingularSet(*(a + b for a, b in zip(ns, d))), N=pn.N)


def _fcs(el: KeplerianElements):
    F = el.mean_anomaly + el.argp
    return F, el.e * math.cos(el.argp), el.e * math.sin(el.argp)


def lp_corrections_delaunay(el: KeplerianElements, geo: GeoModel = EARTH, s_min: float = S_MIN) -> DelaunayLPDeltas:
    """Long-period corrections on (F, S, C, h, H, L), scaled by eps3."""
    s = math.sin(el.inc)
    if s < s_min:
        raise LowInclinationError(
            f"sin I = {s:.3g} below {s_min:.3g}; use the non-singular or simplified corrections"
        )
    c = math.cos(el.inc)
    eta = math.sqrt(1.0 - el.e**2)
    _, C, S = _fcs(el)
    e3 = eps3(el.a * eta * eta, geo)
    return DelaunayLPDeltas(
        e3 * (1.0 / s - s * (1.0 + eta + 1.0 / (1.0 + eta))) * C,
        e3 * (C * C * (1.0 / s - s) - s * (1.0 - S * S)),
        -e3 * (1.0 / s - 2.0 * s) * C * S,
        -e3 * c / s * C,
        0.0,
        0.0,
    )


def _from_fcs(a: float, F: float, C: float, S: float, inc: float, raan: float) -> KeplerianElements:
    e = math.hypot(C, S)
    argp = math.atan2(S, C) if e > 0.0 else 0.0
    return KeplerianElements(a, e, inc, raan, theta_mod(argp), F - argp)


def apply_lp_delaunay(el: KeplerianElements, geo: GeoModel = EARTH, sign: float = -1.0,
                      s_min: float = S_MIN) -> KeplerianElements:
    """Apply the Delaunay-based corrections; ``sign=-1`` for the inverse map.

    L and H are untouched, so the semi-major axis is preserved exactly and the
    inclination follows from ``cos I = H / G``.
    """
    d = lp_corrections_delaunay(el, geo, s_min)
    F, C, S = _fcs(el)
    F, C, S = F + sign * d.F, C + sign * d.C, S + sign * d.S
    H_over_L = math.sqrt(1.0 - el.e**2) * math.cos(el.inc)
    eta = math.sqrt(1.0 - C * C - S * S)
    inc = math.acos(max(-1.0, min(1.0, H_over_L / eta)))
    return _from_fcs(el.a, F, C, S, inc, el.raan + sign * d.h)


def lp_inverse_simplified(el: KeplerianElements, geo: GeoModel = EARTH) -> SimplifiedLP:
    """Low-eccentricity inverse corrections (Psi, S, C, I) to add to prime elements."""
    s, c = math.sin(el.inc), math.cos(el.inc)
    _, C, S = _fcs(el)
    e3 = eps3(el.a * (1.0 - el.e**2), geo)
    return SimplifiedLP(e3 * (3.0 + 5.0 * c) / (2.0 * (1.0 + c)) * s * C, e3 * s, 0.0, -e3 * c * S)


def apply_lp_inverse_simplified(el: KeplerianElements, geo: GeoModel = EARTH) -> KeplerianElements:
    """Prime -> double-prime elements. The node is left alone: the whole
    Psi = M + argp + raan correction goes into the mean argument of latitude."""
    d = lp_inverse_simplified(el, geo)
    F, C, S = _fcs(el)
    return _from_fcs(el.a, F + d.Psi, C + d.C, S + d.S, el.inc + d.I, el.raan)


def to_delaunay_lp_state(pn: PolarNodal, geo: GeoModel = EARTH) -> tuple[float, float, float, float]:
    """(F, C, S, h) of a polar-nodal state; helper for cross-checks."""
    aq = aux_quantities(pn, geo)
    f = math.atan2(aq.sigma, aq.kappa)
    g = pn.theta - f
    e = aq.e
    E = f - 2.0 * math.atan2(e / (1 + aq.eta) * math.sin(f), 1 + e / (1 + aq.eta) * math.cos(f))
    M = E - e * math.sin(E)
    return M + g, e * math.cos(g), e * math.sin(g), pn.nu
