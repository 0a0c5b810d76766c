"""Torsion: maps the quasi-Keplerian system onto a pure Kepler problem.

In the prime chart the truncated Hamiltonian reads
``(R**2 + Theta**2 Phi**2 / r**2) / 2 - mu / r`` with ``Phi**2`` a function of
the momenta only. The torsion keeps (r, R, N), rescales the angular momentum
``Theta~ = Theta Phi`` and stretches the angles accordingly.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .core import EARTH, GeoModel, PolarNodal


class TorsionError(ArithmeticError):
    pass


class TorsionCoefficients(NamedTuple):
    phi2: float
    phi: float
    dphi2_dc: float
    dphi2_deps: float


def phi_squared(eps: float, c: float, J4t: float) -> TorsionCoefficients:
    if abs(c) > 1.0 + 1e-12:
        raise ValueError(f"|c| must not exceed 1, got {c}")
    c2 = c * c
    c4 = c2 * c2
    quad = 1.0 - 21.0 * c4 + 1.5 * J4t * (3.0 - 30.0 * c2 + 35.0 * c4)
    phi2 = 1.0 - eps * (1.0 - 3.0 * c2) + 0.25 * eps * eps * quad
    if not phi2 > 0.0:
        raise TorsionError(f"Phi^2 = {phi2} is not positive (eps={eps}, c={c})")
    dc = 3.0 * eps * c * (2.0 - eps * (7.0 * c2 + 2.5 * (3.0 - 7.0 * c2) * J4t))
    deps = -1.0 + 3.0 * c2 + 0.5 * eps * quad
    return TorsionCoefficients(phi2, math.sqrt(phi2), dc, deps)


def _eps(Theta: float, geo: GeoModel) -> float:
    p = Theta * Theta / geo.mu
    return -0.5 * (geo.alpha / p) ** 2 * geo.J2


def _coefficients(Theta: float, N: float, geo: GeoModel):
    eps = _eps(Theta, geo)
    c = N / Theta
    tc = phi_squared(eps, c, geo.J4t)
    bracket = tc.phi2 - 2.0 * eps * tc.dphi2_deps - 0.5 * c * tc.dphi2_dc
    if abs(bracket) < 1e-6:
        raise TorsionError("angle-scaling bracket vanishes")
    return tc, bracket


def torsion_to_tilde(pn: PolarNodal, geo: GeoModel = EARTH) -> PolarNodal:
    """(r, theta, nu, R, Theta, N) -> tilde chart (explicit)."""
    r, theta, nu, R, Theta, N = pn
    tc, bracket = _coefficients(Theta, N, geo)
    theta_t = theta * tc.phi / bracket
    nu_t = nu - 0.5 * theta_t / tc.phi * tc.dphi2_dc
    return PolarNodal(r, theta_t, nu_t, R, Theta * tc.phi, N)


def theta_from_tilde(Theta_t: float, N: float, geo: GeoModel = EARTH) -> float:
    """One closed-form Newton-Raphson step for Theta from Theta Phi(Theta, N) = Theta~."""
    p_t = Theta_t * Theta_t / geo.mu
    eps_t = -0.5 * (geo.alpha / p_t) ** 2 * geo.J2
    c = N / Theta_t
    c2 = c * c
    c4 = c2 * c2
    return Theta_t * (
        1.0
        + 0.5 * eps_t * (1.0 - 3.0 * c2)
        - 0.75 * eps_t * eps_t * (0.25 * (3.0 - 30.0 * c2 + 35.0 * c4) * geo.J4t + 1.0 - 7.0 * c2 + 10.0 * c4)
    )


def torsion_from_tilde(pn_t: PolarNodal, geo: GeoModel = EARTH) -> PolarNodal:
    """Tilde chart -> (r, theta, nu, R, Theta, N).

    Theta comes from the one-step formula; the angle coefficients are then
    evaluated at the recovered (Theta, N).
    """
    r, theta_t, nu_t, R, Theta_t, N = pn_t
    Theta = theta_from_tilde(Theta_t, N, geo)
    tc, bracket = _coefficients(Theta, N, geo)
    k = theta_t / tc.phi
    return PolarNodal(r, k * bracket, nu_t + 0.5 * k * tc.dphi2_dc, R, Theta, N)


def implicit_residual(Theta: float, Theta_t: float, N: float, geo: GeoModel = EARTH) -> float:
    """Theta Phi(Theta, N) - Theta~, whose root is the exact inverse momentum."""
    tc = phi_squared(_eps(Theta, geo), N / Theta, geo.J4t)
    return Theta * tc.phi - Theta_t
