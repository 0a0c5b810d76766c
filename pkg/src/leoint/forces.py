"""Zonal geopotential (J2-J4): disturbing potential, acceleration, Hamiltonians.

The disturbing part of the potential energy per unit mass is

    Z = (mu / r) * sum_m J_m (alpha / r)**m P_m(z / r),    m = 2..4

so that the total potential energy is ``-mu/r + Z`` and the Hamiltonian of
the zonal problem is ``v**2/2 - mu/r + Z``.
"""

from __future__ import annotations

import enum
import math
from typing import Callable

import numpy as np

from .core import EARTH, CartesianState, GeoModel, PolarNodal


class ZonalModelKind(enum.Enum):
    KEPLER = "kepler"
    J2 = "j2"
    FULL = "full"

    def zonals(self, geo: GeoModel) -> tuple[float, float, float]:
        if self is ZonalModelKind.KEPLER:
            return 0.0, 0.0, 0.0
        if self is ZonalModelKind.J2:
            return geo.J2, 0.0, 0.0
        return geo.J2, geo.J3, geo.J4


def legendre_p234(u: float) -> tuple[float, float, float]:
    """Legendre polynomials of degree 2, 3 and 4 at ``u = sin(latitude)``."""
    u2 = u * u
    return (
        0.5 * (3.0 * u2 - 1.0),
        0.5 * u * (5.0 * u2 - 3.0),
        0.125 * ((35.0 * u2 - 30.0) * u2 + 3.0),
    )


def legendre_p234_orbital(s: float, theta: float) -> tuple[float, float, float]:
    """Same polynomials written as Fourier series in the argument of latitude.

    ``s`` is the sine of the inclination; ``sin(latitude) = s sin(theta)``.
    """
    s2 = s * s
    c2t, c4t = math.cos(2 * theta), math.cos(4 * theta)
    P2 = -0.5 + 0.75 * s2 - 0.75 * s2 * c2t
    P3 = (-1.5 + 15.0 / 8.0 * s2) * s * math.sin(theta) - 5.0 / 8.0 * s2 * s * math.sin(3 * theta)
    P4 = (
        3.0 / 64.0 * (8.0 - 40.0 * s2 + 35.0 * s2 * s2)
        + 5.0 / 16.0 * (6.0 - 7.0 * s2) * s2 * c2t
        + 35.0 / 64.0 * s2 * s2 * c4t
    )
    return P2, P3, P4


def _zonal_sum(r: float, u: float, geo: GeoModel, kind: ZonalModelKind) -> float:
    J2, J3, J4 = kind.zonals(geo)
    P2, P3, P4 = legendre_p234(u)
    q = geo.alpha / r
    q2 = q * q
    return q2 * (J2 * P2 + q * (J3 * P3 + q * J4 * P4))


def zonal_potential(
    state: CartesianState, geo: GeoModel = EARTH, kind: ZonalModelKind = ZonalModelKind.FULL
) -> float:
    """Disturbing potential energy Z (km^2/s^2); total potential is ``-mu/r + Z``."""
    x, y, z = (float(q) for q in state.position)
    r = math.sqrt(x * x + y * y + z * z)
    if r == 0.0:
        raise ValueError("zero radius")
    return geo.mu / r * _zonal_sum(r, z / r, geo, kind)


def total_potential(
    state: CartesianState, geo: GeoModel = EARTH, kind: ZonalModelKind = ZonalModelKind.FULL
) -> float:
    r = float(np.linalg.norm(state.position))
    return -geo.mu / r + zonal_potential(state, geo, kind)


def total_energy(
    state: CartesianState, geo: GeoModel = EARTH, kind: ZonalModelKind = ZonalModelKind.FULL
) -> float:
    v = np.asarray(state.velocity, dtype=float)
    return 0.5 * float(v @ v) + total_potential(state, geo, kind)


def make_acceleration(
    geo: GeoModel = EARTH, kind: ZonalModelKind = ZonalModelKind.FULL
) -> Callable[[float, float, float], tuple[float, float, float]]:
    """Scalar acceleration function ``(x, y, z) -> (ax, ay, az)`` for hot loops.

    Closed-form gradient: for each degree m,
    grad Z_m = mu J_m alpha^m / r^(m+2) [(-(m+1) P_m - u P_m') r_hat + P_m' z_hat].
    """
    mu = geo.mu
    J2, J3, J4 = kind.zonals(geo)
    mu_a2 = mu * J2 * geo.alpha**2
    mu_a3 = mu * J3 * geo.alpha**3
    mu_a4 = mu * J4 * geo.alpha**4
    sqrt = math.sqrt

    if kind is ZonalModelKind.KEPLER:

        def accel(x, y, z):
            r2 = x * x + y * y + z * z
            k = -mu / (r2 * sqrt(r2))
            return k * x, k * y, k * z

        return accel

    if kind is ZonalModelKind.J2:

        def accel(x, y, z):
            r2 = x * x + y * y + z * z
            r = sqrt(r2)
            ir2 = 1.0 / r2
            u2 = z * z * ir2
            k0 = -mu / (r2 * r)
            t = 1.5 * mu_a2 * ir2 * ir2 / r
            kr = k0 + t * (5.0 * u2 - 1.0)
            return kr * x, kr * y, kr * z - 2.0 * t * z

        return accel

    def accel(x, y, z):
        r2 = x * x + y * y + z * z
        r = sqrt(r2)
        ir = 1.0 / r
        u = z * ir
        u2 = u * u
        ir2 = ir * ir
        ir4 = ir2 * ir2
        f2 = mu_a2 * ir4
        f3 = mu_a3 * ir4 * ir
        f4 = mu_a4 * ir4 * ir2
        # radial and polar coefficients of -grad Z, from the Legendre forms
        P2, dP2 = 0.5 * (3.0 * u2 - 1.0), 3.0 * u
        P3, dP3 = 0.5 * u * (5.0 * u2 - 3.0), 0.5 * (15.0 * u2 - 3.0)
        P4, dP4 = 0.125 * ((35.0 * u2 - 30.0) * u2 + 3.0), 0.5 * u * (35.0 * u2 - 15.0)
        cr = (
            f2 * (3.0 * P2 + u * dP2)
            + f3 * (4.0 * P3 + u * dP3)
            + f4 * (5.0 * P4 + u * dP4)
        )
        cz = -(f2 * dP2 + f3 * dP3 + f4 * dP4)
        kr = -mu * ir2 * ir + cr * ir
        return kr * x, kr * y, kr * z + cz

    return accel


def zonal_acceleration(
    state: CartesianState, geo: GeoModel = EARTH, kind: ZonalModelKind = ZonalModelKind.FULL
) -> np.ndarray:
    """Total gravitational acceleration (km/s^2), i.e. ``-grad(-mu/r + Z)``."""
    x, y, z = (float(q) for q in state.position)
    if x == 0.0 and y == 0.0 and z == 0.0:
        raise ValueError("zero radius")
    return np.array(make_acceleration(geo, kind)(x, y, z))


def hamiltonian_polar_nodal(pn: PolarNodal, geo: GeoModel = EARTH) -> float:
    """Keplerian energy in polar-nodal variables."""
    r, _, _, R, Theta, _ = pn
    return 0.5 * (R * R + Theta * Theta / (r * r)) - geo.mu / r


def hamiltonian_quasi_keplerian(pn: PolarNodal, phi2: float, geo: GeoModel = EARTH) -> float:
    """Kepler energy with the angular momentum rescaled by ``sqrt(phi2)``."""
    r, _, _, R, Theta, _ = pn
    return 0.5 * (R * R + Theta * Theta * phi2 / (r * r)) - geo.mu / r
