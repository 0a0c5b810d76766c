"""Orbital-element charts, conversions between them, and Kepler's equation.

Units are km, s and rad throughout. Degrees only appear at I/O boundaries
(see :mod:`leoint.harness`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi


class KeplerError(ArithmeticError):
    """Kepler's equation did not converge."""


class UnboundOrbitError(ValueError):
    """The state does not describe an elliptic orbit."""


@dataclass(frozen=True)
class GeoModel:
    """Physical constants of the zonal geopotential model."""

    mu: float = 398600.4415
    alpha: float = 6378.1363
    J2: float = 1.08262617e-3
    J3: float = -2.53241052e-6
    J4: float = -1.61989760e-6

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def J3t(self) -> float:
        """J3 / J2**2 (zero when J2 vanishes)."""
        return self.J3 / self.J2**2 if self.J2 else 0.0

    @property
    def J4t(self) -> float:
        """J4 / J2**2 (zero when J2 vanishes)."""
        return self.J4 / self.J2**2 if self.J2 else 0.0

    def with_zonals(self, J2=None, J3=None, J4=None) -> "GeoModel":
        return GeoModel(
            self.mu,
            self.alpha,
            self.J2 if J2 is None else J2,
            self.J3 if J3 is None else J3,
            self.J4 if J4 is None else J4,
        )


EARTH = GeoModel()


class KeplerianElements(NamedTuple):
    a: float
    e: float
    inc: float
    raan: float
    argp: float
    mean_anomaly: float


class DelaunayVars(NamedTuple):
    l: float
    g: float
    h: float
    L: float
    G: float
    H: float


class PolarNodal(NamedTuple):
    """Polar-nodal canonical state (r, theta, nu, R, Theta, N)."""

    r: float
    theta: float
    nu: float
    R: float
    Theta: float
    N: float


class CartesianState(NamedTuple):
    position: np.ndarray
    velocity: np.ndarray


class AuxQuantities(NamedTuple):
    p: float
    eta: float
    e: float
    c: float
    s: float
    kappa: float
    sigma: float
    eps: float
    eps3: float


def wrap_angle(x: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    y = math.remainder(x, TWO_PI)
    return math.pi if y == -math.pi else y


def wrap_angles(x: np.ndarray) -> np.ndarray:
    """Vectorised :func:`wrap_angle`."""
    y = np.remainder(np.asarray(x, dtype=float) + math.pi, TWO_PI) - math.pi
    return np.where(y == -math.pi, math.pi, y)


def _kepler_bisect(M: float, e: float) -> float:
    # g(E) = E - e sin E - M is increasing; root lies in [M - e, M + e]
    lo, hi = M - e, M + e
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid - e * math.sin(mid) - M > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-16:
            break
    return 0.5 * (lo + hi)


def solve_kepler(M: float, e: float, tol: float = 1e-14, maxiter: int = 50) -> float:
    """Eccentric anomaly for mean anomaly ``M`` and eccentricity ``e``.

    Newton iteration from ``E0 = M + e sin M`` on the wrapped mean anomaly,
    falling back to bisection if Newton stalls. The result lies in the same
    revolution as ``M``.
    """
    if not 0.0 <= e < 1.0:
        raise ValueError(f"eccentricity must be in [0, 1), got {e}")
    if not math.isfinite(M):
        raise ValueError(f"mean anomaly must be finite, got {M}")
    Mw = wrap_angle(M)
    E = Mw + e * math.sin(Mw)
    for _ in range(maxiter):
        f = E - e * math.sin(E) - Mw
        if abs(f) < tol:
            break
        E -= f / (1.0 - e * math.cos(E))
    else:
        E = _kepler_bisect(Mw, e)
        if abs(E - e * math.sin(E) - Mw) > 1e-13:
            raise KeplerError(f"Kepler equation did not converge for M={M}, e={e}")
    return E + (M - Mw)


def true_from_eccentric(E: float, e: float) -> float:
    """True anomaly, continuous with ``E`` (same revolution)."""
    beta = e / (1.0 + math.sqrt(1.0 - e * e))
    return E + 2.0 * math.atan2(beta * math.sin(E), 1.0 - beta * math.cos(E))


def eccentric_from_true(f: float, e: float) -> float:
    """Eccentric anomaly, continuous with ``f`` (same revolution)."""
    beta = e / (1.0 + math.sqrt(1.0 - e * e))
    return f - 2.0 * math.atan2(beta * math.sin(f), 1.0 + beta * math.cos(f))


def _check_elements(el: KeplerianElements) -> None:
    if not el.a > 0:
        raise ValueError(f"semi-major axis must be positive, got {el.a}")
    if not 0.0 <= el.e < 1.0:
        raise UnboundOrbitError(f"eccentricity must be in [0, 1), got {el.e}")
    if not 0.0 <= el.inc <= math.pi:
        raise ValueError(f"inclination must be in [0, pi], got {el.inc}")


def keplerian_to_polar_nodal(el: KeplerianElements, geo: GeoModel = EARTH) -> PolarNodal:
    _check_elements(el)
    a, e, inc, raan, argp, M = el
    p = a * (1.0 - e * e)
    Theta = math.sqrt(geo.mu * p)
    f = true_from_eccentric(solve_kepler(M, e), e)
    r = p / (1.0 + e * math.cos(f))
    R = Theta / p * e * math.sin(f)
    return PolarNodal(r, argp + f, raan, R, Theta, Theta * math.cos(inc))


def polar_nodal_to_keplerian(pn: PolarNodal, geo: GeoModel = EARTH) -> KeplerianElements:
    """Osculating elements of a polar-nodal state.

    ``argp`` and ``raan`` are wrapped to [0, 2pi); the mean anomaly is in
    (-pi, pi]. For a circular orbit only ``argp + mean_anomaly`` is defined
    and the whole argument of latitude is assigned to ``argp``.
    """
    r, theta, nu, R, Theta, N = pn
    if not (r > 0 and Theta > 0):
        raise ValueError("polar-nodal state needs r > 0 and Theta > 0")
    energy = 0.5 * (R * R + Theta * Theta / (r * r)) - geo.mu / r
    if energy >= 0.0:
        raise UnboundOrbitError(f"state is not bound (energy {energy:.6g} km^2/s^2)")
    p = Theta * Theta / geo.mu
    kappa = p / r - 1.0
    sigma = p * R / Theta
    e = math.hypot(kappa, sigma)
    f = math.atan2(sigma, kappa)
    E = eccentric_from_true(f, e)
    M = E - e * math.sin(E)
    inc = math.acos(max(-1.0, min(1.0, N / Theta)))
    return KeplerianElements(
        p / (1.0 - e * e), e, inc, theta_mod(nu), theta_mod(theta - f), M
    )


def theta_mod(x: float) -> float:
    """Reduce an angle to [0, 2pi)."""
    y = math.fmod(x, TWO_PI)
    if y < 0.0:
        y += TWO_PI
    return 0.0 if y >= TWO_PI else y


def keplerian_to_delaunay(el: KeplerianElements, geo: GeoModel = EARTH) -> DelaunayVars:
    _check_elements(el)
    L = math.sqrt(geo.mu * el.a)
    G = L * math.sqrt(1.0 - el.e**2)
    return DelaunayVars(el.mean_anomaly, el.argp, el.raan, L, G, G * math.cos(el.inc))


def delaunay_to_keplerian(dv: DelaunayVars, geo: GeoModel = EARTH) -> KeplerianElements:
    l, g, h, L, G, H = dv
    eta = G / L
    e = math.sqrt(max(0.0, 1.0 - eta * eta))
    return KeplerianElements(L * L / geo.mu, e, math.acos(max(-1.0, min(1.0, H / G))), h, g, l)


def _orbit_basis(theta: float, nu: float, c: float, s: float):
    ct, st = math.cos(theta), math.sin(theta)
    cn, sn = math.cos(nu), math.sin(nu)
    u = (cn * ct - sn * st * c, sn * ct + cn * st * c, st * s)
    w = (-cn * st - sn * ct * c, -sn * st + cn * ct * c, ct * s)
    return u, w


def polar_nodal_to_cartesian(pn: PolarNodal) -> CartesianState:
    r, theta, nu, R, Theta, N = pn
    if not r > 0:
        raise ValueError("zero radius")
    c = N / Theta
    s = math.sqrt(max(0.0, 1.0 - c * c))
    u, w = _orbit_basis(theta, nu, c, s)
    vt = Theta / r
    pos = np.array([r * u[0], r * u[1], r * u[2]])
    vel = np.array([R * u[0] + vt * w[0], R * u[1] + vt * w[1], R * u[2] + vt * w[2]])
    return CartesianState(pos, vel)


def cartesian_to_polar_nodal(state: CartesianState) -> PolarNodal:
    x, y, z = (float(q) for q in state.position)
    vx, vy, vz = (float(q) for q in state.velocity)
    r = math.sqrt(x * x + y * y + z * z)
    if r == 0.0:
        raise ValueError("zero radius")
    hx, hy, hz = y * vz - z * vy, z * vx - x * vz, x * vy - y * vx
    Theta = math.sqrt(hx * hx + hy * hy + hz * hz)
    if hx == 0.0 and hy == 0.0:
        nu = 0.0
    else:
        nu = math.atan2(hx, -hy)
    cn, sn = math.cos(nu), math.sin(nu)
    # in-plane axis perpendicular to the node line: (h/|h|) x n
    mx = (hy * 0.0 - hz * sn) / Theta
    my = (hz * cn - hx * 0.0) / Theta
    mz = (hx * sn - hy * cn) / Theta
    theta = math.atan2(x * mx + y * my + z * mz, x * cn + y * sn)
    R = (x * vx + y * vy + z * vz) / r
    return PolarNodal(r, theta, nu, R, Theta, hz)


def keplerian_to_cartesian(el: KeplerianElements, geo: GeoModel = EARTH) -> CartesianState:
    return polar_nodal_to_cartesian(keplerian_to_polar_nodal(el, geo))


def cartesian_to_keplerian(state: CartesianState, geo: GeoModel = EARTH) -> KeplerianElements:
    return polar_nodal_to_keplerian(cartesian_to_polar_nodal(state), geo)


def aux_quantities(pn: PolarNodal, geo: GeoModel = EARTH) -> AuxQuantities:
    """Eccentricity/inclination functions and small parameters of a state."""
    r, _, _, R, Theta, N = pn
    if not (r > 0 and Theta > 0) or abs(N) > Theta * (1.0 + 1e-12):
        raise ValueError(f"invalid polar-nodal state {pn}")
    p = Theta * Theta / geo.mu
    c = max(-1.0, min(1.0, N / Theta))
    s = math.sqrt(1.0 - c * c)
    kappa = p / r - 1.0
    sigma = p * R / Theta
    e2 = kappa * kappa + sigma * sigma
    eps = -0.5 * (geo.alpha / p) ** 2 * geo.J2
    eps3 = 0.5 * geo.J3 / geo.J2 * geo.alpha / p if geo.J2 else 0.0
    return AuxQuantities(p, math.sqrt(max(0.0, 1.0 - e2)), math.sqrt(e2), c, s, kappa, sigma, eps, eps3)


def equinoctial_error_elements(el: KeplerianElements) -> tuple[float, float, float]:
    """Mean argument of latitude F = M + argp and C = e cos argp, S = e sin argp."""
    return (
        el.mean_anomaly + el.argp,
        el.e * math.cos(el.argp),
        el.e * math.sin(el.argp),
    )


def kepler_energy(pn: PolarNodal, geo: GeoModel = EARTH) -> float:
    r, _, _, R, Theta, _ = pn
    return 0.5 * (R * R + Theta * Theta / (r * r)) - geo.mu / r
