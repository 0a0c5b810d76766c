"""First and second accelerated intermediaries.

``initialize`` maps osculating initial conditions to the constants of a pure
Kepler problem in the tilde chart; ``evaluate_at`` runs that Kepler motion to
any epoch and maps back to osculating polar-nodal variables:

    osculating --parallax inverse--> prime [--perigee inverse--> double prime]
               --torsion--> tilde (Kepler constants)

and the reverse chain at each output epoch, with first-order direct
short-period corrections.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import parallax, perigee, torsion
from .core import (
    EARTH,
    GeoModel,
    PolarNodal,
    UnboundOrbitError,
    eccentric_from_true,
    keplerian_to_polar_nodal,
    polar_nodal_to_keplerian,
    solve_kepler,
    true_from_eccentric,
    wrap_angle,
)
from .cowell import Ephemeris, output_grid

log = logging.getLogger(__name__)

ECCENTRICITY_WARNING = 0.1


class IntermediaryKind(enum.Enum):
    FIRST = 1
    SECOND = 2


@dataclass(frozen=True)
class KeplerianConstants:
    """Kepler motion in the tilde chart.

    ``argp`` is not reduced modulo 2 pi: together with the true anomaly it
    rebuilds the unwrapped tilde argument of latitude that the torsion
    scales.
    """

    a: float
    e: float
    inc: float
    raan: float
    argp: float
    M0: float
    n: float
    Theta: float
    N: float


@dataclass(frozen=True)
class IntermediaryState:
    kind: IntermediaryKind
    geo: GeoModel
    t0: float
    constants: KeplerianConstants
    N0: float


def _kepler_constants(pn_t: PolarNodal, geo: GeoModel) -> KeplerianConstants:
    r, theta, nu, R, Theta, N = pn_t
    p = Theta * Theta / geo.mu
    kappa = p / r - 1.0
    sigma = p * R / Theta
    e2 = kappa * kappa + sigma * sigma
    if e2 >= 1.0:
        raise UnboundOrbitError(f"tilde orbit is not elliptic (e = {math.sqrt(e2):.4g})")
    e = math.sqrt(e2)
    f = math.atan2(sigma, kappa)
    E = eccentric_from_true(f, e)
    a = p / (1.0 - e2)
    return KeplerianConstants(
        a=a,
        e=e,
        inc=math.acos(max(-1.0, min(1.0, N / Theta))),
        raan=nu,
        argp=theta - f,
        M0=E - e * math.sin(E),
        n=math.sqrt(geo.mu / a**3),
        Theta=Theta,
        N=N,
    )


def initialize(
    pn0: PolarNodal,
    geo: GeoModel = EARTH,
    kind: IntermediaryKind = IntermediaryKind.FIRST,
    t0: float = 0.0,
    delaunay_inverse: bool = False,
) -> IntermediaryState:
    """Constants of the intermediary for osculating initial conditions.

    ``delaunay_inverse`` selects the full Delaunay-based inverse long-period
    corrections (second intermediary only) instead of the simplified ones.
    """
    aq_e = math.hypot(pn0.Theta * pn0.Theta / geo.mu / pn0.r - 1.0, pn0.Theta * pn0.R / geo.mu)
    if aq_e > ECCENTRICITY_WARNING:
        log.warning("eccentricity %.3f above %.1f: intermediary accuracy degrades", aq_e, ECCENTRICITY_WARNING)
    pn = parallax.apply_inverse(pn0, geo)
    if kind is IntermediaryKind.SECOND:
        el = polar_nodal_to_keplerian(pn, geo)
        if delaunay_inverse:
            el = perigee.apply_lp_delaunay(el, geo, sign=-1.0)
        else:
            el = perigee.apply_lp_inverse_simplified(el, geo)
        pn = keplerian_to_polar_nodal(el, geo)
    # the torsion scales theta; keep the initial angle on the principal branch
    pn = pn._replace(theta=wrap_angle(pn.theta), nu=wrap_angle(pn.nu))
    pn_t = torsion.torsion_to_tilde(pn, geo)
    return IntermediaryState(kind, geo, t0, _kepler_constants(pn_t, geo), pn0.N)


def tilde_state_at(state: IntermediaryState, t: float) -> PolarNodal:
    """Kepler motion in the tilde chart (unwrapped argument of latitude)."""
    k = state.constants
    M = k.M0 + k.n * (t - state.t0)
    E = solve_kepler(M, k.e)
    f = true_from_eccentric(E, k.e)
    p = k.a * (1.0 - k.e * k.e)
    r = p / (1.0 + k.e * math.cos(f))
    R = k.Theta / p * k.e * math.sin(f)
    return PolarNodal(r, k.argp + f, k.raan, R, k.Theta, k.N)


def evaluate_at(state: IntermediaryState, t: float) -> PolarNodal:
    """Osculating polar-nodal state at epoch ``t``."""
    geo = state.geo
    pn = torsion.torsion_from_tilde(tilde_state_at(state, t), geo)
    if state.kind is IntermediaryKind.SECOND:
        pn = perigee.apply_direct_nonsingular(pn, geo)
    r, theta, nu, R, Theta, _ = parallax.apply_direct(pn, geo)
    return PolarNodal(r, wrap_angle(theta), wrap_angle(nu), R, Theta, state.N0)


def propagate(
    pn0: PolarNodal,
    t0: float,
    T: float,
    dt: float | None = None,
    geo: GeoModel = EARTH,
    kind: IntermediaryKind = IntermediaryKind.FIRST,
    steps: int | None = None,
    epochs: np.ndarray | None = None,
    delaunay_inverse: bool = False,
) -> Ephemeris:
    """Ephemeris on a uniform grid (``dt`` spacing, or ``steps`` intervals)."""
    if epochs is None:
        epochs = output_grid(t0, T, dt, steps)
    state = initialize(pn0, geo, kind, t0, delaunay_inverse)
    out = np.array([evaluate_at(state, float(t)) for t in epochs]).reshape(-1, 6)
    return Ephemeris(np.asarray(epochs, dtype=float), out, "polar-nodal", {"method": f"intermediary-{kind.value}"})
