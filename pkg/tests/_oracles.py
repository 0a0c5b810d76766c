"""Independent re-implementations used as test oracles.

Everything here is recomputed from Cartesian geometry or from plain formulas
with numpy, without importing the corresponding leoint code paths.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq


def kepler_bisect(M, e, tol=1e-14):
    lo, hi = M - 1.0, M + 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid - e * math.sin(mid) - M > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def geometry(pos, vel, mu):
    """Polar-nodal quantities straight from position/velocity vectors."""
    pos, vel = np.asarray(pos, float), np.asarray(vel, float)
    h = np.cross(pos, vel)
    Th = np.linalg.norm(h)
    r = np.linalg.norm(pos)
    zhat = np.array([0.0, 0.0, 1.0])
    node = np.cross(zhat, h)
    nn = np.linalg.norm(node)
    node = node / nn if nn > 0 else np.array([1.0, 0.0, 0.0])
    other = np.cross(h / Th, node)
    theta = math.atan2(pos @ other, pos @ node)
    p = Th**2 / mu
    R = pos @ vel / r
    return dict(
        r=r, theta=theta, R=R, Theta=Th, N=h[2], p=p, c=h[2] / Th,
        s=math.hypot(h[0], h[1]) / Th, kappa=p / r - 1, sigma=p * R / Th,
    )


def parallax_first(g):
    """First-order short-period corrections, one expression per variable."""
    p, s, c, k, sg, th, r, Th = (g[x] for x in ("p", "s", "c", "kappa", "sigma", "theta", "r", "Theta"))
    C2, S2 = np.cos(2 * th), np.sin(2 * th)
    dr = p * (1 - 3 / 2 * s**2 - 1 / 2 * s**2 * C2)
    dth = (1 - 6 * c**2 + (1 - 2 * c**2) * C2) * sg - (1 / 4 - 7 / 4 * c**2 + (1 - 3 * c**2) * k) * S2
    dnu = c * ((3 + C2) * sg - (3 / 2 + 2 * k) * S2)
    dR = Th / r * (1 + k) * s**2 * S2
    dTh = -Th * s**2 * ((3 / 2 + 2 * k) * C2 + sg * S2)
    return np.array([dr, dth, dnu, dR, dTh, 0.0])


def parallax_second(g, alpha, J2, J3, J4):
    """Second-order inverse corrections (d2r, d2R, d2Theta)."""
    p, s, c, k, sg, th, Th = (g[x] for x in ("p", "s", "c", "kappa", "sigma", "theta", "Theta"))
    j3, j4 = J3 / J2**2, J4 / J2**2
    pa = p / alpha
    d2r = p * (
        -3 + 10 * c**2 + c**4 - (4 - 32 * c**2) * s**2 * np.cos(2 * th) - s**4 * np.cos(4 * th)
        - 3 / 2 * pa * j3 * ((1 - 5 * c**2) * s * np.sin(th) + 5 / 6 * s**3 * np.sin(3 * th))
        - j4 * (9 / 8 * (3 - 30 * c**2 + 35 * c**4) + 5 / 2 * (1 - 7 * c**2) * s**2 * np.cos(2 * th)
                - 7 / 8 * s**4 * np.cos(4 * th))
    )
    d2R = Th / p * (
        s**2 * (2 - 22 * c**2) * np.sin(2 * th) + s**4 * np.sin(4 * th)
        + 3 / 2 * pa * j3 * ((1 - 5 * c**2) * s * np.cos(th) - 5 / 2 * s**3 * np.cos(3 * th))
        + j4 * (5 * (1 - 7 * c**2) * s**2 * np.sin(2 * th) - 7 / 2 * s**4 * np.sin(4 * th))
    )
    d2Th = Th * (
        -(1 / 4 * (7 - 25 * c**2) + 6 * (1 - 3 * c**2) * k) * s**2
        - (3 / 2 * (1 - 9 * c**2) + (4 - 44 * c**2) * k) * s**2 * np.cos(2 * th)
        - sg * (2 - 28 * c**2) * s**2 * np.sin(2 * th) + 3 / 4 * s**4 * np.cos(4 * th)
        - 3 / 2 * sg * s**4 * np.sin(4 * th)
        + pa * j3 * (3 / 2 * (1 - 5 * c**2) * s * (sg * np.cos(th) + (2 + k) * np.sin(th))
                     - 5 / 4 * (4 + 9 * k) * s**3 * np.sin(3 * th) + 15 / 4 * sg * s**3 * np.cos(3 * th))
        - j4 * (5 / 2 * (1 - 7 * c**2) * s**2 * (2 * sg * np.sin(2 * th) + (1 + 4 * k) * np.cos(2 * th))
                - 7 / 8 * (5 + 16 * k) * s**4 * np.cos(4 * th) - 7 / 2 * sg * s**4 * np.sin(4 * th))
    )
    return np.array([d2r, d2R, d2Th])


def phi2(eps, c, j4):
    return 1 - eps * (1 - 3 * c**2) + eps**2 / 4 * (1 - 21 * c**4 + 3 / 2 * j4 * (3 - 30 * c**2 + 35 * c**4))


def torsion_root(Theta_t, N, mu, alpha, J2, J4):
    """Converged solution of Theta * Phi(Theta, N) = Theta~ by bracketing."""
    j4 = J4 / J2**2 if J2 else 0.0

    def f(Th):
        eps = -0.5 * (alpha * mu / Th**2) ** 2 * J2
        return Th * math.sqrt(phi2(eps, N / Th, j4)) - Theta_t

    return brentq(f, Theta_t * 0.99, Theta_t * 1.01, xtol=1e-15 * Theta_t, rtol=1e-15, maxiter=200)


def lp_nonsingular(psi, xi, chi, r, R, Th, mu, e3, csign=1.0):
    c = csign * math.sqrt(max(0.0, 1 - xi**2 - chi**2))
    p = Th**2 / mu
    k, sg = p / r - 1, p * R / Th
    return np.array([
        e3 * (2 * chi + (k * chi - c * xi * sg) / (1 + c)),
        e3 * (2 * chi**2 + k * (1 - xi**2)),
        -e3 * (c**2 * sg + (2 + k) * xi * chi),
        e3 * xi * p,
        e3 * (1 + k) * chi * Th / r,
        e3 * (k * xi - sg * chi) * Th,
    ])


def lp_delaunay(e, inc, argp, e3):
    s, c = math.sin(inc), math.cos(inc)
    C, S = e * math.cos(argp), e * math.sin(argp)
    eta = math.sqrt(1 - e**2)
    return dict(
        F=e3 * (1 / s - s * (1 + eta + 1 / (1 + eta))) * C,
        S=e3 * (C**2 * (1 / s - s) - s * (1 - S**2)),
        C=-e3 * (1 / s - 2 * s) * C * S,
        h=-e3 * c / s * C,
    )


def lp_simplified(e, inc, argp, e3):
    s, c = math.sin(inc), math.cos(inc)
    C, S = e * math.cos(argp), e * math.sin(argp)
    return np.array([e3 * (3 + 5 * c) / (2 * (1 + c)) * s * C, e3 * s, 0.0, -e3 * c * S])


def two_body(pos, vel, mu, t):
    """Universal-variable-free two-body propagation through elements."""
    pos, vel = np.asarray(pos, float), np.asarray(vel, float)
    r0 = np.linalg.norm(pos)
    a = 1 / (2 / r0 - vel @ vel / mu)
    n = math.sqrt(mu / a**3)
    ecosE = 1 - r0 / a
    esinE = pos @ vel / math.sqrt(mu * a)
    e = math.hypot(ecosE, esinE)
    E0 = math.atan2(esinE, ecosE)
    M = E0 - esinE + n * t
    E = kepler_bisect(math.remainder(M, 2 * math.pi), e) + (M - math.remainder(M, 2 * math.pi))
    # Lagrange f and g coefficients
    dE = E - E0
    f = 1 - a / r0 * (1 - math.cos(dE))
    g = t - (dE - math.sin(dE)) / n
    rvec = f * pos + g * vel
    r = np.linalg.norm(rvec)
    fd = -math.sqrt(mu * a) / (r * r0) * math.sin(dE)
    gd = 1 - a / r * (1 - math.cos(dE))
    return rvec, fd * pos + gd * vel
