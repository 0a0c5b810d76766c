"""Cowell propagation: fixed-step RK4 baseline and an adaptive reference oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .core import (
    EARTH,
    CartesianState,
    GeoModel,
    PolarNodal,
    cartesian_to_polar_nodal,
    polar_nodal_to_cartesian,
)
from .forces import ZonalModelKind, make_acceleration

State6 = tuple  # (x, y, z, vx, vy, vz)


class IntegrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = 1.0
    tolerance: float = 1e-12
    output_interval: float = 240.0

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if not 1e-15 < self.tolerance < 1e-6:
            raise ValueError(f"tolerance must be in (1e-15, 1e-6), got {self.tolerance}")
        if not self.output_interval > 0:
            raise ValueError(f"output_interval must be positive, got {self.output_interval}")


@dataclass(frozen=True)
class Ephemeris:
    """Time-tagged states; ``states`` is an (n, 6) array in the given chart.

    Cartesian rows are (x, y, z, vx, vy, vz); polar-nodal rows are
    (r, theta, nu, R, Theta, N).
    """

    epochs: np.ndarray
    states: np.ndarray
    chart: str = "cartesian"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.chart not in ("cartesian", "polar-nodal"):
            raise ValueError(f"unknown chart {self.chart!r}")
        if len(self.epochs) != len(self.states):
            raise ValueError("epochs and states differ in length")
        if len(self.epochs) > 1 and not np.all(np.diff(self.epochs) > 0):
            raise ValueError("epochs must be strictly increasing")

    def __len__(self) -> int:
        return len(self.epochs)

    def cartesian(self) -> "Ephemeris":
        if self.chart == "cartesian":
            return self
        rows = np.empty_like(self.states)
        for k, row in enumerate(self.states):
            cs = polar_nodal_to_cartesian(PolarNodal(*row))
            rows[k, :3], rows[k, 3:] = cs.position, cs.velocity
        return Ephemeris(self.epochs, rows, "cartesian", self.meta)

    def polar_nodal(self) -> "Ephemeris":
        if self.chart == "polar-nodal":
            return self
        rows = np.array(
            [cartesian_to_polar_nodal(CartesianState(s[:3], s[3:])) for s in self.states]
        ).reshape(-1, 6)
        return Ephemeris(self.epochs, rows, "polar-nodal", self.meta)

    def state(self, k: int):
        row = self.states[k]
        if self.chart == "cartesian":
            return CartesianState(row[:3].copy(), row[3:].copy())
        return PolarNodal(*map(float, row))


def output_grid(t0: float, T: float, interval: float | None = None, steps: int | None = None) -> np.ndarray:
    """Uniform output epochs including both ends.

    Either ``interval`` (count ``floor((T - t0)/interval) + 1``; the last
    epoch may fall short of ``T``) or ``steps`` (``steps + 1`` epochs ending
    exactly at ``T``).
    """
    if not T > t0:
        raise ValueError(f"final epoch {T} must exceed initial epoch {t0}")
    if steps is not None:
        if steps < 1:
            raise ValueError("steps must be >= 1")
        return t0 + (T - t0) * np.arange(steps + 1) / steps
    if interval is None or not interval > 0:
        raise ValueError(f"output interval must be positive, got {interval}")
    n = int(math.floor((T - t0) / interval * (1 + 1e-12)))
    return t0 + interval * np.arange(n + 1)


def rk4_step(y: Sequence[float], h: float, deriv: Callable[[Sequence[float]], Sequence[float]]) -> State6:
    """One classical Runge-Kutta step of ``dy/dt = deriv(y)`` (autonomous)."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    n = len(y)
    k1 = deriv(y)
    k2 = deriv([y[i] + 0.5 * h * k1[i] for i in range(n)])
    k3 = deriv([y[i] + 0.5 * h * k2[i] for i in range(n)])
    k4 = deriv([y[i] + h * k3[i] for i in range(n)])
    out = tuple(y[i] + h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]) for i in range(n))
    if not all(math.isfinite(v) for v in out):
        raise IntegrationError("non-finite state in RK4 step")
    return out


def _rk4_orbit_step(accel):
    """Specialised RK4 step for ``(r, v)' = (v, accel(r))``, unrolled for speed."""

    def step(y, h):
        x, yy, z, vx, vy, vz = y
        hh = 0.5 * h
        a1 = accel(x, yy, z)
        x2, y2, z2 = x + hh * vx, yy + hh * vy, z + hh * vz
        vx2, vy2, vz2 = vx + hh * a1[0], vy + hh * a1[1], vz + hh * a1[2]
        a2 = accel(x2, y2, z2)
        x3, y3, z3 = x + hh * vx2, yy + hh * vy2, z + hh * vz2
        vx3, vy3, vz3 = vx + hh * a2[0], vy + hh * a2[1], vz + hh * a2[2]
        a3 = accel(x3, y3, z3)
        x4, y4, z4 = x + h * vx3, yy + h * vy3, z + h * vz3
        vx4, vy4, vz4 = vx + h * a3[0], vy + h * a3[1], vz + h * a3[2]
        a4 = accel(x4, y4, z4)
        h6 = h / 6.0
        return (
            x + h6 * (vx + 2.0 * (vx2 + vx3) + vx4),
            yy + h6 * (vy + 2.0 * (vy2 + vy3) + vy4),
            z + h6 * (vz + 2.0 * (vz2 + vz3) + vz4),
            vx + h6 * (a1[0] + 2.0 * (a2[0] + a3[0]) + a4[0]),
            vy + h6 * (a1[1] + 2.0 * (a2[1] + a3[1]) + a4[1]),
            vz + h6 * (a1[2] + 2.0 * (a2[2] + a3[2]) + a4[2]),
        )

    return step


def _as_tuple(state: CartesianState) -> State6:
    return tuple(float(v) for v in (*state.position, *state.velocity))


def propagate_cowell(
    state0: CartesianState,
    t0: float,
    T: float,
    cfg: IntegratorConfig = IntegratorConfig(),
    geo: GeoModel = EARTH,
    kind: ZonalModelKind = ZonalModelKind.J2,
    epochs: np.ndarray | None = None,
) -> Ephemeris:
    """Fixed-step RK4 Cowell propagation sampled on an output grid.

    Internal steps are ``cfg.step`` long; when an output epoch is not a whole
    number of steps away, the last sub-step before it is shortened so the
    state lands exactly on the epoch.
    """
    if epochs is None:
        epochs = output_grid(t0, T, cfg.output_interval)
    step = _rk4_orbit_step(make_acceleration(geo, kind))
    h = cfg.step
    y = _as_tuple(state0)
    t = float(epochs[0])
    if t != t0:
        raise ValueError("output grid must start at t0")
    out = np.empty((len(epochs), 6))
    out[0] = y
    for k in range(1, len(epochs)):
        target = float(epochs[k])
        nfull = int(math.floor((target - t) / h * (1 + 1e-12)))
        for _ in range(nfull):
            y = step(y, h)
        rest = target - (t + nfull * h)
        if rest > 1e-9 * h:
            y = step(y, rest)
        t = target
        out[k] = y
    if not np.all(np.isfinite(out)):
        raise IntegrationError("non-finite state in Cowell propagation")
    return Ephemeris(np.asarray(epochs, dtype=float), out, "cartesian", {"method": f"rk4-{kind.value}"})


def reference_propagate(
    state0: CartesianState,
    t0: float,
    T: float,
    geo: GeoModel = EARTH,
    kind: ZonalModelKind = ZonalModelKind.FULL,
    epochs: np.ndarray | None = None,
    output_interval: float = 240.0,
    tolerance: float = 3e-14,
) -> Ephemeris:
    """Tight-tolerance adaptive Dormand-Prince propagation (truth oracle).

    Uses the 8(5,3) embedded pair with dense output at the requested epochs.
    At ``tolerance=1e-12`` the drift of N over a day is already ~1e-13 and
    the two-body closure ~1e-7 km; the default sits just above the smallest
    relative tolerance scipy accepts, which costs only ~30% more steps.
    """
    if epochs is None:
        epochs = output_grid(t0, T, output_interval)
    accel = make_acceleration(geo, kind)

    def rhs(_t, y):
        ax, ay, az = accel(y[0], y[1], y[2])
        return [y[3], y[4], y[5], ax, ay, az]

    sol = solve_ivp(
        rhs,
        (float(epochs[0]), float(epochs[-1])),
        np.array(_as_tuple(state0)),
        method="DOP853",
        t_eval=np.asarray(epochs, dtype=float),
        rtol=tolerance,
        atol=tolerance * 1e-3,
    )
    if not sol.success:
        raise IntegrationError(f"reference integration failed: {sol.message}")
    return Ephemeris(np.asarray(epochs, dtype=float), sol.y.T.copy(), "cartesian", {"method": f"dop853-{kind.value}"})
