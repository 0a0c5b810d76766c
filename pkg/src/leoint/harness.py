"""Scenarios, method comparison against the full-zonal reference, CSV output
and runtime benchmarking."""

from __future__ import annotations

import csv
import io
import logging
import math
import os
import statistics
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import (
    EARTH,
    GeoModel,
    KeplerianElements,
    PolarNodal,
    equinoctial_error_elements,
    keplerian_to_cartesian,
    keplerian_to_polar_nodal,
    polar_nodal_to_keplerian,
    theta_mod,
    wrap_angles,
)
from .cowell import Ephemeris, IntegratorConfig, output_grid, propagate_cowell, reference_propagate
from .forces import ZonalModelKind
from .intermediary import IntermediaryKind, evaluate_at, initialize

log = logging.getLogger(__name__)

FORMAT_TAG = "leoint-scenario/1"
METHODS = ("cowell-j2", "cowell-full", "intermediary-1", "intermediary-2")
GEO_ENV = {"mu": "LEOINT_MU", "alpha": "LEOINT_ALPHA", "J2": "LEOINT_J2", "J3": "LEOINT_J3", "J4": "LEOINT_J4"}


class ScenarioError(ValueError):
    pass


class ComparisonError(RuntimeError):
    def __init__(self, method: str, cause: BaseException):
        super().__init__(f"method {method!r} failed: {cause}")
        self.method = method
        self.cause = cause


@dataclass(frozen=True)
class Scenario:
    """Initial osculating elements (degrees, as given) and run settings."""

    name: str
    a_km: float
    e: float
    inc_deg: float
    raan_deg: float
    argp_deg: float
    mean_anomaly_deg: float
    duration_s: float = 86400.0
    output_interval_s: float = 240.0
    steps: int | None = None
    geo: GeoModel = EARTH

    def __post_init__(self):
        if not self.a_km > 0:
            raise ScenarioError(f"a_km: must be positive, got {self.a_km}")
        if not 0.0 <= self.e < 1.0:
            raise ScenarioError(f"e: must be in [0, 1), got {self.e}")
        if not 0.0 <= self.inc_deg <= 180.0:
            raise ScenarioError(f"inc_deg: must be in [0, 180], got {self.inc_deg}")
        for name in ("raan_deg", "argp_deg", "mean_anomaly_deg"):
            if not math.isfinite(getattr(self, name)):
                raise ScenarioError(f"{name}: must be finite")
        if not self.duration_s > 0:
            raise ScenarioError(f"duration_s: must be positive, got {self.duration_s}")
        if not self.output_interval_s > 0:
            raise ScenarioError(f"output_interval_s: must be positive, got {self.output_interval_s}")
        if self.steps is not None and self.steps < 1:
            raise ScenarioError(f"steps: must be >= 1, got {self.steps}")

    @property
    def elements(self) -> KeplerianElements:
        """Elements in radians, angles reduced to [0, 2pi)."""
        rad = math.radians
        return KeplerianElements(
            self.a_km,
            self.e,
            rad(self.inc_deg),
            theta_mod(rad(self.raan_deg)),
            theta_mod(rad(self.argp_deg)),
            theta_mod(rad(self.mean_anomaly_deg)),
        )

    def epochs(self) -> np.ndarray:
        return output_grid(0.0, self.duration_s, self.output_interval_s, self.steps)


# a, e, I, raan, argp, M; angles in degrees exactly as tabulated
BUILTINS: dict[str, Scenario] = {
    s.name: s
    for s in (
        Scenario("spot4", 7081.1390, 0.0158, 98.0, 164.02, 0.0, 0.0),
        Scenario("leo-typical", 6831.5723, 0.00136, 51.6, 224.8, 280.1, 66.5),
        Scenario("eyesat", 7078.0, 0.00001, 98.18, 0.0, 0.0, 0.0),
        Scenario("proba2", 7106.1370, 0.00004, 98.3, 91.364, -1.423, 180.0),
        Scenario("jason1", 7254.0729, 0.06216, 66.974, -74.818, -241.050, 179.726),
        Scenario("cryosat", 7100.4651, 0.00252, 92.029, -37.185, 107.492, 51.202),
        Scenario("atv", 6586.1775, 0.0328, 51.6, 153.480, -21.395, 215.240),
        Scenario("labs-dove", 6851.946, 0.0012, 97.326, 0.0, 90.0, 0.0),
    )
}

_FLOAT_KEYS = {
    "a_km", "e", "inc_deg", "raan_deg", "argp_deg", "mean_anomaly_deg",
    "duration_s", "output_interval_s", "mu", "alpha", "J2", "J3", "J4",
}
_KEYS = _FLOAT_KEYS | {"format", "name", "base", "steps"}
_REQUIRED = ("a_km", "e", "inc_deg", "raan_deg", "argp_deg", "mean_anomaly_deg")


def parse_scenario(text: str, source: str = "<text>") -> Scenario:
    """Parse ``key = value`` scenario text (``#`` starts a comment).

    ``format = leoint-scenario/1`` is required. ``base = <builtin>`` starts
    from a built-in scenario so only overrides need listing.
    """
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        where = f"{source}:{lineno}"
        if not sep or not key or not value:
            raise ScenarioError(f"{where}: expected 'key = value', got {raw.strip()!r}")
        if key not in _KEYS:
            raise ScenarioError(f"{where}: unknown key {key!r}")
        if key in values:
            raise ScenarioError(f"{where}: duplicate key {key!r}")
        if key in _FLOAT_KEYS:
            try:
                values[key] = float(value)
            except ValueError:
                raise ScenarioError(f"{where}: {key}: not a number: {value!r}") from None
        elif key == "steps":
            try:
                values[key] = int(value)
            except ValueError:
                raise ScenarioError(f"{where}: steps: not an integer: {value!r}") from None
        else:
            values[key] = value
    if values.get("format") != FORMAT_TAG:
        raise ScenarioError(f"{source}: format: expected {FORMAT_TAG!r}, got {values.get('format')!r}")
    del values["format"]

    base = values.pop("base", None)
    geo_over = {k: values.pop(k) for k in list(values) if k in GEO_ENV}
    if base is not None:
        if base not in BUILTINS:
            raise ScenarioError(f"{source}: base: unknown built-in scenario {base!r}")
        scn = replace(BUILTINS[base], **values)
    else:
        missing = [k for k in _REQUIRED if k not in values]
        if missing:
            raise ScenarioError(f"{source}: missing field(s): {', '.join(missing)}")
        values.setdefault("name", Path(source).stem if source != "<text>" else "custom")
        scn = Scenario(**values)
    if geo_over:
        scn = replace(scn, geo=replace(scn.geo, **geo_over))
    return scn


def load_scenario(source: str) -> Scenario:
    """A built-in scenario by name, a scenario file path, or scenario text."""
    if source in BUILTINS:
        return BUILTINS[source]
    if "=" in source:
        return parse_scenario(source)
    path = Path(source)
    if not path.is_file():
        raise ScenarioError(f"{source!r} is neither a built-in scenario ({', '.join(BUILTINS)}) nor a file")
    return parse_scenario(path.read_text(), str(path))


def geo_from_env(geo: GeoModel, environ: dict | None = None) -> GeoModel:
    """Override constants from LEOINT_MU, LEOINT_ALPHA, LEOINT_J2/J3/J4."""
    environ = os.environ if environ is None else environ
    over = {}
    for key, var in GEO_ENV.items():
        if var in environ:
            try:
                over[key] = float(environ[var])
            except ValueError:
                raise ScenarioError(f"environment {var}: not a number: {environ[var]!r}") from None
    return replace(geo, **over) if over else geo


# --- propagation and errors ---


def run_method(scenario: Scenario, method: str, epochs: np.ndarray | None = None) -> Ephemeris:
    if epochs is None:
        epochs = scenario.epochs()
    geo = scenario.geo
    el = scenario.elements
    T = float(epochs[-1])
    if method in ("cowell-j2", "cowell-full"):
        kind = ZonalModelKind.J2 if method == "cowell-j2" else ZonalModelKind.FULL
        return propagate_cowell(keplerian_to_cartesian(el, geo), 0.0, T, IntegratorConfig(), geo, kind, epochs)
    if method in ("intermediary-1", "intermediary-2"):
        kind = IntermediaryKind.FIRST if method == "intermediary-1" else IntermediaryKind.SECOND
        state = initialize(keplerian_to_polar_nodal(el, geo), geo, kind)
        rows = np.array([evaluate_at(state, float(t)) for t in epochs]).reshape(-1, 6)
        return Ephemeris(np.asarray(epochs, dtype=float), rows, "polar-nodal", {"method": method})
    if method == "reference":
        return reference_propagate(keplerian_to_cartesian(el, geo), 0.0, T, geo, ZonalModelKind.FULL, epochs)
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


@dataclass(frozen=True)
class ErrorSeries:
    """Method minus reference, per epoch; angles in rad wrapped to (-pi, pi]."""

    epochs: np.ndarray
    da: np.ndarray
    dI: np.ndarray
    dOmega: np.ndarray
    dF: np.ndarray
    dC: np.ndarray
    dS: np.ndarray

    def __len__(self) -> int:
        return len(self.epochs)

    def envelope(self, name: str) -> float:
        """Peak-to-peak excursion of one error component."""
        x = getattr(self, name)
        return float(np.ptp(x)) if len(x) else 0.0

    def slope(self, name: str) -> float:
        """Least-squares linear trend of one error component (per second)."""
        return float(np.polyfit(self.epochs, getattr(self, name), 1)[0])


def error_elements(eph: Ephemeris, geo: GeoModel = EARTH) -> np.ndarray:
    """(n, 6) array of a, I, Omega, F, C, S along an ephemeris."""
    out = np.empty((len(eph), 6))
    for k, row in enumerate(eph.polar_nodal().states):
        el = polar_nodal_to_keplerian(PolarNodal(*map(float, row)), geo)
        F, C, S = equinoctial_error_elements(el)
        out[k] = el.a, el.inc, el.raan, F, C, S
    return out


def error_series(eph: Ephemeris, reference: Ephemeris | np.ndarray, geo: GeoModel = EARTH) -> ErrorSeries:
    ref = reference if isinstance(reference, np.ndarray) else error_elements(reference, geo)
    d = error_elements(eph, geo) - ref
    d[:, 1:4] = wrap_angles(d[:, 1:4])
    return ErrorSeries(eph.epochs.copy(), *d.T.copy())


def run_comparison(
    scenario: Scenario, methods: Sequence[str] = METHODS, reference: Ephemeris | None = None
) -> dict[str, ErrorSeries]:
    """Errors of each method against the full-zonal reference oracle."""
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValueError(f"unknown method(s) {unknown}; choose from {', '.join(METHODS)}")
    epochs = scenario.epochs()
    if reference is None:
        reference = run_method(scenario, "reference", epochs)
    ref = error_elements(reference, scenario.geo)
    out = {}
    for m in methods:
        try:
            out[m] = error_series(run_method(scenario, m, epochs), ref, scenario.geo)
        except Exception as exc:
            raise ComparisonError(m, exc) from exc
    return out


# --- CSV ---

ERROR_COLUMNS = ("t_s", "da_km", "dI_deg", "dOmega_deg", "dF_deg", "dC", "dS")
EPHEMERIS_COLUMNS = ("t_s", "x_km", "y_km", "z_km", "vx_kms", "vy_kms", "vz_kms")


def _rows(obj: ErrorSeries | Ephemeris) -> tuple[tuple[str, ...], np.ndarray]:
    if isinstance(obj, ErrorSeries):
        deg = np.degrees
        cols = [obj.epochs, obj.da, deg(obj.dI), deg(obj.dOmega), deg(obj.dF), obj.dC, obj.dS]
        return ERROR_COLUMNS, np.column_stack(cols) if len(obj) else np.empty((0, 7))
    if isinstance(obj, Ephemeris):
        cart = obj.cartesian()
        return EPHEMERIS_COLUMNS, np.column_stack([cart.epochs, cart.states]) if len(obj) else np.empty((0, 7))
    raise TypeError(f"cannot write {type(obj).__name__} as CSV")


def emit_csv(obj: ErrorSeries | Ephemeris, destination) -> None:
    """Write an error series or an ephemeris as CSV with 17 significant digits."""
    header, data = _rows(obj)
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "w", newline="") as fh:
            _write(fh, header, data)
    else:
        _write(destination, header, data)


def _write(fh, header, data) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in data:
        w.writerow([format(float(v), ".17g") for v in row])


def read_csv(source) -> tuple[list[str], np.ndarray]:
    text = Path(source).read_text() if isinstance(source, (str, os.PathLike)) else source.read()
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], np.array([[float(v) for v in r] for r in rows[1:]]).reshape(-1, len(rows[0]))


# --- benchmark ---


@dataclass
class BenchReport:
    scenario: str
    output_interval: float
    n_points: int
    wall_times: dict[str, float]
    per_evaluation: dict[str, float]
    speedup: dict[str, float]
    break_even_interval: dict[str, float]
    repeats: int = 5
    notes: list[str] = field(default_factory=list)

    def format(self) -> str:
        lines = [
            f"scenario {self.scenario}: {self.n_points} epochs every {self.output_interval:g} s "
            f"(median of {self.repeats})"
        ]
        for m, t in self.wall_times.items():
            line = f"  {m:15s} {t * 1e3:10.3f} ms"
            if m in self.speedup:
                line += (
                    f"  {self.per_evaluation[m] * 1e6:8.2f} us/eval"
                    f"  speedup {self.speedup[m]:7.1f}x  break-even interval {self.break_even_interval[m]:.2f} s"
                )
            lines.append(line)
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def _median_time(fn: Callable[[], object], repeats: int, min_time: float = 0.02) -> float:
    fn()  # warm-up
    res = time.get_clock_info("perf_counter").resolution
    inner = 1
    while True:
        t = time.perf_counter()
        for _ in range(inner):
            fn()
        dt = time.perf_counter() - t
        if dt >= max(min_time, 1000 * res):
            break
        inner *= 2
    samples = [dt / inner]
    for _ in range(repeats - 1):
        t = time.perf_counter()
        for _ in range(inner):
            fn()
        samples.append((time.perf_counter() - t) / inner)
    return statistics.median(samples)


def bench(
    scenario: Scenario,
    output_interval: float | None = None,
    repeats: int = 5,
    methods: Iterable[str] = ("intermediary-1", "intermediary-2"),
    steps: int | None = None,
) -> BenchReport:
    """Wall time of RK4 Cowell (J2, 1 s step) against intermediary evaluation
    on the same output grid. File I/O is not timed."""
    if repeats < 5:
        raise ValueError("repeats must be >= 5")
    interval = scenario.output_interval_s if output_interval is None else output_interval
    epochs = output_grid(0.0, scenario.duration_s, interval, steps)
    geo = scenario.geo
    el = scenario.elements
    cs0 = keplerian_to_cartesian(el, geo)
    pn0 = keplerian_to_polar_nodal(el, geo)
    T = float(epochs[-1])
    cfg = IntegratorConfig(step=1.0, output_interval=interval)

    wall = {"cowell-j2": _median_time(lambda: propagate_cowell(cs0, 0.0, T, cfg, geo, ZonalModelKind.J2, epochs), repeats)}
    per_eval, speedup, breakeven = {}, {}, {}
    ts = [float(t) for t in epochs]
    for m in methods:
        kind = {"intermediary-1": IntermediaryKind.FIRST, "intermediary-2": IntermediaryKind.SECOND}[m]

        def run(kind=kind):
            state = initialize(pn0, geo, kind)
            return [evaluate_at(state, t) for t in ts]

        wall[m] = _median_time(run, repeats)
        per_eval[m] = wall[m] / len(ts)
        speedup[m] = wall["cowell-j2"] / wall[m]
        # analytical cost equals the integration cost at this output spacing
        breakeven[m] = (epochs[-1] - epochs[0]) * per_eval[m] / wall["cowell-j2"]
    return BenchReport(scenario.name, float(interval), len(epochs), wall, per_eval, speedup, breakeven, repeats)
