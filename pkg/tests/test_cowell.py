import math

import numpy as np
import pytest

from _oracles import two_body
from leoint.core import EARTH, CartesianState, KeplerianElements, cartesian_to_keplerian, keplerian_to_cartesian
from leoint.cowell import (
    Ephemeris,
    IntegrationError,
    IntegratorConfig,
    output_grid,
    propagate_cowell,
    reference_propagate,
    rk4_step,
)
from leoint.forces import ZonalModelKind, total_energy

FULL, J2, KEPLER = ZonalModelKind.FULL, ZonalModelKind.J2, ZonalModelKind.KEPLER
DAY = 86400.0


def closure(h, a=7000.0):
    el = KeplerianElements(a, 0.0, 0.9, 0.3, 0.0, 0.0)
    cs = keplerian_to_cartesian(el)
    period = 2 * math.pi * math.sqrt(a**3 / EARTH.mu)
    eph = propagate_cowell(cs, 0.0, period, IntegratorConfig(step=h), EARTH, KEPLER, np.array([0.0, period]))
    return np.linalg.norm(eph.states[-1, :3] - cs.position)


class TestConfig:
    @pytest.mark.parametrize("kw", [{"step": 0.0}, {"tolerance": 1e-16}, {"tolerance": 1e-5}, {"output_interval": -1}])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            IntegratorConfig(**kw)


class TestGrid:
    def test_interval_count(self):
        assert len(output_grid(0.0, DAY, 240.0)) == 361
        assert len(output_grid(0.0, 1000.0, 300.0)) == 4

    def test_step_count(self):
        g = output_grid(0.0, DAY, steps=333)
        assert len(g) == 334 and g[-1] == DAY
        assert np.allclose(np.diff(g), DAY / 333)

    def test_rejects(self):
        with pytest.raises(ValueError):
            output_grid(10.0, 5.0, 1.0)
        with pytest.raises(ValueError):
            output_grid(0.0, 5.0, 0.0)


class TestRK4:
    def test_straight_line(self):
        y = (1.0, 2.0, 3.0, 0.5, -0.25, 2.0)
        out = rk4_step(y, 2.0, lambda s: (s[3], s[4], s[5], 0.0, 0.0, 0.0))
        assert out == (2.0, 1.5, 7.0, 0.5, -0.25, 2.0)

    def test_nonfinite_derivative(self):
        with pytest.raises(IntegrationError):
            rk4_step([1.0], 1.0, lambda s: [float("nan")])

    def test_rejects_step(self):
        with pytest.raises(ValueError):
            rk4_step([1.0], 0.0, lambda s: [0.0])

    def test_one_period_closure(self):
        assert closure(1.0) < 1e-6

    def test_fourth_order(self):
        # at 1 s the truncation error is already below round-off
        e60, e30, e15 = closure(60.0), closure(30.0), closure(15.0)
        assert 12.0 < e60 / e30 < 20.0
        assert 12.0 < e30 / e15 < 20.0

    def test_generic_step_matches_orbit_step(self):
        from leoint.forces import make_acceleration

        acc = make_acceleration(EARTH, FULL)
        cs = keplerian_to_cartesian(KeplerianElements(7000.0, 0.01, 1.0, 0.2, 0.3, 0.4))
        y = (*cs.position, *cs.velocity)
        generic = rk4_step(y, 10.0, lambda s: (s[3], s[4], s[5], *acc(s[0], s[1], s[2])))
        eph = propagate_cowell(cs, 0.0, 10.0, IntegratorConfig(step=10.0), EARTH, FULL, np.array([0.0, 10.0]))
        assert np.allclose(eph.states[-1], generic, rtol=1e-15, atol=1e-12)


class TestCowell:
    def test_uneven_output_lands_on_epochs(self):
        cs = keplerian_to_cartesian(KeplerianElements(7000.0, 0.0, 0.5, 0, 0, 0))
        ep = np.array([0.0, 2.5, 7.25])
        eph = propagate_cowell(cs, 0.0, 7.25, IntegratorConfig(step=1.0), EARTH, KEPLER, ep)
        for t, row in zip(ep, eph.states):
            r, _ = two_body(cs.position, cs.velocity, EARTH.mu, t)
            assert np.allclose(row[:3], r, atol=1e-9)

    def test_grid_must_start_at_t0(self):
        cs = keplerian_to_cartesian(KeplerianElements(7000.0, 0.0, 0.5, 0, 0, 0))
        with pytest.raises(ValueError):
            propagate_cowell(cs, 0.0, 10.0, IntegratorConfig(), EARTH, KEPLER, np.array([1.0, 10.0]))

    def test_spot4_conservation(self, spot4):
        cs = keplerian_to_cartesian(spot4.elements)
        eph = propagate_cowell(cs, 0.0, DAY, IntegratorConfig(), EARTH, FULL)
        e0 = total_energy(cs)
        e1 = total_energy(eph.state(len(eph) - 1))
        N = [np.cross(s[:3], s[3:])[2] for s in (eph.states[0], eph.states[-1])]
        assert abs(e1 / e0 - 1) < 1e-9
        assert abs(N[1] / N[0] - 1) < 1e-10


class TestReference:
    def test_kepler_matches_two_body(self, spot4):
        cs = keplerian_to_cartesian(spot4.elements)
        eph = reference_propagate(cs, 0.0, DAY, EARTH, KEPLER, output_interval=3600.0)
        worst = max(
            np.linalg.norm(row[:3] - two_body(cs.position, cs.velocity, EARTH.mu, t)[0])
            for t, row in zip(eph.epochs, eph.states)
        )
        assert worst < 1e-8

    def test_deterministic(self, spot4):
        cs = keplerian_to_cartesian(spot4.elements)
        a = reference_propagate(cs, 0.0, 6000.0, EARTH, FULL)
        b = reference_propagate(cs, 0.0, 6000.0, EARTH, FULL)
        assert np.array_equal(a.states, b.states)

    def test_conservation_and_self_agreement(self, spot4):
        cs = keplerian_to_cartesian(spot4.elements)
        fine = reference_propagate(cs, 0.0, DAY, EARTH, FULL, tolerance=1e-13)
        coarse = reference_propagate(cs, 0.0, DAY, EARTH, FULL, tolerance=1e-12)
        assert np.abs(fine.states[:, :3] - coarse.states[:, :3]).max() < 1e-6
        e0 = total_energy(cs)
        end = fine.state(len(fine) - 1)
        assert abs(total_energy(end) / e0 - 1) < 1e-12
        N0 = np.cross(cs.position, cs.velocity)[2]
        assert abs(np.cross(end.position, end.velocity)[2] / N0 - 1) < 1e-13

    def test_agrees_with_rk4(self, spot4):
        cs = keplerian_to_cartesian(spot4.elements)
        ep = output_grid(0.0, DAY, 3600.0)
        ref = reference_propagate(cs, 0.0, DAY, EARTH, FULL, ep)
        rk = propagate_cowell(cs, 0.0, DAY, IntegratorConfig(step=1.0), EARTH, FULL, ep)
        assert np.abs(ref.states[:, :3] - rk.states[:, :3]).max() < 1e-5

    @pytest.mark.slow
    def test_agrees_with_fine_rk4(self, spot4):
        cs = keplerian_to_cartesian(spot4.elements)
        ep = output_grid(0.0, DAY, 3600.0)
        ref = reference_propagate(cs, 0.0, DAY, EARTH, FULL, ep)
        rk = propagate_cowell(cs, 0.0, DAY, IntegratorConfig(step=0.1), EARTH, FULL, ep)
        assert np.abs(ref.states[:, :3] - rk.states[:, :3]).max() < 1e-5

    def test_j2_only_node_drifts_secularly(self, spot4):
        cs = keplerian_to_cartesian(spot4.elements)
        ep = output_grid(0.0, DAY, 240.0)
        full = reference_propagate(cs, 0.0, DAY, EARTH, FULL, ep)
        j2 = reference_propagate(cs, 0.0, DAY, EARTH, J2, ep)
        d = np.array([
            math.remainder(cartesian_to_keplerian(CartesianState(a[:3], a[3:])).raan
                           - cartesian_to_keplerian(CartesianState(b[:3], b[3:])).raan, 2 * math.pi)
            for a, b in zip(j2.states, full.states)
        ])
        slope = np.polyfit(ep, d, 1)[0]
        resid = d - np.polyval(np.polyfit(ep, d, 1), ep)
        assert abs(slope) * DAY > 5 * np.ptp(resid)


class TestEphemeris:
    def test_increasing_epochs(self):
        with pytest.raises(ValueError):
            Ephemeris(np.array([0.0, 0.0]), np.zeros((2, 6)))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            Ephemeris(np.array([0.0, 1.0]), np.zeros((3, 6)))

    def test_chart_round_trip(self, spot4):
        cs = keplerian_to_cartesian(spot4.elements)
        eph = propagate_cowell(cs, 0.0, 2400.0, IntegratorConfig(), EARTH, FULL)
        back = eph.polar_nodal().cartesian()
        assert np.allclose(back.states, eph.states, rtol=0, atol=1e-9)
        assert eph.cartesian() is eph
