"""Tests for stationary barrier/threshold solutions and flux."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from evlab.numcore import UnitSystem, principal_sqrt
from evlab.stationary import (
    BarrierSpec,
    barrier_solution,
    flux_from_field,
    match_evanescent_slab,
    probability_flux,
    relativistic_wavenumber,
    threshold_solution,
)


def closed_form_t(E, U0, d, m=1.0, hbar=1.0):
    """Textbook transmission amplitude, referenced to the exit face."""
    k = math.sqrt(2.0 * m * E) / hbar
    kap = math.sqrt(2.0 * m * (U0 - E)) / hbar
    return 2j * k * kap / (
        2j * k * kap * math.cosh(kap * d) + (k * k - kap * kap) * math.sinh(kap * d)
    )


class TestBarrierSolution:
    def test_matches_closed_form_amplitude(self):
        for E, U0, d in [(1.0, 2.0, 0.8), (0.3, 2.0, 1.3), (1.7, 2.0, 0.4)]:
            sol = barrier_solution(E, BarrierSpec(U0, d))
            assert sol.t == pytest.approx(closed_form_t(E, U0, d), abs=1e-14)

    def test_symmetric_point_transmission(self):
        # At E = U0/2 the exterior and interior wavenumbers coincide and
        # T = 1 / cosh(kappa d)^2.
        spec = BarrierSpec(2.0, 1.0 / math.sqrt(2.0))
        sol = barrier_solution(1.0, spec)
        assert sol.k == pytest.approx(sol.kappa)
        kd = sol.kappa * spec.width_d
        assert sol.transmission == pytest.approx(1.0 / math.cosh(kd) ** 2, rel=1e-13)

    def test_unitarity(self):
        sol = barrier_solution(0.77, BarrierSpec(1.9, 2.1, 1.3))
        assert sol.transmission + sol.reflection == pytest.approx(1.0, abs=1e-13)

    @settings(max_examples=60, deadline=None)
    @given(
        st.floats(0.05, 0.95),
        st.floats(0.2, 8.0),
        st.floats(0.05, 4.0),
        st.floats(0.2, 5.0),
    )
    def test_unitarity_random(self, frac, U0, d, m):
        sol = barrier_solution(frac * U0, BarrierSpec(U0, d, m))
        assert abs(sol.transmission + sol.reflection - 1.0) < 1e-12

    def test_psi_continuous_at_interfaces(self):
        sol = barrier_solution(0.6, BarrierSpec(1.5, 1.2))
        eps = 1e-9
        for x0 in (0.0, 1.2):
            left = sol.psi(x0 - eps)
            right = sol.psi(x0 + eps)
            assert left == pytest.approx(right, abs=1e-7)

    def test_rejects_above_barrier_energy(self):
        with pytest.raises(ValueError):
            barrier_solution(2.5, BarrierSpec(2.0, 1.0))
        with pytest.raises(ValueError):
            barrier_solution(-0.1, BarrierSpec(2.0, 1.0))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            BarrierSpec(0.0, 1.0)
        with pytest.raises(ValueError):
            BarrierSpec(1.0, -1.0)


class TestThresholdSolution:
    def test_total_reflection(self):
        sol = threshold_solution(0.5, 2.0)
        assert abs(sol.r) == pytest.approx(1.0, abs=1e-15)
        assert sol.t == 0.0 and sol.F2 == 0.0

    def test_flux_vanishes_everywhere(self):
        sol = threshold_solution(0.5, 2.0)
        for x in (-3.0, -0.1, 0.0, 0.4, 5.0):
            assert abs(probability_flux(sol, x)) < 1e-14

    def test_matching_at_step(self):
        sol = threshold_solution(0.9, 1.7)
        # psi and psi' continuous at x = 0 by construction.
        assert 1.0 + sol.r == pytest.approx(sol.F1)
        assert 1j * sol.k * (1.0 - sol.r) == pytest.approx(-sol.kappa * sol.F1)


class TestFlux:
    def test_interior_flux_equals_transmitted(self):
        sol = barrier_solution(1.0, BarrierSpec(2.0, 1.0))
        j_in = probability_flux(sol, 0.5)
        j_out = probability_flux(sol, 2.0)
        assert j_in == pytest.approx(j_out, abs=1e-12)
        j_left = probability_flux(sol, -1.0)
        assert j_left == pytest.approx(j_out, abs=1e-12)

    def test_against_direct_field_derivative(self):
        sol = barrier_solution(0.8, BarrierSpec(1.6, 0.9, 1.2))
        h = 1e-6
        for x in (-2.0, 0.45, 3.0):
            dpsi = (sol.psi(x + h) - sol.psi(x - h)) / (2.0 * h)
            direct = flux_from_field(complex(sol.psi(x)), dpsi, 1.2)
            assert probability_flux(sol, x) == pytest.approx(direct, rel=1e-6)

    def test_scales_with_units(self):
        units = UnitSystem(hbar=2.0, c=1.0)
        sol = barrier_solution(1.0, BarrierSpec(2.0, 1.0), units)
        j = probability_flux(sol, 2.0, units)
        assert j == pytest.approx(2.0 * sol.k * sol.transmission)


class TestMatchEvanescentSlab:
    def test_validation(self):
        with pytest.raises(ValueError):
            match_evanescent_slab(-1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            match_evanescent_slab(1.0, 1.0, 0.0)

    def test_opaque_limit_kills_growing_wave(self):
        F1, F2, r, t = match_evanescent_slab(1.0, 1.0, 20.0)
        assert abs(F2) < abs(F1) * 1e-15
        assert abs(r) == pytest.approx(1.0, abs=1e-12)


class TestRelativisticWavenumber:
    def test_evanescent_iff_inside_mass_gap(self):
        # |E - U0| < m0 c^2 gives a purely imaginary (decaying) wavenumber.
        k = relativistic_wavenumber(1.0, 1.5, 1.0)
        assert k.real == 0.0 and k.imag > 0.0
        k = relativistic_wavenumber(3.0, 1.5, 1.0)
        assert k.imag == 0.0 and k.real > 0.0

    def test_massless_limit(self):
        k = relativistic_wavenumber(2.0, 0.5, 0.0)
        assert k == pytest.approx(1.5)

    def test_branch_is_principal(self):
        E, U0, m0 = 0.2, 1.0, 1.0
        expected = principal_sqrt((E - U0) ** 2 - m0**2)
        assert relativistic_wavenumber(E, U0, m0) == pytest.approx(expected)

    def test_negative_rest_mass_rejected(self):
        with pytest.raises(ValueError):
            relativistic_wavenumber(1.0, 0.5, -1.0)
