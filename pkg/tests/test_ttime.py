"""Tests for the competing tunneling-time definitions."""

import cmath
import math

import pytest

from evlab.stationary import BarrierSpec
from evlab.ttime import (
    PathologicalRegimeError,
    dwell_time,
    dwell_time_quadrature,
    esposito_factor,
    esposito_special_energy,
    esposito_time,
    esposito_time_factor_form,
    phase_time,
    report,
    wave_period,
)
from test_stationary import closed_form_t


class TestClosedForms:
    def test_sqrt_form_value(self):
        # tau = hbar / sqrt(E (U0 - E)) in natural units.
        assert esposito_time(1.0, 2.0) == pytest.approx(1.0)
        assert esposito_time(0.5, 2.5) == pytest.approx(1.0)

    def test_factor_value(self):
        assert esposito_factor(1.0, 2.0) == pytest.approx(1.0 / (4.0 * math.pi**2))

    def test_special_energy_identities(self):
        U0 = 3.7
        Es = esposito_special_energy(U0)
        # At E_s the dimensionless factor is exactly 1 and tau equals the
        # wave period, so tau * nu = 1; both renderings of the formula agree.
        assert esposito_factor(Es, U0) == pytest.approx(1.0, abs=1e-12)
        assert esposito_time(Es, U0) == pytest.approx(wave_period(Es), rel=1e-12)
        assert esposito_time_factor_form(Es, U0) == pytest.approx(
            esposito_time(Es, U0), rel=1e-12
        )

    def test_forms_disagree_away_from_special_energy(self):
        # The two printed renderings of the same formula are inconsistent:
        # they cross only at the special energy.
        U0 = 2.0
        a = esposito_time(0.5, U0)
        b = esposito_time_factor_form(0.5, U0)
        assert abs(a - b) / a > 0.5

    def test_special_energy_identity_over_random_heights(self):
        import random
        rng = random.Random(5)
        for _ in range(100):
            U0 = rng.uniform(0.01, 100.0)
            Es = esposito_special_energy(U0)
            assert esposito_time(Es, U0) == pytest.approx(
                wave_period(Es), abs=1e-9 * wave_period(Es)
            )

    def test_incompatible_with_phase_time(self):
        # The closed form and the phase time are not proportional: their
        # ratio varies across the tunneling window.
        spec = BarrierSpec(2.0, 1.0)
        ratios = [
            esposito_time(f * 2.0, 2.0) / phase_time(f * 2.0, spec)
            for f in (0.1, 0.3, 0.5, 0.7, 0.9)
        ]
        assert max(ratios) / min(ratios) > 1.1

    def test_divergence_near_barrier_top(self):
        U0 = 1.0
        assert esposito_time_factor_form(
            0.999999 * U0, U0
        ) > 1e3 * esposito_time_factor_form(esposito_special_energy(U0), U0)

    @pytest.mark.parametrize("fn", [esposito_time, esposito_factor,
                                    esposito_time_factor_form])
    def test_pathological_regime_raises(self, fn):
        with pytest.raises(PathologicalRegimeError):
            fn(2.0, 2.0)
        with pytest.raises(PathologicalRegimeError):
            fn(2.5, 2.0)
        with pytest.raises(ValueError):
            fn(-1.0, 2.0)


class TestPhaseTime:
    def test_against_closed_form_derivative(self):
        E, U0, d = 1.0, 2.0, 1.0 / math.sqrt(2.0)
        spec = BarrierSpec(U0, d)
        h = 1e-7
        phi = lambda e: cmath.phase(closed_form_t(e, U0, d))
        oracle = (phi(E + h) - phi(E - h)) / (2.0 * h)
        assert phase_time(E, spec) == pytest.approx(oracle, rel=1e-6)

    def test_second_order_step_convergence(self):
        spec = BarrierSpec(2.0, 1.0 / math.sqrt(2.0))
        t1 = phase_time(1.0, spec, h=1e-3)
        t2 = phase_time(1.0, spec, h=5e-4)
        t3 = phase_time(1.0, spec, h=2.5e-4)
        ratio = (t1 - t2) / (t2 - t3)
        assert ratio == pytest.approx(4.0, rel=0.05)

    def test_hartman_saturation_to_opaque_limit(self):
        # For an opaque barrier the phase time saturates at 2 m / (hbar k kappa)
        # independently of the width; here k = kappa = sqrt(2), so the limit is 1.
        spec10 = BarrierSpec(2.0, 10.0)
        spec14 = BarrierSpec(2.0, 14.0)
        t10 = phase_time(1.0, spec10)
        t14 = phase_time(1.0, spec14)
        assert t10 == pytest.approx(1.0, rel=1e-6)
        assert abs(t10 - t14) / t10 < 1e-6

    def test_requires_tunneling_regime(self):
        spec = BarrierSpec(2.0, 1.0)
        with pytest.raises(ValueError):
            phase_time(2.5, spec)


class TestDwellTime:
    def test_closed_form_matches_quadrature(self):
        spec = BarrierSpec(2.0, 1.3, 1.1)
        for E in (0.4, 1.0, 1.8):
            assert dwell_time(E, spec) == pytest.approx(
                dwell_time_quadrature(E, spec), rel=1e-9
            )

    def test_positive_and_below_phase_time_when_opaque(self):
        spec = BarrierSpec(2.0, 8.0)
        td = dwell_time(1.0, spec)
        assert 0.0 < td < phase_time(1.0, spec)


class TestReport:
    def test_all_definitions_present(self):
        rep = report(1.0, BarrierSpec(2.0, 1.0))
        assert rep.esposito_tau == pytest.approx(1.0)
        assert rep.factor_A is not None
        assert rep.phase_time > 0 and rep.dwell_time > 0
        assert rep.period_T == pytest.approx(2.0 * math.pi)

    def test_sweep_crosses_barrier_top_without_raising(self):
        rep = report(2.5, BarrierSpec(2.0, 1.0))
        assert rep.esposito_tau is None and rep.factor_A is None
        assert math.isnan(rep.phase_time) and math.isnan(rep.dwell_time)
        assert rep.period_T > 0
