"""Stationary (monochromatic) solutions for a potential threshold and a
rectangular barrier, probability flux, and the relativistic dispersion
relation with a complex wavenumber.

Conventions: unit incident amplitude from the left, regions

    x < 0:       exp(ikx) + r exp(-ikx)
    0 <= x <= d: F1 exp(-kappa x) + F2 exp(kappa x)
    x > d:       t exp(ik (x - d))

so |t| is the amplitude just past the exit face. Interfaces are matched by
2x2 transfer matrices (continuity of the field and its derivative); closed
forms serve only as test oracles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .numcore import NATURAL_UNITS, UnitSystem, principal_sqrt


@dataclass(frozen=True)
class BarrierSpec:
    """Rectangular barrier of height U0 and width d for a particle of mass m."""

    height_U0: float
    width_d: float
    mass_m: float = 1.0

    def __post_init__(self):
        if self.height_U0 <= 0 or self.width_d <= 0 or self.mass_m <= 0:
            raise ValueError("U0, d, and m must all be positive")


@dataclass(frozen=True)
class StationarySolution:
    """Piecewise coefficients of one monochromatic solution.

    kappa is the evanescent decay constant inside the classically forbidden
    region; k the exterior wavenumber. F1/F2 multiply the decaying/growing
    interior exponentials; r and t are the exterior reflection and
    transmission amplitudes. width_d is None for a threshold (semi-infinite
    forbidden region), in which case F2 = 0 and t = 0.
    """

    energy_E: float
    k: float
    kappa: float
    F1: complex
    F2: complex
    r: complex
    t: complex
    width_d: float | None
    mass_m: float

    @property
    def transmission(self) -> float:
        return abs(self.t) ** 2

    @property
    def reflection(self) -> float:
        return abs(self.r) ** 2

    def psi(self, x, units: UnitSystem = NATURAL_UNITS):
        """Evaluate the stationary wavefunction at position(s) x."""
        x = np.asarray(x, dtype=float)
        out = np.empty(x.shape, dtype=complex)
        left = x < 0
        out[left] = np.exp(1j * self.k * x[left]) + self.r * np.exp(-1j * self.k * x[left])
        if self.width_d is None:
            inside = ~left
            out[inside] = self.F1 * np.exp(-self.kappa * x[inside])
        else:
            inside = (~left) & (x <= self.width_d)
            out[inside] = self.F1 * np.exp(-self.kappa * x[inside]) + self.F2 * np.exp(
                self.kappa * x[inside]
            )
            beyond = x > self.width_d
            out[beyond] = self.t * np.exp(1j * self.k * (x[beyond] - self.width_d))
        return out if out.shape else complex(out)


def _wavenumbers(E: float, U0: float, m: float, units: UnitSystem):
    if E <= 0:
        raise ValueError(f"energy must be positive, got E={E}")
    if E >= U0:
        raise ValueError(
            f"E={E} is not below the barrier height U0={U0}; "
            "this solver covers only the evanescent (tunneling) regime"
        )
    hbar = units.hbar
    k = math.sqrt(2.0 * m * E) / hbar
    kappa = math.sqrt(2.0 * m * (U0 - E)) / hbar
    return k, kappa


def threshold_solution(
    E: float, U0: float, m: float = 1.0, units: UnitSystem = NATURAL_UNITS
) -> StationarySolution:
    """Total reflection from a potential step: one decaying wave for x >= 0."""
    k, kappa = _wavenumbers(E, U0, m, units)
    # Continuity of psi and psi' at x = 0 with unit incidence.
    r = (1j * k + kappa) / (1j * k - kappa)
    F1 = 1.0 + r
    return StationarySolution(
        energy_E=E, k=k, kappa=kappa, F1=F1, F2=0.0, r=r, t=0.0, width_d=None, mass_m=m
    )


def _plane_basis(k_, x):
    # Columns: value and derivative of exp(+-ikx) at position x.
    e = cmath.exp(1j * k_ * x)
    return np.array([[e, 1.0 / e], [1j * k_ * e, -1j * k_ / e]], dtype=complex)


def _evan_basis(kp, x):
    em = cmath.exp(-kp * x)
    ep = cmath.exp(kp * x)
    return np.array([[em, ep], [-kp * em, kp * ep]], dtype=complex)


def match_evanescent_slab(k_out: float, kappa: float, d: float):
    """Match an evanescent slab of decay kappa and width d between two
    half-spaces of real wavenumber k_out, unit incidence from the left.

    Returns (F1, F2, r, t) with t referenced to the exit face. Shared by the
    quantum barrier and the optical-gap transfer.
    """
    if k_out <= 0 or kappa <= 0 or d <= 0:
        raise ValueError("k_out, kappa, and d must be positive")
    # Interior coefficients expressed through a trial t = 1 at x = d, then
    # propagated back to x = 0 to read off (1, r).
    exit_state = _plane_basis(k_out, 0.0) @ np.array([1.0, 0.0], dtype=complex)
    interior = np.linalg.solve(_evan_basis(kappa, d), exit_state)
    entry_state = _evan_basis(kappa, 0.0) @ interior
    incoming = np.linalg.solve(_plane_basis(k_out, 0.0), entry_state)
    # Scale the trial so the incident amplitude is exactly 1.
    scale = 1.0 / incoming[0]
    F1, F2 = interior * scale
    return complex(F1), complex(F2), complex(incoming[1] * scale), complex(scale)


def barrier_solution(
    E: float, spec: BarrierSpec, units: UnitSystem = NATURAL_UNITS
) -> StationarySolution:
    """Tunneling through a rectangular barrier via 2x2 interface matching."""
    k, kappa = _wavenumbers(E, spec.height_U0, spec.mass_m, units)
    d = spec.width_d
    F1, F2, r, t = match_evanescent_slab(k, kappa, d)
    return StationarySolution(
        energy_E=E, k=k, kappa=kappa, F1=complex(F1), F2=complex(F2),
        r=complex(r), t=complex(t), width_d=d, mass_m=spec.mass_m,
    )


def probability_flux(
    sol: StationarySolution, x: float, units: UnitSystem = NATURAL_UNITS
) -> float:
    """Probability flux density of a stationary solution at position x.

    Uses j = (hbar/m) Im(conj(psi) dpsi/dx), positive toward +x. Inside the
    forbidden region this reduces to 2 (hbar/m) kappa Im(conj(F1) F2),
    x-independent; past the exit it is |t|^2 hbar k / m.
    """
    hbar, m = units.hbar, sol.mass_m
    in_interior = (x >= 0) if sol.width_d is None else (0 <= x <= sol.width_d)
    if in_interior:
        return 2.0 * (hbar / m) * sol.kappa * (sol.F1.conjugate() * sol.F2).imag
    if x < 0:
        return (hbar * sol.k / m) * (1.0 - abs(sol.r) ** 2)
    return (hbar * sol.k / m) * abs(sol.t) ** 2


def flux_from_field(psi, dpsi_dx, m: float, units: UnitSystem = NATURAL_UNITS) -> float:
    """Direct flux j = (hbar/m) Im(conj(psi) dpsi/dx); oracle-style evaluation."""
    return (units.hbar / m) * (psi.conjugate() * dpsi_dx).imag


def relativistic_wavenumber(
    E: float, U0: float, m0: float, units: UnitSystem = NATURAL_UNITS
) -> complex:
    """Wavenumber from (E - U0)^2 = (hbar k c)^2 + (m0 c^2)^2.

    Principal branch: k is purely imaginary (evanescent) exactly when
    |E - U0| < m0 c^2.
    """
    if m0 < 0:
        raise ValueError("rest mass must be non-negative")
    hbar, c = units.hbar, units.c
    return principal_sqrt((E - U0) ** 2 - (m0 * c**2) ** 2) / (hbar * c)
