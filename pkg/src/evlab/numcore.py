"""Shared numerical core: unit conventions, 1D grids, complex square-root
convention, adaptive quadrature, and density moments.

Everything here is pure and immutable; natural units (hbar = c = m = 1)
are the default throughout the library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

MAX_QUAD_DEPTH = 60


class IntegrationError(RuntimeError):
    """Adaptive quadrature failed to converge; carries the best estimate."""

    def __init__(self, message: str, best_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate


@dataclass(frozen=True)
class UnitSystem:
    """Physical constants used by every formula in the library.

    Defaults to natural units. SI-flavored presets are applied only at the
    CLI layer; the library formulas never hard-code constants.
    """

    hbar: float = 1.0
    c: float = 1.0
    default_mass: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0 or self.c <= 0 or self.default_mass <= 0:
            raise ValueError("hbar, c, and default_mass must all be positive")


NATURAL_UNITS = UnitSystem()


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D grid: points x_min + i*dx for i in [0, count)."""

    x_min: float
    dx: float
    count: int

    def __post_init__(self):
        if self.dx <= 0:
            raise ValueError("dx must be positive")
        if self.count < 2:
            raise ValueError("count must be at least 2")

    @property
    def x_max(self) -> float:
        return self.x_min + (self.count - 1) * self.dx

    def points(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.count)


@dataclass(frozen=True)
class WavePacket:
    """Complex samples on a uniform 1D grid.

    The grid coordinate may be position (a spatial slice) or time (an
    envelope at a fixed position); the operations consuming it say which.
    """

    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.count,):
            raise ValueError("values length must match grid count")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def abs2(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def energy(self) -> float:
        """Discrete L2 mass: sum |psi|^2 dx."""
        return float(self.abs2().sum() * self.grid.dx)


def principal_sqrt(z: complex) -> complex:
    """Complex square root with Re(sqrt) >= 0.

    Ties on the negative real axis resolve to the positive imaginary side,
    regardless of the sign of a (possibly negative) zero imaginary part.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real < 0.0:
        return 1j * math.sqrt(-z.real)
    w = np.sqrt(complex(z))
    if w.real < 0.0:
        w = -w
    return complex(w)


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, fa, b, fb, whole, m, fm, tol, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0, True
    if depth >= MAX_QUAD_DEPTH:
        return left + right + delta / 15.0, False
    lv, lok = _adaptive(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth + 1)
    rv, rok = _adaptive(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth + 1)
    return lv + rv, lok and rok


def integrate(f, a: float, b: float, tol: float = 1e-10) -> float:
    """Adaptive Simpson quadrature of f over [a, b].

    The result I satisfies |I - integral| <= tol * max(1, |I|) for integrands
    resolvable within MAX_QUAD_DEPTH bisection levels; otherwise an
    IntegrationError carrying the best estimate is raised.
    """
    if not a < b:
        raise ValueError(f"require a < b, got a={a}, b={b}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    fa, fb = f(a), f(b)
    if not (np.isfinite(fa) and np.isfinite(fb)):
        raise ValueError("integrand not finite at interval endpoints")
    m, fm, whole = _simpson(f, a, fa, b, fb)
    # Scale estimate for the relative tolerance: a composite pass, because a
    # single Simpson panel can overestimate |I| by orders of magnitude for
    # sharply peaked integrands on wide intervals.
    xs = np.linspace(a, b, 257)
    ys = np.array([f(x) for x in xs])
    composite = float(np.trapezoid(ys, xs))
    scale = max(1.0, abs(composite))
    value, converged = _adaptive(f, a, fa, b, fb, whole, m, fm, tol * scale, 0)
    if not converged:
        raise IntegrationError(
            f"quadrature did not converge within depth {MAX_QUAD_DEPTH}", value
        )
    return value


def std_dev(density: np.ndarray, grid: Grid1D) -> float:
    """Standard deviation of a sampled non-negative density on a grid.

    The density is normalized to unit mass internally, so only relative
    weights matter.
    """
    density = np.asarray(density, dtype=float)
    if density.shape != (grid.count,):
        raise ValueError("density length must match grid count")
    if np.any(density < 0):
        raise ValueError("density must be non-negative")
    total = density.sum()
    if total <= 0:
        raise ValueError("density has zero total mass")
    x = grid.points()
    w = density / total
    mean = np.dot(w, x)
    var = np.dot(w, (x - mean) ** 2)
    return math.sqrt(max(var, 0.0))
