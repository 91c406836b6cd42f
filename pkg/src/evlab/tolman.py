"""Special-relativity bookkeeping for the superluminal-signal thought
experiment: event ordering under boosts, the two-frame round trip that
turns a faster-than-light channel into a reply arriving before the original
emission, and the attenuation tradeoff that a real evanescent barrier
imposes on that loop.

1+1 dimensional throughout; the protocol is collinear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numcore import NATURAL_UNITS, UnitSystem


@dataclass(frozen=True)
class Event:
    """A spacetime point (t, x)."""

    t: float
    x: float


@dataclass(frozen=True)
class Boost:
    """A frame velocity V along +x, |V| < c (checked against natural c = 1
    at construction; lorentz() re-checks against the units in use)."""

    V: float

    def gamma(self, units: UnitSystem = NATURAL_UNITS) -> float:
        beta = self.V / units.c
        if abs(beta) >= 1.0:
            raise ValueError(f"|V| = {abs(self.V)} must be below c = {units.c}")
        return 1.0 / math.sqrt(1.0 - beta * beta)


@dataclass(frozen=True)
class SignalLeg:
    """One hop of the relay: emission event, propagation speed (may exceed
    c), and the evanescent barrier it crosses (kappa, width) for the
    attenuation bookkeeping. The barrier width doubles as the travel
    distance of the hop."""

    speed: float
    emit: Event
    barrier_kappa: float = 0.0
    barrier_width: float = 0.0

    def __post_init__(self):
        if self.speed <= 0:
            raise ValueError("signal speed must be positive")
        if self.barrier_kappa < 0 or self.barrier_width < 0:
            raise ValueError("barrier parameters must be non-negative")

    @property
    def amplitude_factor(self) -> float:
        return math.exp(-self.barrier_kappa * self.barrier_width)


def lorentz(e: Event, b: Boost, units: UnitSystem = NATURAL_UNITS) -> Event:
    """Standard boost: t' = gamma (t - V x / c^2), x' = gamma (x - V t)."""
    g = b.gamma(units)
    c2 = units.c**2
    return Event(t=g * (e.t - b.V * e.x / c2), x=g * (e.x - b.V * e.t))


def inverse_lorentz(e: Event, b: Boost, units: UnitSystem = NATURAL_UNITS) -> Event:
    return lorentz(e, Boost(-b.V), units)


def velocity_addition(v1: float, v2: float, units: UnitSystem = NATURAL_UNITS) -> float:
    """Relativistic composition of two collinear frame velocities."""
    c2 = units.c**2
    return (v1 + v2) / (1.0 + v1 * v2 / c2)


def classify_interval(a: Event, b: Event, units: UnitSystem = NATURAL_UNITS) -> str:
    """Sign classification of c^2 dt^2 - dx^2: timelike/spacelike/lightlike."""
    dt = b.t - a.t
    dx = b.x - a.x
    s2 = (units.c * dt) ** 2 - dx**2
    scale = max((units.c * dt) ** 2 + dx**2, 1.0)
    if abs(s2) <= 1e-12 * scale:
        return "lightlike"
    return "timelike" if s2 > 0 else "spacelike"


def ordering_in_frame(
    a: Event, b: Event, boost: Boost, units: UnitSystem = NATURAL_UNITS
) -> str:
    """Time order of two events in the boosted frame.

    For a signal at speed v from a to b, the order reverses exactly when
    V v > c^2.
    """
    ta = lorentz(a, boost, units).t
    tb = lorentz(b, boost, units).t
    scale = max(abs(ta), abs(tb), 1.0)
    if abs(tb - ta) <= 1e-12 * scale:
        return "simultaneous"
    return "a_first" if ta < tb else "b_first"


def round_trip(
    leg1: SignalLeg,
    reply_delay: float,
    leg2: SignalLeg,
    frame_V: float,
    units: UnitSystem = NATURAL_UNITS,
) -> dict:
    """Two-frame relay: leg1 runs forward (+x) at its speed in the lab;
    the reply leg2 runs backward (-x) at its speed *in the frame S moving
    at frame_V* (its barrier is stationary in S), after reply_delay in S.

    Returns the lab arrival event, the time advance
    (t_emit(lab) - t_arrival(lab); positive means the reply precedes the
    original emission), the combined attenuation amplitude, and the
    causal-loop flag.
    """
    if reply_delay < 0:
        raise ValueError("reply_delay must be non-negative")
    boost = Boost(frame_V)
    boost.gamma(units)  # validates |frame_V| < c
    d1 = leg1.barrier_width
    if d1 <= 0 or leg2.barrier_width <= 0:
        raise ValueError("both legs need a positive travel distance")
    # Leg 1 in the lab: emit -> exit at the far side of the first barrier.
    exit1 = Event(t=leg1.emit.t + d1 / leg1.speed, x=leg1.emit.x + d1)
    # Hand over to S, wait there, send the reply backward at leg2.speed in S.
    handover = lorentz(exit1, boost, units)
    d2 = leg2.barrier_width
    arrival_S = Event(
        t=handover.t + reply_delay + d2 / leg2.speed, x=handover.x - d2
    )
    arrival = inverse_lorentz(arrival_S, boost, units)
    advance = leg1.emit.t - arrival.t
    amplitude = leg1.amplitude_factor * leg2.amplitude_factor
    return {
        "arrival": arrival,
        "advance": advance,
        "amplitude": amplitude,
        "causal_loop": advance > 0,
    }


def tradeoff_sweep(
    kappa: float,
    v_signal: float,
    frame_V: float,
    d_range,
    detector_threshold: float,
    units: UnitSystem = NATURAL_UNITS,
) -> list:
    """Attenuation-vs-advance tradeoff over barrier sizes.

    For each d both legs cross a barrier of decay kappa and width d at
    v_signal, so the amplitude is exp(-2 kappa d). A row is feasible when
    the loop closes (advance > 0) *and* the attenuated signal still clears
    the detector threshold.
    """
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if v_signal <= units.c:
        raise ValueError("v_signal must exceed c")
    if not 0 < detector_threshold <= 1:
        raise ValueError("detector_threshold must lie in (0, 1]")
    d_range = list(d_range)
    if not d_range:
        raise ValueError("empty d_range")
    rows = []
    for d in d_range:
        if d <= 0:
            raise ValueError("barrier widths must be positive")
        result = round_trip(
            SignalLeg(speed=v_signal, emit=Event(0.0, 0.0),
                      barrier_kappa=kappa, barrier_width=d),
            0.0,
            SignalLeg(speed=v_signal, emit=Event(0.0, 0.0),
                      barrier_kappa=kappa, barrier_width=d),
            frame_V,
            units,
        )
        amplitude = math.exp(-2.0 * kappa * d)
        rows.append({
            "d": d,
            "advance": result["advance"],
            "amplitude": amplitude,
            "detectable": amplitude >= detector_threshold,
        })
    return rows
