"""Shared domain types and singularity-aware grid construction.

Everything downstream (frequency profiles, closed-form modes, the series
engine, the ODE oracle) works on open time intervals between the poles of
tan(omega0*t), which sit at odd multiples of pi/(2*omega0).  This module
owns that geometry: locating the poles, keeping sample points a safe
distance away from them, and the small record types passed between
modules.

All types are immutable after construction and safe to share across
threads.  Times, frequencies and shifts are dimensionless; the caller
supplies consistent units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

__all__ = [
    "SingularityProximityError",
    "OscillatorParams",
    "TimeGrid",
    "Trace",
    "Verdict",
    "Classification",
    "default_exclusion_radius",
    "singularity_locations",
    "nearest_singularity_distance",
    "build_grid",
]

# Default exclusion keeps |tan(omega0*t)| <= O(10^2), bounding rounding-error
# amplification in the tan-based frequency profiles.
DEFAULT_EXCLUSION_FACTOR = 1e-2


class SingularityProximityError(ValueError):
    """A time sample fell inside the exclusion ball of a tangent pole."""


@dataclass(frozen=True)
class OscillatorParams:
    """Natural frequency and complex shift of the oscillator family.

    omega0 is the strictly positive angular frequency (radians per unit
    time).  shift is the constant complex shift S applied to the Riccati
    solution; it carries the dimension of a frequency.  For the purely
    imaginary case S = i*s the imaginary part is exposed as ``s``.
    """

    omega0: float
    shift: complex = 0j

    def __post_init__(self) -> None:
        if not (math.isfinite(self.omega0) and self.omega0 > 0.0):
            raise ValueError(f"omega0 must be finite and > 0, got {self.omega0!r}")
        object.__setattr__(self, "shift", complex(self.shift))
        if not (math.isfinite(self.shift.real) and math.isfinite(self.shift.imag)):
            raise ValueError(f"shift must be finite, got {self.shift!r}")

    @property
    def s(self) -> float:
        """Imaginary part of the shift (the ``s`` in S = i*s)."""
        return self.shift.imag

    @property
    def shift_is_imaginary(self) -> bool:
        return self.shift.real == 0.0

    @property
    def period(self) -> float:
        """Period pi/omega0 shared by every tan-based profile and mode."""
        return math.pi / self.omega0


def default_exclusion_radius(params: OscillatorParams) -> float:
    return DEFAULT_EXCLUSION_FACTOR * math.pi / params.omega0


def singularity_locations(
    params: OscillatorParams, window: Tuple[float, float]
) -> list[float]:
    """All poles t* = (k + 1/2) * pi/omega0 inside the open window, ascending.

    Raises ValueError for an empty or non-finite window.
    """
    lo, hi = float(window[0]), float(window[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ValueError(f"invalid window ({lo}, {hi})")
    T = math.pi / params.omega0
    k_min = math.ceil(lo / T - 0.5)
    k_max = math.floor(hi / T - 0.5)
    out = []
    for k in range(k_min, k_max + 1):
        t_star = (k + 0.5) * T
        if lo < t_star < hi:
            out.append(t_star)
    return out


def nearest_singularity_distance(params: OscillatorParams, t: float) -> float:
    """Distance from t to the nearest pole of tan(omega0*t)."""
    T = math.pi / params.omega0
    k = round(t / T - 0.5)
    return abs(t - (k + 0.5) * T)


def guard_singularity(
    params: OscillatorParams, t: float, exclusion_radius: Optional[float]
) -> None:
    """Raise SingularityProximityError if t is within the exclusion ball."""
    if exclusion_radius is not None:
        d = nearest_singularity_distance(params, t)
        if d < exclusion_radius:
            raise SingularityProximityError(
                f"t={t!r} is {d:.3g} from a tangent pole (< {exclusion_radius:.3g})"
            )


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class TimeGrid:
    """Sample times inside open intervals between tangent poles.

    intervals are the surviving open sub-intervals of the requested window
    after removing the exclusion balls; every point lies in one of them and
    keeps at least ``exclusion_radius`` distance from every pole.  Boundary
    membership is checked with a 1e-12 relative slack so points that land
    exactly on an interval edge (distance == exclusion_radius) are legal.
    """

    intervals: Tuple[Tuple[float, float], ...]
    points: np.ndarray
    exclusion_radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", _readonly(np.asarray(self.points, dtype=float)))
        pts = self.points
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("grid needs at least one point")
        if not np.all(np.diff(pts) > 0.0):
            raise ValueError("grid points must be strictly increasing")
        if self.exclusion_radius <= 0.0:
            raise ValueError("exclusion_radius must be > 0")
        slack = 1e-12 * max(1.0, float(np.max(np.abs(pts))))
        for t in pts:
            if not any(lo - slack <= t <= hi + slack for lo, hi in self.intervals):
                raise ValueError(f"grid point {t!r} lies outside every interval")

    def __len__(self) -> int:
        return int(self.points.size)


def build_grid(
    params: OscillatorParams,
    window: Tuple[float, float],
    n_points: int,
    exclusion_radius: Optional[float] = None,
) -> TimeGrid:
    """Uniform samples over the window minus exclusion balls around poles.

    n_points midpoints are laid out uniformly over the open window; any
    point closer than exclusion_radius to a pole of tan(omega0*t) is
    dropped.  Raises ValueError when no point survives, when n_points is
    not positive, or when the radius is at least half the pole spacing
    pi/(2*omega0) (no interval could survive it).
    """
    lo, hi = float(window[0]), float(window[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ValueError(f"invalid window ({lo}, {hi})")
    if n_points <= 0:
        raise ValueError("n_points must be positive")
    eps = default_exclusion_radius(params) if exclusion_radius is None else float(exclusion_radius)
    if not (0.0 < eps < math.pi / (2.0 * params.omega0)):
        raise ValueError(
            f"exclusion_radius must lie in (0, pi/(2*omega0)) = (0, {math.pi/(2*params.omega0):.6g})"
        )

    h = (hi - lo) / n_points
    candidates = [lo + (i + 0.5) * h for i in range(n_points)]
    kept = [t for t in candidates if nearest_singularity_distance(params, t) >= eps]
    if not kept:
        raise ValueError("no grid points survive the exclusion balls")

    # Surviving open sub-intervals: window minus the balls of nearby poles.
    sings = singularity_locations(params, (lo - eps, hi + eps))
    edges = [lo]
    for t_star in sings:
        edges.extend((t_star - eps, t_star + eps))
    edges.append(hi)
    intervals = []
    for a, b in zip(edges[::2], edges[1::2]):
        a, b = max(a, lo), min(b, hi)
        if a < b:
            intervals.append((a, b))
    return TimeGrid(tuple(intervals), np.array(kept), eps)


@dataclass(frozen=True)
class Trace:
    """Complex samples over strictly increasing times, with a label."""

    times: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "times", _readonly(np.asarray(self.times, dtype=float)))
        object.__setattr__(self, "values", _readonly(np.asarray(self.values, dtype=complex)))
        if self.times.shape != self.values.shape or self.times.ndim != 1:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0.0):
            raise ValueError("times must be strictly increasing")

    def __len__(self) -> int:
        return int(self.times.size)


class Verdict(Enum):
    PERIODIC = "Periodic"
    ANTIPERIODIC = "Antiperiodic"
    QUASIPERIODIC_BOUNDED = "QuasiperiodicBounded"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class Classification:
    """Boundedness/periodicity verdict with its integer witness.

    witness_m is present exactly for the Periodic family s = (2m-1)*omega0
    and the Antiperiodic family s = 2m*omega0 (m != 0); reference_period is
    pi/omega0, the period against which (anti)periodicity is stated.
    """

    verdict: Verdict
    witness_m: Optional[int]
    reference_period: float

    def __post_init__(self) -> None:
        has_witness = self.witness_m is not None
        wants_witness = self.verdict in (Verdict.PERIODIC, Verdict.ANTIPERIODIC)
        if has_witness != wants_witness:
            raise ValueError(
                f"witness_m must be present iff verdict is (anti)periodic; "
                f"got verdict={self.verdict.value}, witness_m={self.witness_m!r}"
            )
        if not (math.isfinite(self.reference_period) and self.reference_period > 0):
            raise ValueError("reference_period must be finite and positive")
