"""Independent verification machinery: adaptive integration, Wronskians, operators.

Nothing here reuses the closed forms it is meant to check: the integrator
advances y'' + Omega^2(t) y = 0 as a first-order complex system with an
embedded Dormand-Prince 5(4) pair, and the factorization operators are
applied with finite differences of mode values only.

Step-size control is PI (Gustafsson) on the max-norm over the four real
components of the complex state, with requested output times hit by exact
step landing.  Each integration owns its mutable state; separate
integrations can run concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from .core import OscillatorParams, Trace, singularity_locations
from .modes import ModeKind, mode, mode_derivative
from .profiles import ProfileKind, freq_sq
from .riccati import riccati_shifted

__all__ = [
    "IVP",
    "IntegrationResult",
    "StepSizeUnderflowError",
    "FactorOrder",
    "integrate",
    "wronskian",
    "factorization_apply",
]

_TAN_PROFILE_KINDS = frozenset(
    {
        ProfileKind.PARTNER_V,
        ProfileKind.SHIFTED_U,
        ProfileKind.SHIFTED_V,
        ProfileKind.IMAG_SHIFT_U,
        ProfileKind.IMAG_SHIFT_V,
    }
)


class StepSizeUnderflowError(RuntimeError):
    """Step control collapsed; reports the time of failure."""

    def __init__(self, t: float):
        super().__init__(f"step size underflow at t = {t!r}")
        self.t = t


@dataclass(frozen=True)
class IVP:
    """Initial value problem for y'' + Omega^2(t) y = 0 on [t0, t1].

    The interval must lie strictly inside one singularity-free interval of
    the selected profile (checked against the tangent poles for tan-based
    kinds).
    """

    kind: ProfileKind
    params: OscillatorParams
    y0: complex
    dy0: complex
    t0: float
    t1: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t0) and math.isfinite(self.t1)) or self.t0 >= self.t1:
            raise ValueError(f"invalid integration interval [{self.t0}, {self.t1}]")
        for name in ("y0", "dy0"):
            v = complex(getattr(self, name))
            object.__setattr__(self, name, v)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"{name} must be finite")
        if self.kind in _TAN_PROFILE_KINDS:
            inside = singularity_locations(self.params, (self.t0, self.t1))
            at_edge = any(
                min(abs(e - self.t0), abs(e - self.t1)) == 0.0
                for e in singularity_locations(
                    self.params, (self.t0 - 1e-300, self.t1 + 1e-300)
                )
            )
            if inside or at_edge:
                raise ValueError(
                    f"[{self.t0}, {self.t1}] is not singularity-free for {self.kind.value}"
                )


@dataclass(frozen=True)
class IntegrationResult:
    times: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray
    n_steps: int
    n_rejected: int

    def to_trace(self, label: str = "y") -> Trace:
        return Trace(self.times, self.values, label)

    def derivative_trace(self, label: str = "dy") -> Trace:
        return Trace(self.times, self.derivatives, label)


# Dormand-Prince 5(4) tableau (FSAL).
_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0)
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
# Fifth-order propagating weights are the last A row; E = b5 - b4.
_E = (
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

_SAFETY = 0.9
_PI_ALPHA = 0.7 / 5.0
_PI_BETA = 0.4 / 5.0
_FAC_MIN = 0.2
_FAC_MAX = 5.0
_MAX_STEPS = 2_000_000


def _err_norm(
    ey: complex, ev: complex, y0: complex, v0: complex, y1: complex, v1: complex,
    abs_tol: float, rel_tol: float,
) -> float:
    # Max over the four real components, each scaled by atol + rtol*max(old, new).
    worst = 0.0
    for e, o, n in (
        (ey.real, y0.real, y1.real),
        (ey.imag, y0.imag, y1.imag),
        (ev.real, v0.real, v1.real),
        (ev.imag, v0.imag, v1.imag),
    ):
        sc = abs_tol + rel_tol * max(abs(o), abs(n))
        r = abs(e) / sc
        if r > worst:
            worst = r
    return worst


def integrate(
    ivp: IVP,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-12,
    output_times: Optional[Sequence[float]] = None,
    max_steps: int = _MAX_STEPS,
) -> IntegrationResult:
    """Integrate the IVP; values and derivatives are recorded at output_times.

    output_times defaults to [t1]; times must be nondecreasing and inside
    [t0, t1] (t0 itself is allowed and reports the initial data).
    Tolerances below 1e-13 are rejected.  Raises StepSizeUnderflowError if
    step control collapses, which is expected only when the
    singularity-free precondition is violated.
    """
    if rel_tol < 1e-13 or abs_tol < 1e-13:
        raise ValueError("tolerances must be >= 1e-13")
    targets = [ivp.t1] if output_times is None else [float(t) for t in output_times]
    if not targets:
        raise ValueError("output_times must be nonempty")
    lo_slack = 1e-12 * max(1.0, abs(ivp.t0), abs(ivp.t1))
    for a, b in zip(targets, targets[1:]):
        if b <= a:
            raise ValueError("output_times must be strictly increasing")
    if targets[0] < ivp.t0 - lo_slack or targets[-1] > ivp.t1 + lo_slack:
        raise ValueError("output_times must lie within [t0, t1]")

    kind, params = ivp.kind, ivp.params

    def rhs(t: float, y: complex, v: complex) -> Tuple[complex, complex]:
        return v, -freq_sq(kind, params, t) * y

    out_t: list[float] = []
    out_y: list[complex] = []
    out_v: list[complex] = []

    t = ivp.t0
    y, v = ivp.y0, ivp.dy0
    idx = 0
    while idx < len(targets) and targets[idx] <= t + lo_slack:
        out_t.append(targets[idx])
        out_y.append(y)
        out_v.append(v)
        idx += 1

    fy, fv = rhs(t, y, v)
    span = ivp.t1 - ivp.t0
    # Modest first step; the controller adapts within a few steps.
    scale = abs_tol + rel_tol * max(abs(y), abs(v), 1.0)
    fmag = max(abs(fy), abs(fv), 1e-8)
    h = min(span / 10.0, 0.1 * (scale**0.2) / fmag, span)
    h = max(h, 1e-10 * span)

    err_prev = 1.0
    n_steps = 0
    n_rejected = 0
    ky = [0j] * 7
    kv = [0j] * 7
    while idx < len(targets):
        if n_steps + n_rejected > max_steps:
            raise StepSizeUnderflowError(t)
        target = targets[idx]
        clipped = False
        if t + h >= target - lo_slack:
            h = target - t
            clipped = True
        if h <= 16.0 * _EPS_TIME * max(1.0, abs(t)):
            raise StepSizeUnderflowError(t)

        ky[0], kv[0] = fy, fv
        for i in range(1, 7):
            ai = _A[i]
            yy = y
            vv = v
            for j, aij in enumerate(ai):
                if aij != 0.0:
                    yy += h * aij * ky[j]
                    vv += h * aij * kv[j]
            ky[i], kv[i] = rhs(t + _C[i] * h, yy, vv)
        # Stage 7 input is the 5th-order solution (FSAL).
        y_new = yy
        v_new = vv
        ey = 0j
        ev = 0j
        for i in range(7):
            if _E[i] != 0.0:
                ey += h * _E[i] * ky[i]
                ev += h * _E[i] * kv[i]
        err = _err_norm(ey, ev, y, v, y_new, v_new, abs_tol, rel_tol)
        if err <= 1.0:
            t_new = target if clipped else t + h
            t, y, v = t_new, y_new, v_new
            fy, fv = ky[6], kv[6]
            n_steps += 1
            while idx < len(targets) and targets[idx] <= t + lo_slack:
                out_t.append(targets[idx])
                out_y.append(y)
                out_v.append(v)
                idx += 1
            fac = _SAFETY * err ** (-_PI_ALPHA) * err_prev**_PI_BETA if err > 0 else _FAC_MAX
            err_prev = max(err, 1e-16)
        else:
            n_rejected += 1
            fac = max(_FAC_MIN, _SAFETY * err ** (-0.2))
        h = h * min(_FAC_MAX, max(_FAC_MIN, fac))

    return IntegrationResult(
        np.array(out_t, dtype=float),
        np.array(out_y, dtype=complex),
        np.array(out_v, dtype=complex),
        n_steps,
        n_rejected,
    )


_EPS_TIME = 2.220446049250313e-16


def wronskian(
    f: ModeKind,
    g: ModeKind,
    params: OscillatorParams,
    t: float,
    exclusion_radius: Optional[float] = None,
) -> complex:
    """f(t) g'(t) - f'(t) g(t) using the analytic mode derivatives."""
    return mode(f, params, t, exclusion_radius) * mode_derivative(g, params, t, exclusion_radius) - mode_derivative(
        f, params, t, exclusion_radius
    ) * mode(g, params, t, exclusion_radius)


class FactorOrder(Enum):
    PLUS_MINUS = "PlusMinus"  # (d/dt + R_S)(d/dt - R_S), annihilates the U family
    MINUS_PLUS = "MinusPlus"  # (d/dt - R_S)(d/dt + R_S), annihilates the V family


def _factorization_once(
    order: FactorOrder, params: OscillatorParams, kind: ModeKind, t: float, h: float
) -> complex:
    y = {k: mode(kind, params, t + k * h) for k in (-2, -1, 0, 1, 2)}
    rs = {k: riccati_shifted(params, t + k * h) for k in (-1, 0, 1)}
    sgn = 1.0 if order is FactorOrder.PLUS_MINUS else -1.0
    # inner bracket w = y' -/+ R_S y, outer bracket w' +/- R_S w
    w = {k: (y[k + 1] - y[k - 1]) / (2.0 * h) - sgn * rs[k] * y[k] for k in (-1, 0, 1)}
    return (w[1] - w[-1]) / (2.0 * h) + sgn * rs[0] * w[0]


def factorization_apply(
    order: FactorOrder,
    params: OscillatorParams,
    kind: ModeKind,
    t: float,
    step: float = 1e-4,
) -> complex:
    """Apply the two first-order factor brackets numerically; returns the residual.

    Derivatives of the mode come from central differences on a five-point
    stencil with one Richardson level; R_S is taken from the Riccati
    module.  The residual vanishes (to truncation error) for the matching
    pair: PlusMinus on U-family modes, MinusPlus on V-family modes, and
    either order on u1 when S = 0.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    coarse = _factorization_once(order, params, kind, t, step)
    fine = _factorization_once(order, params, kind, t, 0.5 * step)
    return (4.0 * fine - coarse) / 3.0
