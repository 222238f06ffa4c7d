"""All eight closed-form oscillator modes and their analytic time derivatives.

Families and the frozen normalization (proportionality constants set to 1):

  u1 = cos(omega0 t)                      u2 = sin(omega0 t)
  v1 = omega0 / cos(omega0 t)             v2 = (omega0 t/2 + sin(2 omega0 t)/4) / (omega0 cos(omega0 t))
  U1 = exp(-i Omega_S t) * 2F1(1, -iS/omega0; 2 - iS/omega0; -exp(-2i omega0 t))
  U2 = exp(S t) * cos(omega0 t)
  V1 = exp(-S t) / cos(omega0 t)
  V2 = exp(S t) * (omega0^2/cos + 2 S omega0 sin + 2 S^2 cos)

with the quasifrequency Omega_S = (1 - iS/omega0) omega0 = omega0 - iS.
The u/v families ignore the shift; U/V use it.  U2's hypergeometric
representation reduces to an elementary product carrying an explicit
factor 2 relative to this normalization:
exp(i Omega_S t) (2 cos^2 - i sin(2 omega0 t)) = 2 U2, asserted in tests.

Derivatives are analytic everywhere: elementary formulas for seven modes
and the term-wise differentiated series for U1 (each term picks up the
chain factor -2i omega0 from z(t) = -exp(-2i omega0 t)), so finite
differences stay available as an independent verification route.  The
derivative series has a lower attainable accuracy near the tangent poles
than the value series, hence its looser default tolerance.
"""

from __future__ import annotations

import cmath
import math
from enum import Enum
from typing import Optional, Tuple

from .core import OscillatorParams, guard_singularity
from .hyp2f1 import (
    DEFAULT_MAX_TERMS,
    Hyp2F1Args,
    SeriesResult,
    SeriesUnconvergedError,
    eval_2f1_with_tangent,
    gauss_2f1,
)

__all__ = ["ModeKind", "quasifrequency", "mode", "mode_derivative", "u1_series_args"]


class ModeKind(Enum):
    u1 = "u1"
    u2 = "u2"
    v1 = "v1"
    v2 = "v2"
    U1 = "U1"
    U2 = "U2"
    V1 = "V1"
    V2 = "V2"


#: Modes with cos(omega0 t) in a denominator, singular at the tangent poles.
COS_DENOMINATOR_KINDS = frozenset({ModeKind.v1, ModeKind.v2, ModeKind.V1, ModeKind.V2})
#: Modes of the shifted families (use the shift S).
SHIFTED_KINDS = frozenset({ModeKind.U1, ModeKind.U2, ModeKind.V1, ModeKind.V2})

DEFAULT_MODE_TOL = 1e-12
DEFAULT_DERIVATIVE_TOL = 1e-9


def quasifrequency(params: OscillatorParams) -> complex:
    """Omega_S = omega0 - iS; real exactly when the shift is purely imaginary."""
    return complex(params.omega0) - 1j * params.shift


def u1_series_args(params: OscillatorParams, t: float) -> Hyp2F1Args:
    """Hypergeometric arguments of the U1 mode at time t (|z| = 1)."""
    w0 = params.omega0
    b = -1j * params.shift / w0
    return Hyp2F1Args(1.0, b, 2.0 + b, -cmath.exp(-2j * w0 * t))


def _u1_value(params: OscillatorParams, t: float, tol: float, max_terms: int) -> complex:
    res = gauss_2f1(u1_series_args(params, t), tol, max_terms)
    if not res.converged:
        raise SeriesUnconvergedError(res)
    return res.value


def _u1_value_and_tangent(
    params: OscillatorParams, t: float, tol: float, max_terms: int
) -> Tuple[SeriesResult, complex]:
    res, tangent = eval_2f1_with_tangent(u1_series_args(params, t), tol, max_terms)
    if not res.converged:
        raise SeriesUnconvergedError(res)
    return res, tangent


def mode(
    kind: ModeKind,
    params: OscillatorParams,
    t: float,
    exclusion_radius: Optional[float] = None,
    tol: float = DEFAULT_MODE_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> complex:
    """Mode value at time t under the frozen normalization.

    Raises SingularityProximityError for cos-denominator modes too close to
    a pole (when an exclusion radius is supplied) and propagates
    SeriesUnconvergedError from the U1 series.
    """
    w0 = params.omega0
    S = params.shift
    if kind in COS_DENOMINATOR_KINDS or kind is ModeKind.U1:
        guard_singularity(params, t, exclusion_radius)
    if kind is ModeKind.u1:
        return complex(math.cos(w0 * t))
    if kind is ModeKind.u2:
        return complex(math.sin(w0 * t))
    if kind is ModeKind.v1:
        return complex(w0 / math.cos(w0 * t))
    if kind is ModeKind.v2:
        p = w0 * t / 2.0 + math.sin(2.0 * w0 * t) / 4.0
        return complex(p / (w0 * math.cos(w0 * t)))
    if kind is ModeKind.U2:
        return cmath.exp(S * t) * math.cos(w0 * t)
    if kind is ModeKind.V1:
        return cmath.exp(-S * t) / math.cos(w0 * t)
    if kind is ModeKind.V2:
        cosw = math.cos(w0 * t)
        sinw = math.sin(w0 * t)
        return cmath.exp(S * t) * (w0 * w0 / cosw + 2.0 * S * w0 * sinw + 2.0 * S * S * cosw)
    if kind is ModeKind.U1:
        value = _u1_value(params, t, tol, max_terms)
        return cmath.exp(-1j * quasifrequency(params) * t) * value
    raise ValueError(f"unknown mode kind {kind!r}")


def mode_derivative(
    kind: ModeKind,
    params: OscillatorParams,
    t: float,
    exclusion_radius: Optional[float] = None,
    tol: float = DEFAULT_DERIVATIVE_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> complex:
    """d(mode)/dt at time t, analytic throughout (no finite differences)."""
    w0 = params.omega0
    S = params.shift
    if kind in COS_DENOMINATOR_KINDS or kind is ModeKind.U1:
        guard_singularity(params, t, exclusion_radius)
    cosw = math.cos(w0 * t)
    sinw = math.sin(w0 * t)
    if kind is ModeKind.u1:
        return complex(-w0 * sinw)
    if kind is ModeKind.u2:
        return complex(w0 * cosw)
    if kind is ModeKind.v1:
        return complex(w0 * w0 * sinw / (cosw * cosw))
    if kind is ModeKind.v2:
        p = w0 * t / 2.0 + math.sin(2.0 * w0 * t) / 4.0
        return complex(cosw + sinw * p / (cosw * cosw))
    if kind is ModeKind.U2:
        return cmath.exp(S * t) * (S * cosw - w0 * sinw)
    if kind is ModeKind.V1:
        return cmath.exp(-S * t) * (-S / cosw + w0 * sinw / (cosw * cosw))
    if kind is ModeKind.V2:
        w = w0 * w0 / cosw + 2.0 * S * w0 * sinw + 2.0 * S * S * cosw
        wp = w0**3 * sinw / (cosw * cosw) + 2.0 * S * w0 * w0 * cosw - 2.0 * S * S * w0 * sinw
        return cmath.exp(S * t) * (S * w + wp)
    if kind is ModeKind.U1:
        om_s = quasifrequency(params)
        res, tangent = _u1_value_and_tangent(params, t, tol, max_terms)
        # d/dt of each series term is the term times -2i*omega0*n, so the
        # series derivative is -2i*omega0 times the tangent sum.
        return cmath.exp(-1j * om_s * t) * (-1j * om_s * res.value - 2j * w0 * tangent)
    raise ValueError(f"unknown mode kind {kind!r}")
