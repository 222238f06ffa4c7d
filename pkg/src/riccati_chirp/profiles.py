"""Time-dependent frequency-squared profiles and parametric pump functions.

Six profiles Omega^2(t) drive the oscillator families y'' + Omega^2(t) y = 0:

  ConstantOmega0Sq  omega0**2
  PartnerV          -omega0**2 * (1 + 2 tan^2)
  ShiftedU          omega0**2 * (1 - S^2/omega0^2 + 2 (S/omega0) tan)
  ShiftedV          -omega0**2 * (1 + S^2/omega0^2 - 2 (S/omega0) tan + 2 tan^2)
  ImagShiftU        omega0**2 * (1 + s^2/omega0^2 + 2i (s/omega0) tan)
  ImagShiftV        omega0**2 * (-1 + s^2/omega0^2 - 2 tan^2 + 2i (s/omega0) tan)

with tan = tan(omega0*t) and s = Im S.  The ImagShift kinds are the general
shifted kinds specialised to a purely imaginary shift; they are kept as
separate formulas so tests can confirm the two transcriptions agree when
Re S = 0.  All values are returned complex even when mathematically real,
so downstream code has a single numeric path.

The pumps rewrite the imaginary-shift equations as parametrically excited
harmonic oscillators:

  U'' + omega0^2 U = -omega0^2 h(t) U   with  Omega_U^2 = omega0^2 (1 + h)
  V'' + s^2 V      = -s^2 g(t) V        with  Omega_V^2 = s^2 (1 + g)

so h(t) = sigma^2 + 2i sigma tan(omega0 t) and
g(t) = 2i sigma^-1 tan - 2 sigma^-2 tan^2 - sigma^-2, sigma = s/omega0.
The reconstruction identities above are exact by construction and are what
the consistency checks assert.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Optional

from .core import OscillatorParams, guard_singularity

__all__ = ["ProfileKind", "freq_sq", "pump_h", "pump_g"]


class ProfileKind(Enum):
    CONSTANT_OMEGA0_SQ = "ConstantOmega0Sq"
    PARTNER_V = "PartnerV"
    SHIFTED_U = "ShiftedU"
    SHIFTED_V = "ShiftedV"
    IMAG_SHIFT_U = "ImagShiftU"
    IMAG_SHIFT_V = "ImagShiftV"


_TAN_KINDS = frozenset(
    {
        ProfileKind.PARTNER_V,
        ProfileKind.SHIFTED_U,
        ProfileKind.SHIFTED_V,
        ProfileKind.IMAG_SHIFT_U,
        ProfileKind.IMAG_SHIFT_V,
    }
)


def _require_imaginary_shift(params: OscillatorParams, what: str) -> float:
    if not params.shift_is_imaginary:
        raise ValueError(f"{what} requires a purely imaginary shift, got S={params.shift!r}")
    return params.s


def freq_sq(
    kind: ProfileKind,
    params: OscillatorParams,
    t: float,
    exclusion_radius: Optional[float] = None,
) -> complex:
    """Omega^2(t) for the selected profile kind."""
    w0 = params.omega0
    w2 = w0 * w0
    if kind is ProfileKind.CONSTANT_OMEGA0_SQ:
        return complex(w2)
    if kind not in _TAN_KINDS:
        raise ValueError(f"unknown profile kind {kind!r}")
    guard_singularity(params, t, exclusion_radius)
    tn = math.tan(w0 * t)
    if kind is ProfileKind.PARTNER_V:
        return complex(-w2 * (1.0 + 2.0 * tn * tn))
    if kind is ProfileKind.SHIFTED_U:
        S = params.shift
        return w2 * (1.0 - S * S / w2 + 2.0 * (S / w0) * tn)
    if kind is ProfileKind.SHIFTED_V:
        S = params.shift
        return -w2 * (1.0 + S * S / w2 - 2.0 * (S / w0) * tn + 2.0 * tn * tn)
    s = _require_imaginary_shift(params, f"profile {kind.value}")
    if kind is ProfileKind.IMAG_SHIFT_U:
        return w2 * complex(1.0 + (s * s) / w2, 2.0 * (s / w0) * tn)
    return w2 * complex(-1.0 + (s * s) / w2 - 2.0 * tn * tn, 2.0 * (s / w0) * tn)


def pump_h(
    params: OscillatorParams, t: float, exclusion_radius: Optional[float] = None
) -> complex:
    """Pump of the U family: omega0^2 * (1 + pump_h) equals the ImagShiftU profile."""
    s = _require_imaginary_shift(params, "pump_h")
    guard_singularity(params, t, exclusion_radius)
    sigma = s / params.omega0
    tn = math.tan(params.omega0 * t)
    return complex(sigma * sigma, 2.0 * sigma * tn)


def pump_g(
    params: OscillatorParams, t: float, exclusion_radius: Optional[float] = None
) -> complex:
    """Pump of the V family: s^2 * (1 + pump_g) equals the ImagShiftV profile."""
    s = _require_imaginary_shift(params, "pump_g")
    if s == 0.0:
        raise ValueError("pump_g needs s != 0 (sigma^-1 undefined)")
    guard_singularity(params, t, exclusion_radius)
    sigma = s / params.omega0
    tn = math.tan(params.omega0 * t)
    return complex(-2.0 * tn * tn / (sigma * sigma) - 1.0 / (sigma * sigma), 2.0 * tn / sigma)
