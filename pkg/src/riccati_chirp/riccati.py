"""Riccati solution of the harmonic oscillator, its constant shift, and residuals.

The particular solution used throughout is R(t) = -omega0*tan(omega0*t),
obtained from the cosine mode of the oscillator; the shifted variant is
R_S = R + S for a constant complex S.  Four first-order forms are checked
by residual:

  Standard            R' + R**2 + f                            (f = omega0**2)
  StandardPartner     -R' + R**2 + (f + 2R')                   (shift-free partner)
  NonStandardShiftedU R_S' - 2S R_S + R_S**2 + (f + S**2)
  NonStandardShiftedV -R_S' - 2S R_S + R_S**2 + (f + 2R' + S**2)

Convention for which non-standard form is "U-type": the U form is the one
whose connection solution exp(integral R_S) = exp(S t) cos(omega0 t) solves
the shifted-frequency oscillator produced by the (d/dt + R_S)(d/dt - R_S)
bracket order; the V form belongs to the reversed brackets.  This matches
the shifted frequency profiles in ``profiles``.

Derivatives inside residuals are central finite differences with one level
of Richardson extrapolation; residuals are returned raw, callers normalise
by (1 + |R|**2) before thresholding because raw residuals of even an exact
solution blow up near the tangent poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .core import OscillatorParams, guard_singularity

__all__ = [
    "RiccatiVariant",
    "RiccatiForm",
    "riccati_u1",
    "riccati_shifted",
    "riccati_residual",
]

DEFAULT_STEP = 1e-5


class RiccatiVariant(Enum):
    STANDARD = "Standard"
    STANDARD_PARTNER = "StandardPartner"
    NONSTANDARD_SHIFTED_U = "NonStandardShiftedU"
    NONSTANDARD_SHIFTED_V = "NonStandardShiftedV"


@dataclass(frozen=True)
class RiccatiForm:
    """Selects the residual formula; f0 defaults to omega0**2 when None."""

    variant: RiccatiVariant
    f0: Optional[complex] = None

    def potential(self, params: OscillatorParams) -> complex:
        return complex(params.omega0**2) if self.f0 is None else complex(self.f0)


def riccati_u1(
    params: OscillatorParams, t: float, exclusion_radius: Optional[float] = None
) -> complex:
    """-omega0 * tan(omega0*t), as a complex number with zero imaginary part."""
    guard_singularity(params, t, exclusion_radius)
    return complex(-params.omega0 * math.tan(params.omega0 * t))


def riccati_shifted(
    params: OscillatorParams, t: float, exclusion_radius: Optional[float] = None
) -> complex:
    """riccati_u1 plus the constant shift S."""
    return riccati_u1(params, t, exclusion_radius) + params.shift


def _ddt_richardson(f: Callable[[float], complex], t: float, step: float) -> complex:
    # One Richardson level over the O(step^2) central difference.
    d1 = (f(t + step) - f(t - step)) / (2.0 * step)
    d2 = (f(t + 0.5 * step) - f(t - 0.5 * step)) / step
    return (4.0 * d2 - d1) / 3.0


def riccati_residual(
    form: RiccatiForm,
    params: OscillatorParams,
    t: float,
    step: float = DEFAULT_STEP,
    exclusion_radius: Optional[float] = None,
) -> complex:
    """Left-hand side of the selected form, with derivatives by finite differences.

    A near-zero return certifies R (or R_S) as a solution of that form.
    The stencil spans [t - step, t + step]; the caller keeps it away from
    the tangent poles.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    guard_singularity(params, t, exclusion_radius)
    f0 = form.potential(params)
    S = params.shift
    v = form.variant

    if v is RiccatiVariant.STANDARD:
        r = riccati_u1(params, t)
        rp = _ddt_richardson(lambda x: riccati_u1(params, x), t, step)
        return rp + r * r + f0
    if v is RiccatiVariant.STANDARD_PARTNER:
        r = riccati_u1(params, t)
        rp = _ddt_richardson(lambda x: riccati_u1(params, x), t, step)
        return -rp + r * r + (f0 + 2.0 * rp)
    if v is RiccatiVariant.NONSTANDARD_SHIFTED_U:
        rs = riccati_shifted(params, t)
        rsp = _ddt_richardson(lambda x: riccati_shifted(params, x), t, step)
        return rsp - 2.0 * S * rs + rs * rs + (f0 + S * S)
    if v is RiccatiVariant.NONSTANDARD_SHIFTED_V:
        rs = riccati_shifted(params, t)
        rsp = _ddt_richardson(lambda x: riccati_shifted(params, x), t, step)
        rp = _ddt_richardson(lambda x: riccati_u1(params, x), t, step)
        return -rsp - 2.0 * S * rs + rs * rs + (f0 + 2.0 * rp + S * S)
    raise ValueError(f"unknown variant {v!r}")
