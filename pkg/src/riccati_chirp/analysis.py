"""Solution classification, symmetry checks, and the invariant audit.

classify() sorts a parameter point by boundedness and periodicity: the
shifted modes are bounded iff the quasifrequency omega0 - iS is real
(purely imaginary shift), and for S = i*s they are periodic over
T = pi/omega0 when s = (2m-1) omega0 and antiperiodic when s = 2m omega0
with m != 0.  The remaining bounded cases are quasiperiodic.  s = 0 is
reported as quasiperiodic-bounded: the antiperiodic integer family
explicitly excludes m = 0, even though cos(omega0 t) itself flips sign
over T (documented convention, see the module tests).

The report functions each audit one machine-checkable identity over a
TimeGrid and return an InvariantReport; run_full_check() bundles all of
them (with classification-dependent gating) for the CLI ``check`` command.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .core import (
    Classification,
    OscillatorParams,
    TimeGrid,
    Verdict,
)
from .hyp2f1 import gamma_ratio_series_u1, _is_nonpositive_integer
from .modes import ModeKind, mode, quasifrequency
from .oracle import FactorOrder, factorization_apply, wronskian
from .profiles import ProfileKind, freq_sq, pump_g, pump_h
from .riccati import (
    RiccatiForm,
    RiccatiVariant,
    riccati_residual,
    riccati_shifted,
    riccati_u1,
)

__all__ = [
    "InvariantReport",
    "SkippedCheck",
    "classify",
    "verify_periodicity",
    "pt_symmetry_report",
    "product_invariant_report",
    "ode_residual_report",
    "riccati_residual_report",
    "factorization_report",
    "wronskian_drift_report",
    "gauge_shift_report",
    "pump_consistency_report",
    "u2_elementary_identity_report",
    "appendix_crosscheck_report",
    "product_variation_report",
    "run_full_check",
    "DEFAULT_THRESHOLDS",
]

INTEGER_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class InvariantReport:
    """One audited identity: its worst deviation against a named threshold."""

    name: str
    max_abs_deviation: float
    threshold: float
    passed: bool
    grid_note: str = ""

    def __post_init__(self) -> None:
        if self.passed != (self.max_abs_deviation < self.threshold):
            raise ValueError("passed must equal (max_abs_deviation < threshold)")


def _report(name: str, dev: float, threshold: float, grid_note: str = "") -> InvariantReport:
    dev = float(dev)
    return InvariantReport(name, dev, float(threshold), dev < float(threshold), grid_note)


@dataclass(frozen=True)
class SkippedCheck:
    name: str
    reason: str


def classify(params: OscillatorParams) -> Classification:
    """Boundedness/periodicity verdict of the shifted mode families.

    Integer matching on s/omega0 uses tolerance 1e-9; the verdict itself is
    exact (no tolerance on the classification boundaries beyond that).
    """
    period = params.period
    if params.shift.real != 0.0:
        return Classification(Verdict.UNBOUNDED, None, period)
    ratio = params.s / params.omega0
    k = round(ratio)
    if abs(ratio - k) <= INTEGER_MATCH_TOL and k != 0:
        if k % 2 != 0:
            return Classification(Verdict.PERIODIC, (k + 1) // 2, period)
        return Classification(Verdict.ANTIPERIODIC, k // 2, period)
    return Classification(Verdict.QUASIPERIODIC_BOUNDED, None, period)


def verify_periodicity(
    params: OscillatorParams,
    kind: ModeKind,
    grid: TimeGrid,
    threshold: Optional[float] = None,
) -> InvariantReport:
    """Check mode(t + T) = sigma * mode(t) over the grid, T = pi/omega0.

    sigma is +1 for a Periodic classification and -1 for Antiperiodic; any
    other classification is a caller error.  The deviation is relative,
    |mode(t+T) - sigma*mode(t)| / (1 + |mode(t)|), and the default
    threshold is 1e-8 for elementary modes and 1e-6 for U1 (series error
    budget).  The shifted grid is automatically singularity-free because
    the poles are T-periodic.
    """
    cls = classify(params)
    if cls.verdict is Verdict.PERIODIC:
        sigma = 1.0
    elif cls.verdict is Verdict.ANTIPERIODIC:
        sigma = -1.0
    else:
        raise ValueError(f"cannot verify periodicity: classification is {cls.verdict.value}")
    if threshold is None:
        threshold = 1e-6 if kind is ModeKind.U1 else 1e-8
    T = params.period
    dev = 0.0
    for t in grid.points:
        m0 = mode(kind, params, float(t))
        m1 = mode(kind, params, float(t) + T)
        dev = max(dev, abs(m1 - sigma * m0) / (1.0 + abs(m0)))
    return _report(f"periodicity_{kind.value}", dev, threshold, f"{len(grid)} pts, sigma={sigma:+.0f}")


def pt_symmetry_report(
    kind: ProfileKind, params: OscillatorParams, grid: TimeGrid, threshold: float = 1e-10
) -> InvariantReport:
    """Check Omega^2(-t) = conj(Omega^2(t)) over a grid symmetric about 0."""
    if not params.shift_is_imaginary:
        raise ValueError(f"PT symmetry holds for purely imaginary shifts; got S={params.shift!r}")
    pts = grid.points
    scale = max(1.0, float(abs(pts[-1])))
    if any(abs(a + b) > 1e-12 * scale for a, b in zip(pts, pts[::-1])):
        raise ValueError("grid is not symmetric about t = 0")
    dev = 0.0
    for t in pts:
        f_plus = freq_sq(kind, params, float(t))
        f_minus = freq_sq(kind, params, -float(t))
        dev = max(dev, abs(f_minus - f_plus.conjugate()))
    return _report(f"pt_symmetry_{kind.value}", dev, threshold, f"{len(grid)} pts")


def product_invariant_report(
    pair: Tuple[ModeKind, ModeKind],
    params: OscillatorParams,
    grid: TimeGrid,
    threshold: float = 1e-9,
) -> InvariantReport:
    """Check that the product of the two modes is constant over the grid.

    Deviation is relative to the first product value p0; for (u1, v1) the
    deviation additionally includes |p0 - omega0| / omega0, since that
    product is pinned to omega0 and not merely constant.
    """
    f, g = pair
    pts = grid.points
    p0 = mode(f, params, float(pts[0])) * mode(g, params, float(pts[0]))
    scale = max(abs(p0), 1e-300)
    dev = 0.0
    for t in pts[1:]:
        p = mode(f, params, float(t)) * mode(g, params, float(t))
        dev = max(dev, abs(p - p0) / scale)
    if (f, g) == (ModeKind.u1, ModeKind.v1):
        dev = max(dev, abs(p0 - params.omega0) / params.omega0)
    return _report(f"product_{f.value}{g.value}", dev, threshold, f"{len(grid)} pts")


def product_variation_report(
    pair: Tuple[ModeKind, ModeKind],
    params: OscillatorParams,
    grid: TimeGrid,
    min_ratio: float = 1.01,
) -> InvariantReport:
    """Check that the product of the two modes is demonstrably NOT constant.

    The measured quantity is min_ratio / (max|p| / min|p|); it falls below
    the threshold 1.0 exactly when the observed max/min magnitude ratio
    exceeds min_ratio.
    """
    f, g = pair
    mags = [abs(mode(f, params, float(t)) * mode(g, params, float(t))) for t in grid.points]
    hi, lo = max(mags), min(mags)
    ratio = hi / max(lo, 1e-300)
    return _report(
        f"variation_{f.value}{g.value}",
        min_ratio / max(ratio, 1e-300),
        1.0,
        f"max/min ratio {ratio:.4g} (needs > {min_ratio})",
    )


_MODE_PROFILE: Dict[ModeKind, ProfileKind] = {
    ModeKind.u1: ProfileKind.CONSTANT_OMEGA0_SQ,
    ModeKind.u2: ProfileKind.CONSTANT_OMEGA0_SQ,
    ModeKind.v1: ProfileKind.PARTNER_V,
    ModeKind.v2: ProfileKind.PARTNER_V,
    ModeKind.U1: ProfileKind.SHIFTED_U,
    ModeKind.U2: ProfileKind.SHIFTED_U,
    ModeKind.V1: ProfileKind.SHIFTED_V,
    ModeKind.V2: ProfileKind.SHIFTED_V,
}


def governing_profile(kind: ModeKind) -> ProfileKind:
    """The frequency profile whose oscillator equation the mode solves."""
    return _MODE_PROFILE[kind]


def _second_derivative(f: Callable[[float], complex], t: float, h: float) -> complex:
    # Fourth-order five-point central second difference at step h.
    return (
        -f(t - 2.0 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h) - f(t + 2.0 * h)
    ) / (12.0 * h * h)


def ode_residual_report(
    kind: ModeKind,
    params: OscillatorParams,
    grid: TimeGrid,
    step: float = 1e-4,
    threshold: float = 1e-5,
) -> InvariantReport:
    """Check mode'' + Omega^2 * mode = 0 with a finite-difference second derivative.

    The second derivative is a five-point central difference at the given
    step; the residual is scaled by (1 + |Omega^2 * mode|), which keeps the
    check meaningful next to the tangent poles where both factors blow up.
    """
    profile = governing_profile(kind)
    dev = 0.0
    for tt in grid.points:
        t = float(tt)
        y = mode(kind, params, t)
        ypp = _second_derivative(lambda x: mode(kind, params, x), t, step)
        drive = freq_sq(profile, params, t) * y
        dev = max(dev, abs(ypp + drive) / (1.0 + abs(drive)))
    return _report(f"ode_residual_{kind.value}", dev, threshold, f"{len(grid)} pts, step={step:g}")


def riccati_residual_report(
    variant: RiccatiVariant,
    params: OscillatorParams,
    grid: TimeGrid,
    step: float = 1e-5,
    threshold: float = 1e-6,
) -> InvariantReport:
    """Max Riccati-form residual over the grid, scaled by (1 + |R|^2)."""
    form = RiccatiForm(variant)
    dev = 0.0
    for tt in grid.points:
        t = float(tt)
        r = riccati_u1(params, t)
        raw = riccati_residual(form, params, t, step)
        dev = max(dev, abs(raw) / (1.0 + abs(r) ** 2))
    return _report(
        f"riccati_{variant.value}", dev, threshold, f"{len(grid)} pts, step={step:g}"
    )


def factorization_report(
    order: FactorOrder,
    kind: ModeKind,
    params: OscillatorParams,
    grid: TimeGrid,
    step: Optional[float] = None,
    threshold: float = 1e-6,
) -> InvariantReport:
    """Max bracket-operator residual over the grid, normalised per point.

    The residual is scaled by (1 + |R_S|^2) * |mode|, the magnitude the
    composed brackets actually produce, so the check stays meaningful next
    to the poles where |R_S| is large.  The default step is 1e-4/omega0
    (the stencil lives in phase units).
    """
    if step is None:
        step = 1e-4 / params.omega0
    dev = 0.0
    for tt in grid.points:
        t = float(tt)
        resid = factorization_apply(order, params, kind, t, step)
        rs = abs(riccati_shifted(params, t))
        scale = (1.0 + rs * rs) * max(abs(mode(kind, params, t)), 1e-300)
        dev = max(dev, abs(resid) / scale)
    return _report(
        f"factorization_{order.value}_{kind.value}", dev, threshold, f"{len(grid)} pts"
    )


def wronskian_drift_report(
    pair: Tuple[ModeKind, ModeKind],
    params: OscillatorParams,
    grid: TimeGrid,
    threshold: float = 1e-8,
) -> InvariantReport:
    """Constancy of the Wronskian over the grid, relative to its first value."""
    f, g = pair
    pts = grid.points
    w0 = wronskian(f, g, params, float(pts[0]))
    dev = 0.0
    for t in pts[1:]:
        dev = max(dev, abs(wronskian(f, g, params, float(t)) - w0) / (1.0 + abs(w0)))
    return _report(f"wronskian_{f.value}{g.value}", dev, threshold, f"W0={w0:.6g}")


def gauge_shift_report(
    params: OscillatorParams,
    grid: TimeGrid,
    step: Optional[float] = None,
    threshold: float = 1e-6,
) -> InvariantReport:
    """Exponential-gauge identity: u_S = e^(St) u and v_S = e^(St) v1 solve

        y'' - 2S y' + (omega0^2 + S^2) y = 0      (u side)
        y'' - 2S y' + (omega_v^2(t) + S^2) y = 0  (v side)

    with omega_v^2 the partner profile.  Derivatives are five-point finite
    differences at step 1e-4/omega0; residuals are scaled by
    (1 + |potential|) * |y|, the size of the terms being cancelled.
    """
    if step is None:
        step = 1e-4 / params.omega0
    S = params.shift
    w2 = params.omega0**2

    def u_s(t: float) -> complex:
        return mode(ModeKind.u1, params, t) * _cexp(S * t)

    def v_s(t: float) -> complex:
        return mode(ModeKind.v1, params, t) * _cexp(S * t)

    dev = 0.0
    for tt in grid.points:
        t = float(tt)
        for fn, pot in (
            (u_s, w2 + S * S),
            (v_s, freq_sq(ProfileKind.PARTNER_V, params, t) + S * S),
        ):
            ypp = _second_derivative(fn, t, step)
            yp = (fn(t - 2 * step) - 8 * fn(t - step) + 8 * fn(t + step) - fn(t + 2 * step)) / (
                12.0 * step
            )
            y = fn(t)
            scale = (1.0 + abs(pot)) * max(abs(y), 1e-300)
            dev = max(dev, abs(ypp - 2.0 * S * yp + pot * y) / scale)
    return _report("gauge_shift", dev, threshold, f"{len(grid)} pts, step={step:g}")


def _cexp(x: complex) -> complex:
    return cmath.exp(x)


def _ulp_of(x: float) -> float:
    return math.ulp(max(abs(x), 1e-300))


def pump_consistency_report(
    params: OscillatorParams, grid: TimeGrid, threshold_ulps: float = 8.0
) -> InvariantReport:
    """omega0^2 (1 + h) and s^2 (1 + g) must rebuild the imaginary-shift profiles.

    Deviation is measured in ulps of the profile magnitude (the identities
    are algebraic rearrangements, so only rounding separates the two
    sides).  The g side is skipped internally when s = 0.
    """
    w2 = params.omega0**2
    s = params.s
    dev = 0.0
    for tt in grid.points:
        t = float(tt)
        fu = freq_sq(ProfileKind.IMAG_SHIFT_U, params, t)
        dev = max(dev, abs(w2 * (1.0 + pump_h(params, t)) - fu) / _ulp_of(abs(fu)))
        if s != 0.0:
            fv = freq_sq(ProfileKind.IMAG_SHIFT_V, params, t)
            dev = max(dev, abs(s * s * (1.0 + pump_g(params, t)) - fv) / _ulp_of(abs(fv)))
    return _report("pump_consistency", dev, threshold_ulps, f"{len(grid)} pts, unit=ulp")


def u2_elementary_identity_report(
    params: OscillatorParams, grid: TimeGrid, threshold_ulps: float = 8.0
) -> InvariantReport:
    """exp(i Omega_S t)(2 cos^2 - i sin 2wt) equals 2 U2(t), in ulps.

    The ulp unit is floored at the magnitude of the phase factors (1) and
    weighted by half the summed phase arguments: rounding the argument
    theta of exp(i*theta) to 53 bits already perturbs the value by about
    |theta|*eps/2, so that is the attainable agreement floor for the two
    independently computed sides.  A transcription error (wrong sign or
    constant) still shows up at ~1e15 weighted ulps.
    """
    om_s = quasifrequency(params)
    w0 = params.omega0
    dev = 0.0
    for tt in grid.points:
        t = float(tt)
        lhs = _cexp(1j * om_s * t) * (
            2.0 * math.cos(w0 * t) ** 2 - 1j * math.sin(2.0 * w0 * t)
        )
        rhs = 2.0 * mode(ModeKind.U2, params, t)
        unit = _ulp_of(max(abs(lhs), abs(rhs), 1.0)) * max(
            1.0, 0.5 * (abs(om_s * t) + abs(params.shift * t) + 2.0 * abs(w0 * t))
        )
        dev = max(dev, abs(lhs - rhs) / unit)
    return _report(
        "u2_elementary_identity", dev, threshold_ulps, f"{len(grid)} pts, unit=weighted-ulp"
    )


def appendix_crosscheck_report(
    params: OscillatorParams,
    grid: TimeGrid,
    threshold: float = 1e-8,
) -> InvariantReport:
    """U1 via the Gamma-ratio series against U1 via the hypergeometric engine.

    Compared only where the Gamma-ratio series converges
    (|tan(omega0 t)| < sqrt(3)); points outside that region are skipped and
    counted in the grid note.
    """
    dev = 0.0
    used = 0
    for tt in grid.points:
        t = float(tt)
        if abs(math.tan(params.omega0 * t)) >= math.sqrt(3.0) * 0.98:
            continue
        used += 1
        direct = mode(ModeKind.U1, params, t)
        alt = gamma_ratio_series_u1(params, t, tol=1e-12)
        dev = max(dev, abs(alt.value - direct) / max(abs(direct), 1e-300))
    return _report(
        "appendix_u1_crosscheck", dev, threshold, f"{used}/{len(grid)} pts in region"
    )


DEFAULT_THRESHOLDS: Dict[str, float] = {
    "riccati": 1e-6,
    "ode": 1e-5,
    "factorization": 1e-6,
    "product": 1e-9,
    "wronskian": 1e-8,
    "pt": 1e-10,
    "periodicity": 1e-8,
    "periodicity_series": 1e-6,
    "appendix": 1e-8,
    "gauge": 1e-6,
    "pump_ulps": 8.0,
    "identity_ulps": 8.0,
}


def run_full_check(
    params: OscillatorParams,
    grid: TimeGrid,
    thresholds: Optional[Dict[str, float]] = None,
) -> Tuple[List[InvariantReport], List[SkippedCheck]]:
    """Run the whole invariant suite on one parameter point.

    Returns the reports plus the checks that were skipped because their
    preconditions do not hold at these parameters (classification gating,
    imaginary-shift-only identities, hypergeometric parameter poles).
    """
    th = dict(DEFAULT_THRESHOLDS)
    if thresholds:
        unknown = set(thresholds) - set(th)
        if unknown:
            raise ValueError(f"unknown tolerance names: {sorted(unknown)}")
        th.update(thresholds)

    reports: List[InvariantReport] = []
    skipped: List[SkippedCheck] = []
    cls = classify(params)
    u1_ok = not _is_nonpositive_integer(2.0 - 1j * params.shift / params.omega0)

    for variant in RiccatiVariant:
        reports.append(riccati_residual_report(variant, params, grid, threshold=th["riccati"]))

    for kind in ModeKind:
        if kind is ModeKind.U1 and not u1_ok:
            skipped.append(SkippedCheck("ode_residual_U1", "series parameter pole"))
            continue
        reports.append(ode_residual_report(kind, params, grid, threshold=th["ode"]))

    reports.append(
        factorization_report(
            FactorOrder.PLUS_MINUS, ModeKind.U2, params, grid, threshold=th["factorization"]
        )
    )
    reports.append(
        factorization_report(
            FactorOrder.MINUS_PLUS, ModeKind.V1, params, grid, threshold=th["factorization"]
        )
    )

    for pair in ((ModeKind.u1, ModeKind.u2), (ModeKind.v1, ModeKind.v2), (ModeKind.V1, ModeKind.V2)):
        reports.append(wronskian_drift_report(pair, params, grid, threshold=th["wronskian"]))
    if u1_ok:
        reports.append(
            wronskian_drift_report((ModeKind.U1, ModeKind.U2), params, grid, threshold=th["wronskian"])
        )
    else:
        skipped.append(SkippedCheck("wronskian_U1U2", "series parameter pole"))

    reports.append(
        product_invariant_report((ModeKind.u1, ModeKind.v1), params, grid, threshold=th["product"])
    )
    reports.append(
        product_invariant_report((ModeKind.U2, ModeKind.V1), params, grid, threshold=th["product"])
    )
    reports.append(product_variation_report((ModeKind.u2, ModeKind.v2), params, grid))

    reports.append(gauge_shift_report(params, grid, threshold=th["gauge"]))
    reports.append(u2_elementary_identity_report(params, grid, threshold_ulps=th["identity_ulps"]))

    if params.shift_is_imaginary:
        sym = _symmetric_subgrid(grid)
        if sym is None:
            skipped.append(SkippedCheck("pt_symmetry", "grid not symmetric about 0"))
        else:
            for kind in (ProfileKind.IMAG_SHIFT_U, ProfileKind.IMAG_SHIFT_V):
                reports.append(pt_symmetry_report(kind, params, sym, threshold=th["pt"]))
        reports.append(pump_consistency_report(params, grid, threshold_ulps=th["pump_ulps"]))
    else:
        skipped.append(SkippedCheck("pt_symmetry", "shift is not purely imaginary"))
        skipped.append(SkippedCheck("pump_consistency", "shift is not purely imaginary"))

    if cls.verdict in (Verdict.PERIODIC, Verdict.ANTIPERIODIC):
        for kind in (ModeKind.U1, ModeKind.U2, ModeKind.V1, ModeKind.V2):
            if kind is ModeKind.U1 and not u1_ok:
                skipped.append(SkippedCheck("periodicity_U1", "series parameter pole"))
                continue
            thr = th["periodicity_series"] if kind is ModeKind.U1 else th["periodicity"]
            reports.append(verify_periodicity(params, kind, grid, threshold=thr))
    else:
        skipped.append(
            SkippedCheck("periodicity", f"classification is {cls.verdict.value}")
        )

    if u1_ok:
        reports.append(appendix_crosscheck_report(params, grid, threshold=th["appendix"]))
    else:
        skipped.append(SkippedCheck("appendix_u1_crosscheck", "series parameter pole"))

    return reports, skipped


def _symmetric_subgrid(grid: TimeGrid) -> Optional[TimeGrid]:
    """The grid itself when symmetric about 0, else None."""
    pts = grid.points
    scale = max(1.0, float(abs(pts[-1])), float(abs(pts[0])))
    if all(abs(a + b) <= 1e-12 * scale for a, b in zip(pts, pts[::-1])):
        return grid
    return None
