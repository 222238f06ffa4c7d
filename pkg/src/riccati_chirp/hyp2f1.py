"""Complex Gauss hypergeometric series engine for unit-circle arguments.

Evaluates 2F1(a, b; c; z) by direct Pochhammer-recurrence summation (each
term obtained from the previous by one complex multiply-divide) and, where
it pays off, through the linear transformation 15.3.4,

    F(a, b; c; z) = (1 - z)^(-a) * F(a, c - b; c; z / (z - 1)),

with principal-branch complex powers.  The design target is the mode
family with a = 1, c = b + 2 evaluated on |z| = 1, where the direct series
converges absolutely but only algebraically (c - a - b = 1).

Strategy selection: the transformed argument w = z/(z-1) satisfies
Re w = 1/2 on the unit circle, so |w| ranges over [1/2, inf) and the
transformed series is geometric only on part of each period.  We use the
transformed route when |w| <= 0.75 and the direct series otherwise.  On
and very near the circle the direct summation is finished with a
summation-by-parts tail

    sum_{m >= M} q_m z^m = z^M/(1-z) * sum_{k >= 0} (z/(1-z))^k (Delta^k q)_M,

whose corrections shrink like (k+1)/(M |1-z|); this is an exact
reformulation of the same series, not a different representation, and is
what makes near-pole arguments affordable at tight tolerances.  The
truncation-error estimate is the smallest correction added, floored at the
rounding noise of the forward differences, so it stays an honest upper
bound (validated statistically in the test suite).

Unconverged results are data, not exceptions: callers receive the partial
value with ``converged=False`` and decide how to degrade.  Genuinely
divergent requests (|z| = 1 with Re(a + b - c) >= 0, or z beyond the
closed unit disk) are rejected, as are parameter poles (c a nonpositive
integer).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .core import OscillatorParams, guard_singularity

__all__ = [
    "Strategy",
    "Hyp2F1DomainError",
    "SeriesUnconvergedError",
    "Hyp2F1Args",
    "SeriesResult",
    "gauss_2f1",
    "transform_15_3_4",
    "gamma_ratio_series_u1",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 100_000

_EPS = 2.220446049250313e-16
_CIRCLE = 0.98          # |z| above this finishes with the summation-by-parts tail
_CIRCLE_GUARD = 1e-12   # |z| within this of 1 counts as "on the circle"
_XFORM_RADIUS = 0.75    # use the 15.3.4 route when |z/(z-1)| is at most this
_ABEL_HEAD = 384.0      # head length target: M * |1-z| >= this before the tail
_ABEL_LEVELS = 18       # maximum summation-by-parts orders


class Strategy(Enum):
    DIRECT_SERIES = "DirectSeries"
    TRANSFORMED_15_3_4 = "Transformed_15_3_4"
    GAMMA_RATIO_SERIES = "GammaRatioSeries"


class Hyp2F1DomainError(ValueError):
    """Parameters or argument outside the engine's convergence domain."""


class SeriesUnconvergedError(RuntimeError):
    """Raised by callers that need a converged value; carries the partial result."""

    def __init__(self, result: "SeriesResult"):
        super().__init__(
            f"series unconverged after {result.terms_used} terms "
            f"(error estimate {result.trunc_error_estimate:.3g})"
        )
        self.result = result


def _is_nonpositive_integer(x: complex, tol: float = 1e-12) -> bool:
    x = complex(x)
    r = round(x.real)
    return r <= 0 and abs(x.real - r) <= tol and abs(x.imag) <= tol


@dataclass(frozen=True)
class Hyp2F1Args:
    """Parameter/argument bundle; rejects the series poles c = 0, -1, -2, ..."""

    a: complex
    b: complex
    c: complex
    z: complex

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "z"):
            v = complex(getattr(self, name))
            object.__setattr__(self, name, v)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise Hyp2F1DomainError(f"{name} must be finite, got {v!r}")
        if _is_nonpositive_integer(self.c):
            raise Hyp2F1DomainError(f"c={self.c!r} is a nonpositive integer (series pole)")


@dataclass(frozen=True)
class SeriesResult:
    """Evaluation outcome: value, work done, error estimate, and route taken."""

    value: complex
    terms_used: int
    trunc_error_estimate: float
    strategy: Strategy
    converged: bool = True

    def __post_init__(self) -> None:
        if self.terms_used < 1:
            raise ValueError("terms_used must be a positive integer")
        if self.trunc_error_estimate < 0.0:
            raise ValueError("trunc_error_estimate must be nonnegative")


def transform_15_3_4(args: Hyp2F1Args) -> Tuple[complex, Hyp2F1Args]:
    """Prefactor (1-z)^(-a) and transformed arguments (a, c-b; c; z/(z-1)).

    prefactor * 2F1(new_args) equals 2F1(args) wherever both series
    converge; principal branch for the complex power.  z = 1 is rejected.
    """
    z = args.z
    if z == 1:
        raise Hyp2F1DomainError("transformation undefined at z = 1")
    prefactor = (1.0 - z) ** (-args.a)
    return prefactor, Hyp2F1Args(args.a, args.c - args.b, args.c, z / (z - 1.0))


def _abel_tail(q: list, u: complex, pref: complex, tol: float) -> Tuple[complex, float, int]:
    """Summation-by-parts tail sum_k pref * u^k * (Delta^k q)[0].

    Asymptotic-style evaluation: corrections are added while they keep
    shrinking and stay above the rounding floor of the forward differences
    (floor grows like (2|u|)^k * eps * max|q|).  Returns (tail, estimate,
    levels added); the estimate is twice the smallest correction magnitude
    or the noise floor, whichever is larger.
    """
    d = list(q)
    qscale = max(abs(x) for x in d)
    abs_u = abs(u)
    abs_pref = abs(pref)
    tail = 0j
    uk = 1.0 + 0j
    floor_amp = 1.0
    prev = math.inf
    prev_floor = 0.0
    added = 0
    est = abs_pref * qscale  # fallback if the very first correction already grows
    for _ in range(_ABEL_LEVELS):
        corr = pref * uk * d[0]
        mag = abs(corr)
        floor = _EPS * qscale * abs_pref * floor_amp
        if mag > prev:
            # Growth marks the noise-dominated regime; the bound comes from
            # the last correction added, not from the noisy omitted one.
            est = max(2.0 * prev, prev_floor)
            break
        tail += corr
        added += 1
        est = max(2.0 * mag, floor)
        if mag <= max(floor, 0.01 * tol):
            break
        prev = mag
        prev_floor = floor
        d = [d[i + 1] - d[i] for i in range(len(d) - 1)]
        uk *= u
        floor_amp *= 2.0 * abs_u
    return tail, est, added


def _sum_series(
    a: complex,
    b: complex,
    c: complex,
    z: complex,
    tol: float,
    max_terms: int,
    want_tangent: bool,
) -> Tuple[complex, complex, int, float, bool]:
    """Direct summation of 2F1; returns (F, G, terms, err_estimate, converged).

    G = sum_n n * term_n = z * dF/dz, accumulated in the same pass when
    requested (the t-derivative of the mode series is G times a chain
    factor).  Near the unit circle the algebraic tail is finished by
    summation by parts; off the circle a geometric tail bound stops the
    loop.
    """
    if z == 0:
        return 1.0 + 0j, 0j, 1, 0.0, True
    az = abs(z)
    terminating = _is_nonpositive_integer(a) or _is_nonpositive_integer(b)
    if az > 1.0 + _CIRCLE_GUARD and not terminating:
        raise Hyp2F1DomainError(f"|z| = {az:.6g} > 1: outside the series domain")
    on_circle = az > _CIRCLE and not terminating
    if on_circle and az >= 1.0 - _CIRCLE_GUARD and (a + b - c).real >= -1e-12:
        raise Hyp2F1DomainError(
            f"divergent regime: |z| = 1 with Re(a+b-c) = {(a + b - c).real:.3g} >= 0"
        )
    if on_circle:
        om = abs(1.0 - z)
        head = min(
            max(int(_ABEL_HEAD / max(om, 1e-12)) + 1, 256),
            max(max_terms - _ABEL_LEVELS - 2, 8),
        )
    else:
        head = max_terms

    F = 0j
    G = 0j
    coef = 1.0 + 0j
    zp = 1.0 + 0j
    n = 0
    last = 1.0
    while True:
        term = coef * zp
        F += term
        if want_tangent:
            G += n * term
        last = abs(term)
        if coef == 0:  # terminating numerator parameter: exact polynomial
            return F, G, n + 1, 0.0, True
        if not on_circle and n >= 4 and az < 1.0:
            # geometric tail bound with the term ratio allowed to grow back
            # to |z| from below (it tends to |z| as n grows)
            ratio_now = az * abs((a + n) * (b + n) / ((c + n) * (n + 1.0)))
            rho = min(max(az, ratio_now), 0.9999)
            gfac = 1.25 * rho / (1.0 - rho)
            est = last * gfac * ((n + 2.0) if want_tangent else 1.0)
            if est < tol:
                return F, G, n + 1, max(est, last), True
        if on_circle and n + 1 >= head:
            break
        if n + 1 >= max_terms:
            return F, G, n + 1, last, False
        coef = coef * (a + n) * (b + n) / ((c + n) * (n + 1.0))
        zp = zp * z
        n += 1

    # Summation-by-parts tail from m = n + 1.
    coef = coef * (a + n) * (b + n) / ((c + n) * (n + 1.0))
    zp = zp * z
    m = n + 1
    qs = []
    cc = coef
    mm = m
    for _ in range(_ABEL_LEVELS + 1):
        qs.append(cc)
        cc = cc * (a + mm) * (b + mm) / ((c + mm) * (mm + 1.0))
        mm += 1
    u = z / (1.0 - z)
    pref = zp / (1.0 - z)
    tail_f, est_f, k_f = _abel_tail(qs, u, pref, tol)
    F += tail_f
    est = est_f
    k_used = k_f
    if want_tangent:
        gq = [(m + j) * qs[j] for j in range(len(qs))]
        tail_g, est_g, k_g = _abel_tail(gq, u, pref, tol)
        G += tail_g
        est = max(est_f, est_g)
        k_used = max(k_f, k_g)
    return F, G, m + k_used, est, est <= tol


def _eval_transformed(
    args: Hyp2F1Args, tol: float, max_terms: int, want_tangent: bool
) -> Tuple[complex, complex, int, float, bool]:
    prefactor, new_args = transform_15_3_4(args)
    w = new_args.z
    if abs(w) >= 1.0 - 1e-9:
        raise Hyp2F1DomainError(
            f"transformed argument |z/(z-1)| = {abs(w):.6g} >= 1: transformed series divergent"
        )
    sub_tol = tol / max(1.0, abs(prefactor))
    f2, g2, n, est, conv = _sum_series(
        new_args.a, new_args.b, new_args.c, w, sub_tol, max_terms, want_tangent
    )
    value = prefactor * f2
    tangent = 0j
    if want_tangent:
        z, a = args.z, args.a
        df2 = g2 / w if w != 0 else 0j
        tangent = prefactor * (a * z / (1.0 - z) * f2 - z / (1.0 - z) ** 2 * df2)
    return value, tangent, n, est * abs(prefactor), conv


def _select_strategy(args: Hyp2F1Args) -> Strategy:
    if _is_nonpositive_integer(args.a) or _is_nonpositive_integer(args.b):
        return Strategy.DIRECT_SERIES
    if abs(args.z) <= _XFORM_RADIUS or args.z == 1:
        return Strategy.DIRECT_SERIES
    if abs(args.z / (args.z - 1.0)) <= _XFORM_RADIUS:
        return Strategy.TRANSFORMED_15_3_4
    return Strategy.DIRECT_SERIES


def _domain_guard(args: Hyp2F1Args) -> None:
    # Contract-level domain: the closed unit disk, and on the circle only
    # Re(a+b-c) < 0 (terminating numerator parameters are polynomials and
    # exempt).  Enforced for every strategy.
    if _is_nonpositive_integer(args.a) or _is_nonpositive_integer(args.b):
        return
    az = abs(args.z)
    if az > 1.0 + _CIRCLE_GUARD:
        raise Hyp2F1DomainError(f"|z| = {az:.6g} > 1: outside the series domain")
    if az >= 1.0 - _CIRCLE_GUARD and (args.a + args.b - args.c).real >= -1e-12:
        raise Hyp2F1DomainError(
            f"divergent regime: |z| = 1 with Re(a+b-c) = "
            f"{(args.a + args.b - args.c).real:.3g} >= 0"
        )


def eval_2f1_with_tangent(
    args: Hyp2F1Args,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    strategy: Optional[Strategy] = None,
) -> Tuple[SeriesResult, complex]:
    """SeriesResult plus the tangent sum G = z * d(2F1)/dz, one pass."""
    if tol <= 0.0 or max_terms <= 0:
        raise ValueError("tol and max_terms must be positive")
    _domain_guard(args)
    chosen = _select_strategy(args) if strategy is None else strategy
    if chosen is Strategy.DIRECT_SERIES:
        f, g, n, est, conv = _sum_series(args.a, args.b, args.c, args.z, tol, max_terms, True)
    elif chosen is Strategy.TRANSFORMED_15_3_4:
        f, g, n, est, conv = _eval_transformed(args, tol, max_terms, True)
    else:
        raise ValueError(f"strategy {chosen!r} not valid for gauss_2f1")
    return SeriesResult(f, n, est, chosen, conv), g


def gauss_2f1(
    args: Hyp2F1Args,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    strategy: Optional[Strategy] = None,
) -> SeriesResult:
    """Evaluate 2F1(a, b; c; z) for |z| <= 1 (|z| = 1 needs Re(a+b-c) < 0).

    ``strategy=None`` auto-selects between the direct series and the
    15.3.4-transformed route; passing a Strategy pins the route (used by
    the cross-validation tests).  A result with ``converged=False`` means
    max_terms ran out before the tolerance: the partial value and its
    error estimate are still returned.
    """
    if tol <= 0.0 or max_terms <= 0:
        raise ValueError("tol and max_terms must be positive")
    _domain_guard(args)
    chosen = _select_strategy(args) if strategy is None else strategy
    if chosen is Strategy.DIRECT_SERIES:
        f, _, n, est, conv = _sum_series(args.a, args.b, args.c, args.z, tol, max_terms, False)
    elif chosen is Strategy.TRANSFORMED_15_3_4:
        f, _, n, est, conv = _eval_transformed(args, tol, max_terms, False)
    else:
        raise ValueError(f"strategy {chosen!r} not valid for gauss_2f1")
    return SeriesResult(f, n, est, chosen, conv)


def gamma_ratio_series_u1(
    params: OscillatorParams,
    t: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    exclusion_radius: Optional[float] = None,
) -> SeriesResult:
    """The bounded shifted mode via the factorial-over-Gamma-product series.

    Evaluates

        exp(-S t) / (2 cos(omega0 t)) * sum_n (n+1)! / prod_{k<n}(c0+k) * w^n,

    with c0 = 2 - i S/omega0 and w = 1/(1 + exp(2i omega0 t)); the Gamma
    ratio is built by recurrence, so no standalone complex Gamma function
    is needed.  Converges for |w| < 1, i.e. |tan(omega0 t)| < sqrt(3)
    (the empirical region: |w|^2 = (1 + tan^2)/4); outside it the series
    diverges and a domain error is raised.  Agrees with the direct mode
    series wherever it converges, which is what the cross-check suite
    asserts.
    """
    if tol <= 0.0 or max_terms <= 0:
        raise ValueError("tol and max_terms must be positive")
    guard_singularity(params, t, exclusion_radius)
    w0 = params.omega0
    S = params.shift
    c0 = 2.0 - 1j * S / w0
    if _is_nonpositive_integer(c0):
        raise Hyp2F1DomainError(f"parameter 2 - iS/omega0 = {c0!r} is a nonpositive integer")
    w = 1.0 / (1.0 + cmath.exp(2j * w0 * t))
    if abs(w) >= 1.0 - 1e-9:
        raise Hyp2F1DomainError(
            f"|1/(1+e^(2i*omega0*t))| = {abs(w):.6g} >= 1: outside the convergence region "
            "|tan(omega0*t)| < sqrt(3)"
        )
    prefactor = cmath.exp(-S * t) / (2.0 * math.cos(w0 * t))
    apref = abs(prefactor)
    aw = abs(w)
    total = 0j
    term = 1.0 + 0j
    n = 0
    converged = False
    est = math.inf
    while True:
        total += term
        nxt = term * (n + 2.0) / (c0 + n) * w
        # tail bound: future term ratios tend to |w| from (n+2)/|c0+n| side
        rho = min(aw * max(1.0, (n + 2.0) / abs(c0 + n)), 0.9999)
        if n >= 4:
            est = max(1.25 * abs(nxt) / (1.0 - rho), abs(term))
            if est * apref < tol:
                converged = True
                n += 1
                break
        if n + 1 >= max_terms:
            est = max(abs(term), abs(nxt))
            n += 1
            break
        term = nxt
        n += 1
    return SeriesResult(
        prefactor * total,
        n,
        (0.0 if math.isinf(est) else est) * apref,
        Strategy.GAMMA_RATIO_SERIES,
        converged,
    )
