"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Tolerances are pinned here and nowhere else; run with `pytest -s
tests/test_acceptance.py` to see the per-criterion lines.
"""

import cmath
import csv
import math
import time

import numpy as np

from riccati_chirp.analysis import (
    classify,
    ode_residual_report,
    product_invariant_report,
    product_variation_report,
    pt_symmetry_report,
    pump_consistency_report,
    verify_periodicity,
    wronskian_drift_report,
)
from riccati_chirp.cli import main as cli_main
from riccati_chirp.core import OscillatorParams, Verdict, build_grid
from riccati_chirp.hyp2f1 import (
    Hyp2F1Args,
    Strategy,
    gamma_ratio_series_u1,
    gauss_2f1,
)
from riccati_chirp.modes import ModeKind, mode, mode_derivative
from riccati_chirp.oracle import IVP, FactorOrder, factorization_apply, integrate
from riccati_chirp.riccati import RiccatiForm, RiccatiVariant, riccati_residual, riccati_u1
from riccati_chirp.profiles import ProfileKind


def _line(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num:>2}] {name:<28} {status}  {detail}")
    return ok


def test_criterion_01_riccati_identity():
    t0 = time.perf_counter()
    worst = 0.0
    form = RiccatiForm(RiccatiVariant.STANDARD)
    for omega0 in (0.5, 1.0, 2.0):
        p = OscillatorParams(omega0)
        T = math.pi / omega0
        grid = build_grid(p, (-T, T), 500, 1e-2 * math.pi / omega0)
        for t in grid.points:
            t = float(t)
            r = riccati_u1(p, t)
            dev = abs(riccati_residual(form, p, t, step=1e-5)) / (1.0 + abs(r) ** 2)
            worst = max(worst, dev)
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-6 and elapsed < 1.0
    assert _line(1, "riccati identity", ok, f"max {worst:.2e} (<1e-6), {elapsed:.2f}s (<1s)")


def test_criterion_02_ode_residuals():
    t0 = time.perf_counter()
    worst = {}
    for shift in (0j, 5j, 6j, 1.5j):
        p = OscillatorParams(1.0, shift)
        grid = build_grid(p, (-math.pi, math.pi), 500)
        for kind in ModeKind:
            if kind in (ModeKind.u1, ModeKind.u2, ModeKind.v1, ModeKind.v2) and shift != 0j:
                continue  # unshifted families do not depend on S
            rep = ode_residual_report(kind, p, grid, step=1e-4, threshold=1e-5)
            worst[(kind.value, str(shift))] = rep.max_abs_deviation
    elapsed = time.perf_counter() - t0
    peak = max(worst.values())
    ok = peak < 1e-5 and elapsed < 5.0
    assert _line(2, "ODE residuals (8 modes)", ok, f"max {peak:.2e} (<1e-5), {elapsed:.2f}s (<5s)")


def test_criterion_03_factorization_operators():
    p = OscillatorParams(1.0, 5j)
    grid = build_grid(p, (-math.pi, math.pi), 100)
    worst = 0.0
    for order, kind in (
        (FactorOrder.PLUS_MINUS, ModeKind.U2),
        (FactorOrder.MINUS_PLUS, ModeKind.V1),
        (FactorOrder.MINUS_PLUS, ModeKind.V2),
    ):
        for t in grid.points:
            t = float(t)
            resid = factorization_apply(order, p, kind, t, step=1e-4)
            worst = max(worst, abs(resid) / abs(mode(kind, p, t)))
    ok = worst < 1e-6
    assert _line(3, "factorization operators", ok, f"max {worst:.2e} (<1e-6)")


def test_criterion_04_product_invariants():
    ok = True
    details = []
    for omega0 in (1.0, 3.0):
        p = OscillatorParams(omega0, 5j)
        T = math.pi / omega0
        grid = build_grid(p, (-T, T), 300)
        rep_uv = product_invariant_report((ModeKind.u1, ModeKind.v1), p, grid, threshold=1e-9)
        rep_UV = product_invariant_report((ModeKind.U2, ModeKind.V1), p, grid, threshold=1e-9)
        rep_var = product_variation_report((ModeKind.u2, ModeKind.v2), p, grid)
        ok = ok and rep_uv.passed and rep_UV.passed and rep_var.passed
        details.append(f"w0={omega0:g}: uv {rep_uv.max_abs_deviation:.1e}")
    assert _line(4, "product invariants", ok, "; ".join(details))


def test_criterion_05_classification_table():
    ok = True
    checks = 0
    # flagship points
    ok &= classify(OscillatorParams(1.0, 5j)).verdict is Verdict.PERIODIC
    ok &= classify(OscillatorParams(1.0, 6j)).verdict is Verdict.ANTIPERIODIC
    checks += 2
    for omega0 in (0.5, 1.0, 2.0):
        for m in (-2, -1, 1, 2, 3):
            c = classify(OscillatorParams(omega0, complex(0.0, (2 * m - 1) * omega0)))
            ok &= c.verdict is Verdict.PERIODIC and c.witness_m == m
            c = classify(OscillatorParams(omega0, complex(0.0, 2 * m * omega0)))
            ok &= c.verdict is Verdict.ANTIPERIODIC and c.witness_m == m
            checks += 2
    for shift in (0.5 + 0j, -0.1 + 5j, 1 + 1j):
        ok &= classify(OscillatorParams(1.0, shift)).verdict is Verdict.UNBOUNDED
        checks += 1
    assert _line(5, "classification table", bool(ok), f"{checks} exact verdicts")


def test_criterion_06_periodicity_verification():
    ok = True
    worst_series = 0.0
    worst_elem = 0.0
    for shift in (5j, 6j):
        p = OscillatorParams(1.0, shift)
        grid = build_grid(p, (-math.pi, math.pi), 200)
        for kind in (ModeKind.U1, ModeKind.U2, ModeKind.V1, ModeKind.V2):
            thr = 1e-6 if kind is ModeKind.U1 else 1e-8
            rep = verify_periodicity(p, kind, grid, threshold=thr)
            ok = ok and rep.passed
            if kind is ModeKind.U1:
                worst_series = max(worst_series, rep.max_abs_deviation)
            else:
                worst_elem = max(worst_elem, rep.max_abs_deviation)
    assert _line(
        6, "periodicity verification", ok,
        f"U1 max {worst_series:.2e} (<1e-6), elementary max {worst_elem:.2e} (<1e-8)",
    )


def test_criterion_07_pt_symmetry():
    ok = True
    worst = 0.0
    for s in (5.0, 6.0):
        p = OscillatorParams(1.0, complex(0.0, s))
        grid = build_grid(p, (-1.4, 1.4), 400)
        for kind in (ProfileKind.IMAG_SHIFT_U, ProfileKind.IMAG_SHIFT_V):
            rep = pt_symmetry_report(kind, p, grid, threshold=1e-10)
            ok = ok and rep.passed
            worst = max(worst, rep.max_abs_deviation)
    assert _line(7, "PT symmetry", ok, f"max {worst:.2e} (<1e-10) at 400 pts")


def test_criterion_08_appendix_suite():
    p = OscillatorParams(1.0, 5j)
    # (a) direct series vs 15.3.4-transformed route on 100 points
    worst_a = 0.0
    for t in np.linspace(-0.95, 0.95, 100):
        args = Hyp2F1Args(1.0, 5.0, 7.0, -cmath.exp(-2j * t))
        direct = gauss_2f1(args, strategy=Strategy.DIRECT_SERIES)
        transformed = gauss_2f1(args, strategy=Strategy.TRANSFORMED_15_3_4)
        worst_a = max(worst_a, abs(direct.value - transformed.value) / abs(direct.value))
    ok_a = worst_a < 1e-9
    # (b) S = 0 reduction to the plane wave
    p0 = OscillatorParams(1.0, 0j)
    worst_b = max(
        abs(mode(ModeKind.U1, p0, float(t)) - cmath.exp(-1j * float(t)))
        for t in np.linspace(-3.0, 3.0, 100)
    )
    ok_b = worst_b < 1e-10
    # (c) Gamma-ratio series vs the direct mode wherever it converges
    worst_c = 0.0
    n_c = 0
    grid = build_grid(p, (-math.pi, math.pi), 200)
    for t in grid.points:
        t = float(t)
        if abs(math.tan(t)) >= math.sqrt(3.0) * 0.98:
            continue
        n_c += 1
        direct = mode(ModeKind.U1, p, t)
        alt = gamma_ratio_series_u1(p, t, tol=1e-12)
        worst_c = max(worst_c, abs(alt.value - direct) / abs(direct))
    ok_c = worst_c < 1e-8 and n_c > 50
    # (d) binomial identity over 200 seeded random draws
    rng = np.random.default_rng(15934)
    worst_d = 0.0
    for _ in range(200):
        pw = complex(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5))
        b = complex(rng.uniform(0.5, 4.0), rng.uniform(-2.0, 2.0))
        z = rng.uniform(0.0, 0.9) * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        got = gauss_2f1(Hyp2F1Args(pw, b, b, z)).value
        want = (1.0 - z) ** (-pw)
        worst_d = max(worst_d, abs(got - want) / (1.0 + abs(want)))
    ok_d = worst_d < 1e-10
    ok = ok_a and ok_b and ok_c and ok_d
    assert _line(
        8, "appendix suite", ok,
        f"(a) {worst_a:.1e} (b) {worst_b:.1e} (c) {worst_c:.1e}@{n_c}pts (d) {worst_d:.1e}",
    )


def test_criterion_09_oracle_agreement():
    t0 = time.perf_counter()
    p = OscillatorParams(1.0, 5j)
    eps = 1e-2 * math.pi
    lo, hi = -math.pi / 2 + 2 * eps, math.pi / 2 - 2 * eps
    worst_track = 0.0
    for kind, profile in (
        (ModeKind.U2, ProfileKind.SHIFTED_U),
        (ModeKind.V1, ProfileKind.SHIFTED_V),
    ):
        ivp = IVP(profile, p, mode(kind, p, lo), mode_derivative(kind, p, lo), lo, hi)
        ts = np.linspace(lo + 0.1, hi, 40)
        res = integrate(ivp, rel_tol=1e-10, abs_tol=1e-12, output_times=ts)
        for t, y in zip(res.times, res.values):
            ref = mode(kind, p, float(t))
            worst_track = max(worst_track, abs(y - ref) / (1.0 + abs(ref)))
    grid = build_grid(p, (lo, hi), 200)
    worst_drift = 0.0
    for pair in (
        (ModeKind.u1, ModeKind.u2),
        (ModeKind.v1, ModeKind.v2),
        (ModeKind.U1, ModeKind.U2),
        (ModeKind.V1, ModeKind.V2),
    ):
        rep = wronskian_drift_report(pair, p, grid, threshold=1e-8)
        worst_drift = max(worst_drift, rep.max_abs_deviation)
    elapsed = time.perf_counter() - t0
    ok = worst_track < 1e-6 and worst_drift < 1e-8 and elapsed < 5.0
    assert _line(
        9, "oracle agreement", ok,
        f"track {worst_track:.2e} (<1e-6), drift {worst_drift:.2e} (<1e-8), {elapsed:.2f}s",
    )


def test_criterion_10_pump_consistency():
    ok = True
    worst = 0.0
    for s in (5.0, 6.0, 1.5):
        p = OscillatorParams(1.0, complex(0.0, s))
        grid = build_grid(p, (-math.pi, math.pi), 200)
        rep = pump_consistency_report(p, grid, threshold_ulps=8.0)
        ok = ok and rep.passed
        worst = max(worst, rep.max_abs_deviation)
    assert _line(10, "pump consistency", ok, f"max {worst:.2f} ulp (<8) at 200 pts")


def _load_fig(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header, data = rows[0], rows[1:]
    times = np.array([float(r[0]) for r in data])
    cols = {
        h: np.array([float(r[i]) for r in data]) for i, h in enumerate(header) if i > 0
    }
    labels = [h[:-3] for h in header[1:] if h.endswith("_re")]
    values = {lab: cols[f"{lab}_re"] + 1j * cols[f"{lab}_im"] for lab in labels}
    return times, values


def test_criterion_11_figure_data(tmp_path):
    eps = 1.6e-4 * math.pi
    code = cli_main(["figures", "--omega0", "1", "--out", str(tmp_path)])
    assert code == 0
    poles = [-3 * math.pi / 2, -math.pi / 2, math.pi / 2, 3 * math.pi / 2]
    ok = True
    details = []
    for name, sigma, singular in (
        ("fig1", +1.0, False),
        ("fig2", +1.0, True),
        ("fig3", -1.0, False),
        ("fig4", -1.0, True),
    ):
        times, values = _load_fig(tmp_path / f"{name}.csv")
        index = {round(t, 10): i for i, t in enumerate(times)}
        worst_rep = 0.0
        for lab, vals in values.items():
            # repetition over one period: x(t + pi) = sigma * x(t)
            for i, t in enumerate(times):
                j = index.get(round(t + math.pi, 10))
                if j is None:
                    continue
                worst_rep = max(
                    worst_rep, abs(vals[j] - sigma * vals[i]) / (1.0 + abs(vals[i]))
                )
            peak = np.max(np.abs(vals))
            if singular:
                near = [
                    np.max(np.abs(vals[np.abs(times - p0) <= 2 * eps]))
                    for p0 in poles
                    if np.any(np.abs(times - p0) <= 2 * eps)
                ]
                ok = ok and len(near) == len(poles) and min(near) > 1e3
            else:
                ok = ok and peak < 1e2
        ok = ok and worst_rep < 1e-6
        details.append(f"{name}: rep {worst_rep:.1e}")
    assert _line(11, "figure data", ok, "; ".join(details))
