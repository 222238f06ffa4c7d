import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from riccati_chirp.analysis import (
    classify,
    product_invariant_report,
    product_variation_report,
    pt_symmetry_report,
    run_full_check,
    verify_periodicity,
)
from riccati_chirp.core import OscillatorParams, Verdict, build_grid
from riccati_chirp.modes import ModeKind
from riccati_chirp.profiles import ProfileKind


def test_classify_flagship_points():
    assert classify(OscillatorParams(1.0, 5j)).verdict is Verdict.PERIODIC
    assert classify(OscillatorParams(1.0, 5j)).witness_m == 3
    assert classify(OscillatorParams(1.0, 6j)).verdict is Verdict.ANTIPERIODIC
    assert classify(OscillatorParams(1.0, 6j)).witness_m == 3
    assert classify(OscillatorParams(1.0, 0.5 + 0j)).verdict is Verdict.UNBOUNDED
    c = classify(OscillatorParams(2.0, 2j))
    assert c.verdict is Verdict.PERIODIC and c.witness_m == 1
    assert classify(OscillatorParams(1.0, 1.5j)).verdict is Verdict.QUASIPERIODIC_BOUNDED


def test_classify_witness_families():
    for omega0 in (0.5, 1.0, 2.0):
        for m in (-2, -1, 1, 2, 3):
            s = (2 * m - 1) * omega0
            c = classify(OscillatorParams(omega0, complex(0, s)))
            assert c.verdict is Verdict.PERIODIC and c.witness_m == m
            s = 2 * m * omega0
            c = classify(OscillatorParams(omega0, complex(0, s)))
            assert c.verdict is Verdict.ANTIPERIODIC and c.witness_m == m


def test_classify_s_zero_is_quasiperiodic():
    # the antiperiodic integer family excludes m = 0 by convention
    assert classify(OscillatorParams(1.0, 0j)).verdict is Verdict.QUASIPERIODIC_BOUNDED


def test_classify_m_zero_periodic_branch():
    # s = -omega0 belongs to the periodic family with witness m = 0
    c = classify(OscillatorParams(1.0, -1j))
    assert c.verdict is Verdict.PERIODIC and c.witness_m == 0


def test_classify_reference_period():
    c = classify(OscillatorParams(2.0, 0j))
    assert c.reference_period == pytest.approx(math.pi / 2)


@given(lam=st.floats(0.01, 100.0), s_ratio=st.floats(-6.5, 6.5), omega0=st.floats(0.1, 5.0))
def test_classify_scaling_invariance(lam, s_ratio, omega0):
    # verdicts depend only on s/omega0, so joint scaling changes nothing
    a = classify(OscillatorParams(omega0, complex(0, s_ratio * omega0)))
    b = classify(OscillatorParams(lam * omega0, complex(0, s_ratio * lam * omega0)))
    assert a.verdict is b.verdict
    assert a.witness_m == b.witness_m


@pytest.mark.parametrize("shift,kinds", [(5j, "periodic"), (6j, "antiperiodic")])
def test_verify_periodicity_shifted_modes(shift, kinds):
    p = OscillatorParams(1.0, shift)
    grid = build_grid(p, (-math.pi, math.pi), 100)
    for kind in (ModeKind.U1, ModeKind.U2, ModeKind.V1, ModeKind.V2):
        rep = verify_periodicity(p, kind, grid)
        assert rep.passed, f"{kind}: {rep.max_abs_deviation:.3e}"


def test_verify_periodicity_tight_deviation():
    p = OscillatorParams(1.0, 5j)
    grid = build_grid(p, (-1.0, 1.0), 50)
    rep = verify_periodicity(p, ModeKind.U2, grid)
    assert rep.max_abs_deviation < 1e-10


def test_verify_periodicity_rejects_unbounded():
    p = OscillatorParams(1.0, 0.3 + 0j)
    grid = build_grid(p, (-1.0, 1.0), 20)
    with pytest.raises(ValueError):
        verify_periodicity(p, ModeKind.U2, grid)


def test_pt_symmetry_reports():
    p = OscillatorParams(1.0, 5j)
    grid = build_grid(p, (-1.3, 1.3), 100)
    for kind in (ProfileKind.IMAG_SHIFT_U, ProfileKind.IMAG_SHIFT_V):
        rep = pt_symmetry_report(kind, p, grid)
        assert rep.passed
        assert rep.max_abs_deviation < 1e-12
    p6 = OscillatorParams(1.0, 6j)
    assert pt_symmetry_report(ProfileKind.IMAG_SHIFT_V, p6, grid).passed


def test_pt_symmetry_preconditions():
    grid = build_grid(OscillatorParams(1.0), (-1.0, 1.0), 20)
    with pytest.raises(ValueError):
        pt_symmetry_report(ProfileKind.SHIFTED_U, OscillatorParams(1.0, 0.5 + 0j), grid)
    asym = build_grid(OscillatorParams(1.0), (0.1, 1.0), 20)
    with pytest.raises(ValueError):
        pt_symmetry_report(ProfileKind.IMAG_SHIFT_U, OscillatorParams(1.0, 5j), asym)


def test_product_reports():
    p = OscillatorParams(3.0)
    grid = build_grid(p, (-0.4, 0.4), 60)
    rep = product_invariant_report((ModeKind.u1, ModeKind.v1), p, grid)
    assert rep.passed  # constant and pinned to omega0 = 3
    p5 = OscillatorParams(1.0, 5j)
    grid5 = build_grid(p5, (-math.pi, math.pi), 80)
    assert product_invariant_report((ModeKind.U2, ModeKind.V1), p5, grid5).passed
    # (u2, v2) is the expected failure: constancy does NOT hold
    rep_bad = product_invariant_report((ModeKind.u2, ModeKind.v2), p5, grid5)
    assert not rep_bad.passed
    # and the variation report passes exactly because the ratio is large
    assert product_variation_report((ModeKind.u2, ModeKind.v2), p5, grid5).passed


def test_run_full_check_gating():
    p = OscillatorParams(1.0, 0.3 + 0j)  # unbounded configuration
    grid = build_grid(p, (-math.pi, math.pi), 40)
    reports, skipped = run_full_check(p, grid)
    names = {r.name for r in reports}
    skipped_names = {s.name for s in skipped}
    assert all(r.passed for r in reports)
    assert not any(n.startswith("periodicity") for n in names)
    assert "periodicity" in skipped_names
    assert "pt_symmetry" in skipped_names
    assert "pump_consistency" in skipped_names
    assert any(n.startswith("ode_residual") for n in names)


def test_run_full_check_series_pole_gating():
    # S = -5i puts the series parameter on a pole: the U1 rows are skipped
    p = OscillatorParams(1.0, -5j)
    grid = build_grid(p, (-math.pi, math.pi), 40)
    reports, skipped = run_full_check(p, grid)
    assert all(r.passed for r in reports)
    skipped_names = {s.name for s in skipped}
    assert "ode_residual_U1" in skipped_names
    assert "periodicity_U1" in skipped_names
    assert "appendix_u1_crosscheck" in skipped_names


def test_run_full_check_rejects_unknown_tolerance():
    p = OscillatorParams(1.0, 5j)
    grid = build_grid(p, (-1.0, 1.0), 10)
    with pytest.raises(ValueError):
        run_full_check(p, grid, {"not_a_threshold": 1.0})
