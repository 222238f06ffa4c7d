"""Command-line interface: evaluation, verification, classification, figure data.

Subcommands: modes, profiles, figures, check, classify, integrate.
Tabular output is RFC-4180-style CSV (CRLF line endings, mandatory header,
17-significant-digit scientific notation) or JSON carrying the identical
decimal renderings, so both formats are byte-stable across runs.

Exit codes: 0 success / all checks pass, 1 invariant failure from
``check``, 2 configuration error, 3 numerical failure (unconverged series
or step-size underflow), with partial output suppressed.

The environment variable RICCATI_CHIRP_THREADS caps internal parallelism
of per-point grid evaluation (0 or unset = sequential; values >= 2 use a
thread pool and keep output ordering deterministic).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import re
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import analysis
from .core import OscillatorParams, TimeGrid, Verdict, build_grid
from .hyp2f1 import Hyp2F1DomainError, SeriesUnconvergedError
from .modes import ModeKind, mode, quasifrequency
from .oracle import IVP, StepSizeUnderflowError, integrate
from .profiles import ProfileKind, freq_sq, pump_g, pump_h

__all__ = ["main"]


class ConfigError(ValueError):
    pass


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_RE_REAL = re.compile(rf"^[+-]?{_NUM}$")
_RE_IMAG = re.compile(rf"^(?P<sign>[+-])?(?P<mag>{_NUM})?i$")
_RE_BOTH = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<imsign>[+-])(?P<immag>{_NUM})?i$")


def parse_complex(text: str, what: str = "shift") -> complex:
    """Parse 'a', 'bi', or 'a+bi' style complex literals; rejects ambiguity."""
    s = text.strip().replace(" ", "")
    if _RE_REAL.match(s):
        return complex(float(s), 0.0)
    m = _RE_IMAG.match(s)
    if m:
        mag = float(m.group("mag")) if m.group("mag") else 1.0
        return complex(0.0, -mag if m.group("sign") == "-" else mag)
    m = _RE_BOTH.match(s)
    if m:
        mag = float(m.group("immag")) if m.group("immag") else 1.0
        return complex(float(m.group("re")), -mag if m.group("imsign") == "-" else mag)
    raise ConfigError(
        f"cannot parse {what} {text!r}; accepted forms: 2, 5i, -1.5i, 0+5i, 1-2i"
    )


def parse_window(text: str) -> Tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"window must be 'lo,hi', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ConfigError(f"window must be two numbers, got {text!r}") from exc
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ConfigError(f"window must satisfy lo < hi, got {text!r}")
    return lo, hi


def parse_tols(items: Optional[Sequence[str]]) -> Dict[str, float]:
    out: Dict[str, float] = {}
    for item in items or ():
        if "=" not in item:
            raise ConfigError(f"--tol expects NAME=VALUE, got {item!r}")
        name, _, val = item.partition("=")
        try:
            out[name.strip()] = float(val)
        except ValueError as exc:
            raise ConfigError(f"--tol value must be a number, got {item!r}") from exc
    return out


def _normalize_argv(argv: List[str]) -> List[str]:
    # argparse treats values like "-3,3" or "-1.5i" as option strings;
    # fold them into --flag=value form.
    value_flags = {"--window", "--shift", "--y0", "--dy0"}
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok in value_flags
            and nxt is not None
            and nxt.startswith("-")
            and len(nxt) > 1
            and (nxt[1].isdigit() or nxt[1] in ".i")
        ):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _fmt(x: float) -> str:
    # 17 significant digits: round-trips doubles and is byte-stable.
    return f"{x:.16e}"


def _pool_map(fn: Callable, items: Sequence) -> list:
    raw = os.environ.get("RICCATI_CHIRP_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"RICCATI_CHIRP_THREADS must be an integer, got {raw!r}")
    if n >= 2:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=n) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _render_csv(header: Sequence[str], rows: Sequence[Sequence[str]], footer: str = "") -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    if footer:
        buf.write(f"# {footer}\r\n")
    return buf.getvalue()


def _render_json(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    # Hand-assembled so the decimal renderings are byte-identical to the CSV.
    lines = []
    for row in rows:
        fields = ", ".join(f'"{k}": {v}' for k, v in zip(header, row))
        lines.append("  {" + fields + "}")
    return "[\n" + ",\n".join(lines) + "\n]\n"


def _emit_table(
    args: argparse.Namespace,
    header: Sequence[str],
    times: Sequence[float],
    columns: Sequence[Sequence[complex]],
    default_name: str,
) -> int:
    rows: List[List[str]] = []
    dropped = 0
    for i, t in enumerate(times):
        vals = [col[i] for col in columns]
        if any(not (math.isfinite(v.real) and math.isfinite(v.imag)) for v in vals):
            dropped += 1
            continue
        row = [_fmt(t)]
        for v in vals:
            row.append(_fmt(v.real))
            row.append(_fmt(v.imag))
        rows.append(row)
    if dropped:
        print(f"warning: dropped {dropped} rows with non-finite values", file=sys.stderr)
    if args.format == "csv":
        text = _render_csv(header, rows, footer=f"dropped_rows: {dropped}" if dropped else "")
    else:
        text = _render_json(header, rows)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, f"{default_name}.{args.format}")
        with open(path, "w", newline="") as fh:
            fh.write(text)
        print(path)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _params_from(args: argparse.Namespace) -> OscillatorParams:
    try:
        return OscillatorParams(args.omega0, parse_complex(args.shift))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _grid_from(args: argparse.Namespace, params: OscillatorParams) -> TimeGrid:
    window = parse_window(args.window) if args.window else (-params.period, params.period)
    eps = args.exclusion_radius
    try:
        return build_grid(params, window, args.points, eps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


_MODE_NAMES = {k.value: k for k in ModeKind}
_PROFILE_NAMES = {
    "const": ProfileKind.CONSTANT_OMEGA0_SQ,
    "partner_v": ProfileKind.PARTNER_V,
    "shifted_u": ProfileKind.SHIFTED_U,
    "shifted_v": ProfileKind.SHIFTED_V,
    "imag_u": ProfileKind.IMAG_SHIFT_U,
    "imag_v": ProfileKind.IMAG_SHIFT_V,
}


def cmd_modes(args: argparse.Namespace) -> int:
    params = _params_from(args)
    grid = _grid_from(args, params)
    try:
        kinds = [_MODE_NAMES[k] for k in args.kinds.split(",")]
    except KeyError as exc:
        raise ConfigError(f"unknown mode kind {exc.args[0]!r}; choose from {sorted(_MODE_NAMES)}")
    tol = parse_tols(args.tol).get("series", 1e-12)
    header = ["t"]
    for k in kinds:
        header += [f"{k.value}_re", f"{k.value}_im"]
    columns = [
        _pool_map(lambda t, kk=k: mode(kk, params, float(t), tol=tol), grid.points)
        for k in kinds
    ]
    return _emit_table(args, header, [float(t) for t in grid.points], columns, "modes")


def cmd_profiles(args: argparse.Namespace) -> int:
    params = _params_from(args)
    grid = _grid_from(args, params)
    try:
        kinds = [_PROFILE_NAMES[k] for k in args.kinds.split(",")] if args.kinds else []
    except KeyError as exc:
        raise ConfigError(
            f"unknown profile kind {exc.args[0]!r}; choose from {sorted(_PROFILE_NAMES)}"
        )
    pumps = [p for p in (args.pumps.split(",") if args.pumps else []) if p]
    for p in pumps:
        if p not in ("h", "g"):
            raise ConfigError(f"unknown pump {p!r}; choose h and/or g")
    if not kinds and not pumps:
        raise ConfigError("nothing to tabulate: pass --kinds and/or --pumps")
    header = ["t"]
    columns: List[List[complex]] = []
    for k in kinds:
        header += [f"{k.value}_re", f"{k.value}_im"]
        columns.append([freq_sq(k, params, float(t)) for t in grid.points])
    for p in pumps:
        header += [f"pump_{p}_re", f"pump_{p}_im"]
        fn = pump_h if p == "h" else pump_g
        columns.append([fn(params, float(t)) for t in grid.points])
    return _emit_table(args, header, [float(t) for t in grid.points], columns, "profiles")


FIGURE_SPECS = (
    ("fig1", 5.0, (ModeKind.U1, ModeKind.U2)),
    ("fig2", 5.0, (ModeKind.V1, ModeKind.V2)),
    ("fig3", 6.0, (ModeKind.U1, ModeKind.U2)),
    ("fig4", 6.0, (ModeKind.V1, ModeKind.V2)),
)

# Figure-grid defaults: 8000 midpoints over [-2pi, 2pi]/omega0 put the
# nearest retained samples about pi/(4000*omega0) from each pole, and the
# exclusion radius 1.6e-4*pi/omega0 keeps them inside two radii of it, so
# the singular structure of the V modes is actually sampled.
FIGURE_POINTS = 8000
FIGURE_EXCLUSION_FACTOR = 1.6e-4
FIGURE_SERIES_TOL = 1e-9


def cmd_figures(args: argparse.Namespace) -> int:
    omega0 = args.omega0
    window = parse_window(args.window) if args.window else (
        -2.0 * math.pi / omega0,
        2.0 * math.pi / omega0,
    )
    eps = (
        args.exclusion_radius
        if args.exclusion_radius is not None
        else FIGURE_EXCLUSION_FACTOR * math.pi / omega0
    )
    n = args.points if args.points is not None else FIGURE_POINTS
    tol = parse_tols(args.tol).get("series", FIGURE_SERIES_TOL)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for name, s, kinds in FIGURE_SPECS:
        params = OscillatorParams(omega0, complex(0.0, s))
        try:
            grid = build_grid(params, window, n, eps)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        header = ["t"]
        for k in kinds:
            header += [f"{k.value}_re", f"{k.value}_im"]
        columns = [
            _pool_map(lambda t, kk=k: mode(kk, params, float(t), tol=tol), grid.points)
            for k in kinds
        ]
        rows = []
        dropped = 0
        for i, t in enumerate(grid.points):
            vals = [col[i] for col in columns]
            if any(not (math.isfinite(v.real) and math.isfinite(v.imag)) for v in vals):
                dropped += 1
                continue
            row = [_fmt(float(t))]
            for v in vals:
                row += [_fmt(v.real), _fmt(v.imag)]
            rows.append(row)
        if dropped:
            print(f"warning: {name}: dropped {dropped} non-finite rows", file=sys.stderr)
        path = os.path.join(out_dir, f"{name}.csv")
        with open(path, "w", newline="") as fh:
            fh.write(_render_csv(header, rows, footer=f"dropped_rows: {dropped}" if dropped else ""))
        written.append(path)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    params = _params_from(args)
    grid = _grid_from(args, params)
    thresholds = parse_tols(args.tol)
    try:
        reports, skipped = analysis.run_full_check(params, grid, thresholds or None)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    name_w = max(len(r.name) for r in reports)
    print(f"{'check'.ljust(name_w)}  {'max_dev':>12}  {'threshold':>12}  status")
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        note = f"  ({r.grid_note})" if r.grid_note else ""
        print(f"{r.name.ljust(name_w)}  {r.max_abs_deviation:12.4e}  {r.threshold:12.4e}  {status}{note}")
    for s in skipped:
        print(f"{s.name.ljust(name_w)}  {'-':>12}  {'-':>12}  SKIP  ({s.reason})")
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed, {len(skipped)} skipped")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _fmt_compact_complex(z: complex) -> str:
    if z.imag == 0.0:
        return f"{z.real:g}"
    if z.real == 0.0:
        return f"{z.imag:g}i"
    return f"{z.real:g}{z.imag:+g}i"


def cmd_classify(args: argparse.Namespace) -> int:
    params = _params_from(args)
    cls = analysis.classify(params)
    om_s = quasifrequency(params)
    if cls.verdict is Verdict.UNBOUNDED:
        print(Verdict.UNBOUNDED.value)
    elif cls.witness_m is not None:
        print(f"{cls.verdict.value} m={cls.witness_m} Omega_S={_fmt_compact_complex(om_s)}")
    else:
        print(f"{cls.verdict.value} Omega_S={_fmt_compact_complex(om_s)}")
    return EXIT_OK


def cmd_integrate(args: argparse.Namespace) -> int:
    params = _params_from(args)
    if args.profile not in _PROFILE_NAMES:
        raise ConfigError(
            f"unknown profile {args.profile!r}; choose from {sorted(_PROFILE_NAMES)}"
        )
    kind = _PROFILE_NAMES[args.profile]
    window = parse_window(args.window) if args.window else (0.0, 1.0)
    y0 = parse_complex(args.y0, "y0")
    dy0 = parse_complex(args.dy0, "dy0")
    try:
        ivp = IVP(kind, params, y0, dy0, window[0], window[1])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    n = args.points
    ts = [window[0] + (window[1] - window[0]) * i / (n - 1) for i in range(n)] if n > 1 else [window[1]]
    result = integrate(ivp, rel_tol=args.rel_tol, abs_tol=args.abs_tol, output_times=ts)
    header = ["t", "y_re", "y_im", "dy_re", "dy_im"]
    columns = [list(result.values), list(result.derivatives)]
    return _emit_table(args, header, [float(t) for t in result.times], columns, "integrate")


def _add_common(p: argparse.ArgumentParser, points_default: Optional[int] = 400) -> None:
    p.add_argument("--omega0", type=float, default=1.0, help="natural frequency (> 0)")
    p.add_argument("--shift", type=str, default="0", help="complex shift S, e.g. 5i or 0+5i")
    p.add_argument("--window", type=str, default=None, help="time window 'lo,hi'")
    p.add_argument("--points", type=int, default=points_default, help="grid points")
    p.add_argument(
        "--exclusion-radius",
        type=float,
        default=None,
        help="distance kept from tangent poles (default 1e-2*pi/omega0)",
    )
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=str, default=None, help="output directory")
    p.add_argument(
        "--tol",
        action="append",
        default=None,
        metavar="NAME=VALUE",
        help="named tolerance override, repeatable (e.g. series=1e-10, ode=1e-5)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riccati-chirp",
        description="Shift-generated chirp oscillators: closed-form modes, "
        "frequency profiles, verification suite, and figure data export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("modes", help="tabulate closed-form modes over a grid")
    _add_common(p)
    p.add_argument("--kinds", type=str, required=True, help="comma list, e.g. U1,U2")
    p.set_defaults(fn=cmd_modes)

    p = sub.add_parser("profiles", help="tabulate frequency profiles and pumps")
    _add_common(p)
    p.add_argument("--kinds", type=str, default=None, help=f"comma list from {sorted(_PROFILE_NAMES)}")
    p.add_argument("--pumps", type=str, default=None, help="comma list from h,g")
    p.set_defaults(fn=cmd_profiles)

    p = sub.add_parser("figures", help="write fig1..fig4 CSV mode data")
    _add_common(p, points_default=None)
    p.set_defaults(fn=cmd_figures)

    p = sub.add_parser("check", help="run the invariant audit, exit 1 on failure")
    _add_common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("classify", help="print the periodicity/boundedness verdict")
    p.add_argument("--omega0", type=float, required=True)
    p.add_argument("--shift", type=str, required=True)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("integrate", help="adaptive integration of one oscillator IVP")
    _add_common(p, points_default=101)
    p.add_argument("--profile", type=str, required=True, help=f"one of {sorted(_PROFILE_NAMES)}")
    p.add_argument("--y0", type=str, default="1", help="initial value (complex literal)")
    p.add_argument("--dy0", type=str, default="0", help="initial derivative (complex literal)")
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.set_defaults(fn=cmd_integrate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_normalize_argv(argv))
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SeriesUnconvergedError, StepSizeUnderflowError, Hyp2F1DomainError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
