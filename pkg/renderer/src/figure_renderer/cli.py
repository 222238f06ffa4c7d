"""Batch CLI: render fig1..fig4 CSVs from a directory into PNG files.

Usage: render_figures <csv-dir> <out-dir> [--clip Y]

Figures whose mode pair is singular (labels starting with V) get a y-clip,
±10 by default; --clip overrides it.  Any schema or parse failure exits
nonzero without leaving a partial image behind.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .render import FigureSpec, SchemaError, load_figure_csv, render

FIGURE_NAMES = ("fig1", "fig2", "fig3", "fig4")
DEFAULT_CLIP = 10.0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render mode-trace CSVs (fig1..fig4) into styled PNG figures.",
    )
    parser.add_argument("csv_dir", type=Path, help="directory holding fig*.csv")
    parser.add_argument("out_dir", type=Path, help="directory for fig*.png")
    parser.add_argument(
        "--clip", type=float, default=None,
        help=f"y-axis clip for singular (V) mode pairs, default {DEFAULT_CLIP:g}",
    )
    args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))

    found = [name for name in FIGURE_NAMES if (args.csv_dir / f"{name}.csv").exists()]
    if not found:
        print(f"error: no fig*.csv files in {args.csv_dir}", file=sys.stderr)
        return 1
    for name in found:
        src = args.csv_dir / f"{name}.csv"
        try:
            _, values = load_figure_csv(src)
            singular_pair = any(label.startswith("V") for label in values)
            clip = args.clip if args.clip is not None else (DEFAULT_CLIP if singular_pair else None)
            result = render(FigureSpec(src, args.out_dir / f"{name}.png", clip))
        except (SchemaError, ValueError, RuntimeError) as exc:
            print(f"error: {name}: {exc}", file=sys.stderr)
            return 1
        note = f" (clip ±{clip:g}, {result.n_clipped_samples} clipped)" if clip else ""
        print(f"{result.output_path}{note}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
