#!/usr/bin/env python3
"""Produce the four mode-trace CSVs and, when the renderer is installed,
the styled PNG figures.

    python scripts/reproduce_figures.py --out figures/
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from riccati_chirp.cli import main as chirp_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--omega0", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=None)
    args = ap.parse_args()

    argv = ["figures", "--omega0", str(args.omega0), "--out", str(args.out)]
    if args.points:
        argv += ["--points", str(args.points)]
    code = chirp_main(argv)
    if code != 0:
        return code

    try:
        from figure_renderer.cli import main as render_main
    except ImportError:
        print("figure_renderer not installed; CSVs written, skipping PNG rendering")
        return 0
    return render_main([str(args.out), str(args.out)])


if __name__ == "__main__":
    sys.exit(main())
