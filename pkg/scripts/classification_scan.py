#!/usr/bin/env python3
"""Scan the shift ratio s/omega0 and print the periodicity verdict table.

The integer families stand out against the quasiperiodic background:
odd ratios are periodic, even nonzero ratios antiperiodic.

    python scripts/classification_scan.py --omega0 1 --lo -6 --hi 6 --step 0.5
"""

from __future__ import annotations

import argparse

from riccati_chirp.analysis import classify
from riccati_chirp.core import OscillatorParams
from riccati_chirp.modes import quasifrequency


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega0", type=float, default=1.0)
    ap.add_argument("--lo", type=float, default=-6.0, help="lowest s/omega0")
    ap.add_argument("--hi", type=float, default=6.0, help="highest s/omega0")
    ap.add_argument("--step", type=float, default=0.5)
    args = ap.parse_args()

    print(f"{'s/omega0':>9}  {'s':>8}  {'verdict':<22} {'m':>4}  {'Omega_S':>8}")
    ratio = args.lo
    while ratio <= args.hi + 1e-12:
        s = ratio * args.omega0
        params = OscillatorParams(args.omega0, complex(0.0, s))
        cls = classify(params)
        om = quasifrequency(params)
        m = "" if cls.witness_m is None else str(cls.witness_m)
        print(f"{ratio:9.3f}  {s:8.3f}  {cls.verdict.value:<22} {m:>4}  {om.real:8.3f}")
        ratio += args.step


if __name__ == "__main__":
    main()
