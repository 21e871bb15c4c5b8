#!/usr/bin/env python3
"""Emit the reference-figure CSVs.

Writes three files into --outdir (default ./figures):

  fig1_universal_bound.csv         the tilt-universal Winsorized bound vs sigma
  fig2_top_universal_over_fixed.csv  ratios universal/fixed-tilt for c = 1, 3/2, 2, 3, 5
  fig2_bottom_trunc_over_winsor.csv  ratios truncated/Winsorized for the same tilts

Any CSV plotter reproduces the figures from these; values are full double
precision.
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from winsor_bounds.sweeps import SweepKind, compute_sweep, sigma_grid, write_csv

FIGURE_TILTS = (1.0, 1.5, 2.0, 3.0, 5.0)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figures")
    parser.add_argument("--sigma-min", type=float, default=0.05)
    parser.add_argument("--sigma-max", type=float, default=100.0)
    parser.add_argument("--points", type=int, default=200)
    args = parser.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    grid = sigma_grid(args.sigma_min, args.sigma_max, args.points, "log")

    jobs = (
        ("fig1_universal_bound.csv", SweepKind.UNIVERSAL_WINSOR, ()),
        ("fig2_top_universal_over_fixed.csv", SweepKind.RATIO_UNIVERSAL_OVER_FIXED, FIGURE_TILTS),
        ("fig2_bottom_trunc_over_winsor.csv", SweepKind.RATIO_TRUNC_OVER_WINSOR, FIGURE_TILTS),
    )
    for filename, kind, tilts in jobs:
        table = compute_sweep(kind, grid, tilts)
        path = os.path.join(args.outdir, filename)
        write_csv(table, path)
        print(f"wrote {path} ({len(table.rows)} rows)")


if __name__ == "__main__":
    main()
