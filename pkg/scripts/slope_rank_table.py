#!/usr/bin/env python3
"""Slope-law experiment on the grid torus.

Twists the (0,1) column k times along the (1,0) row and tabulates the
total Floer rank of the result against a (0,1) column and a (1,0) row,
next to the flat-model determinant counts |ad - bc|.  The two columns
must agree for every power.

Usage: python3 scripts/slope_rank_table.py [--grid 5] [--max-power 5]
"""

import argparse

from twistcheck import floer as fl
from twistcheck import scenarios as sc
from twistcheck import surface as sf


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=5, help="grid size")
    ap.add_argument("--max-power", type=int, default=5)
    args = ap.parse_args()

    n = args.grid
    print(f"{'k':>4} {'rank vs (0,1)':>14} {'|k|':>5} "
          f"{'rank vs (1,0)':>14} {'1':>3}")
    mismatches = 0
    for k in [*range(1, args.max_power + 1),
              *range(-1, -args.max_power - 1, -1)]:
        s = sc.grid_torus(n)
        out = fl.dehn_twist(s, sc.grid_row(s, n, 0), k,
                            twist=[sc.grid_col(s, n, 0)],
                            carry=[sc.grid_col(s, n, 2)])
        tn = out.twisted[0]
        col_rank = fl.rank_hf(tn, out.carried[0]).total()
        row2 = sf.Curve.from_symbols(out.surface,
                                     sc.grid_row(s, n, 2).symbols(),
                                     "row2")
        row_rank = fl.rank_hf(tn, row2).total()
        print(f"{k:>4} {col_rank:>14} {abs(k):>5} {row_rank:>14} {1:>3}")
        if col_rank != abs(k) or row_rank != 1:
            mismatches += 1
    print("mismatches:", mismatches)
    return 0 if mismatches == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
