#!/usr/bin/env python3
"""Random audit of the twist exact-sequence rank constraints.

Generates random (S, Q, N, k) triples on the grid torus, runs
les_rank_check on each, and prints a histogram of the observed rank
sequences together with any failures.

Usage: python3 scripts/les_random_audit.py [--count 200] [--seed 0]
"""

import argparse
import collections

import numpy as np

from twistcheck import pipeline as pl
from twistcheck import scenarios as sc


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    histogram = collections.Counter()
    failures = 0
    for _ in range(args.count):
        scen = sc.random_torus_les_scenario(rng)
        rep = pl.les_rank_check(scen)
        key = (rep.data["r1"], tuple(rep.data["rank_sequence"]))
        histogram[key] += 1
        if not rep.passed:
            failures += 1
            print("FAIL:", scen.description)
            print("     ", rep.data)

    print(f"{args.count} scenarios, {failures} failures")
    print(f"{'r1':>4}  {'rank sequence':<24} count")
    for (r1, seq), count in sorted(histogram.items()):
        print(f"{r1:>4}  {str(list(seq)):<24} {count}")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
