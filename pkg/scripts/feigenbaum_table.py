#!/usr/bin/env python3
"""Locate real Feigenbaum parameters for a list of unimodal permutations.

With no arguments, reproduces the built-in table of ten period-3..6
combinatorics.  Permutations are given as comma-separated lists:

    python scripts/feigenbaum_table.py 1,0 1,0,2 --tol 1e-10
"""

import argparse
import sys
import time

from juliadim.kneading import UnimodalPermutation, locate_feig_param, matching_root

DEFAULT_PERMS = [
    "1,0,5,4,3,2",
    "1,0,4,3,2",
    "2,0,5,4,3,1",
    "1,0,3,2",
    "3,0,5,4,2,1",
    "2,0,4,3,1",
    "1,0,2",
    "2,0,5,3,1,4",
    "3,0,4,2,1",
    "4,0,5,2,3,1",
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("perms", nargs="*", default=DEFAULT_PERMS,
                    help="comma-separated unimodal permutations")
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()

    print(f"{'permutation':<24} {'anchor':<22} {'parameter':<22} time")
    for spec in args.perms:
        perm = UnimodalPermutation(tuple(int(p) for p in spec.split(",")))
        t0 = time.perf_counter()
        anchor = matching_root(perm)
        enc = locate_feig_param(perm, tol=args.tol)
        dt = time.perf_counter() - t0
        print(f"{str(list(perm.s)):<24} {anchor.center:<22.12f} "
              f"{enc.center:<22.12f} {dt:5.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
