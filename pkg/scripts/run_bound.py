#!/usr/bin/env python3
"""Certified dimension lower bound for a single parameter enclosure.

Example:
    python scripts/run_bound.py --center -1.25 --radius 1e-5 --depth 18
"""

import argparse
import sys

from juliadim.cli import RunConfig, run_bound


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--center", type=float, default=-1.25)
    ap.add_argument("--radius", type=float, default=1e-5)
    ap.add_argument("--depth", type=int, default=14)
    ap.add_argument("--discs", type=int, default=39)
    ap.add_argument("--split-tol", type=float, default=0.01)
    ap.add_argument("--eps", type=float, default=1e-10)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    cfg = RunConfig(
        depth=args.depth, n_discs=args.discs, split_tol=args.split_tol,
        epsilon=args.eps, threads=args.threads,
        center=args.center, radius=args.radius,
    )
    res, max_diam = run_bound(cfg)
    print(f"c        = <{cfg.center}, {cfg.radius}>_x")
    print(f"depth    = {cfg.depth}")
    print(f"max_diam = {max_diam:.18g}")
    print(f"bound    = {res.delta_star:.17e}")
    print(f"certified: {res.certified}")
    print(f"rho(M(delta*)) in [{res.rho_at_delta.lo:.17e}, {res.rho_at_delta.hi:.17e}]")
    return 0 if res.certified else 1


if __name__ == "__main__":
    import logging

    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(message)s")
    sys.exit(main())
