#!/usr/bin/env python3
"""Staircase of certified bounds over a real parameter interval.

Writes a CSV (and optionally an SVG staircase plot).  Example:

    python scripts/sweep_staircase.py --domain -1.402 -1.350 --pieces 26 \
        --depth 17 --csv stairs.csv --svg stairs.svg
"""

import argparse
import logging
import sys

from juliadim.cli import RunConfig, StairRecord, run_sweep
from juliadim.svg import svg_staircase


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--domain", nargs=2, type=float, required=True,
                    metavar=("C_LO", "C_HI"))
    ap.add_argument("--pieces", type=int, default=10)
    ap.add_argument("--depth", type=int, default=12)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--csv", default=None, help="CSV output path")
    ap.add_argument("--svg", default=None, help="SVG staircase output path")
    args = ap.parse_args()

    cfg = RunConfig(depth=args.depth, threads=args.threads)
    records = run_sweep(args.domain[0], args.domain[1], args.pieces, cfg)

    lines = [StairRecord.csv_header()] + [r.csv_row() for r in records]
    text = "\n".join(lines) + "\n"
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        steps = [(r.c_lo, r.c_hi, r.bound) for r in records if r.certified]
        with open(args.svg, "w") as fh:
            fh.write(svg_staircase(steps))

    n_ok = sum(r.certified for r in records)
    print(f"{n_ok}/{len(records)} pieces certified", file=sys.stderr)
    return 0 if n_ok == len(records) else 1


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(message)s")
    sys.exit(main())
