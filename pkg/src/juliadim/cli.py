"""Command-line driver.

Subcommands:
  bound   certified dimension lower bound for one parameter enclosure
  sweep   staircase of certified bounds over a parameter interval
  feig    rigorous enclosure of a Feigenbaum parameter from its permutation
  tiles   dump (or draw) all tile covers at a level

Every flag can be preseeded through a JULIADIM_* environment variable
(e.g. JULIADIM_DEPTH=12) for CI use.  Logs go to stderr; data (csv, json,
svg, disc dumps) goes to --out or stdout.  Exit code 0 means every
requested certification succeeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from . import kneading, mcmullen, spectral, svg
from .cdisc import ParamEnclosure
from .mcmullen import MatrixError
from .spectral import BoundResult, SpectralError
from .tiles import CoverConfig, TileError, level_covers

log = logging.getLogger("juliadim")

EXIT_OK = 0
EXIT_NOT_CERTIFIED = 1
EXIT_STAGE_ERROR = 2
EXIT_BRACKET = 3


@dataclass(frozen=True)
class RunConfig:
    depth: int = 10
    n_discs: int = 39
    split_tol: float = 0.01
    epsilon: float = 1e-10
    threads: int = 1
    center: float = -1.25
    radius: float = 1e-5
    out: str | None = None
    fmt: str = "json"
    validate_stage: bool = True
    t_lo: float = 0.1
    t_hi: float = 2.0

    def __post_init__(self):
        if self.depth < 2:
            raise ValueError(f"depth must be >= 2, got {self.depth}")
        if self.epsilon <= 0:
            raise ValueError(f"eps must be positive, got {self.epsilon}")
        if not (-2.0 <= self.center - self.radius and self.center + self.radius <= 2.0):
            raise ValueError("parameter enclosure must lie inside [-2, 2]")

    def param(self) -> ParamEnclosure:
        return ParamEnclosure(self.center, self.radius)

    def cover_cfg(self) -> CoverConfig:
        return CoverConfig(self.n_discs, self.split_tol, self.threads)


@dataclass(frozen=True)
class StairRecord:
    c_lo: float
    c_hi: float
    depth: int
    bound: float
    certified: bool
    max_diam: float
    wall_ms: float

    def csv_row(self) -> str:
        return (
            f"{self.c_lo!r},{self.c_hi!r},{self.depth},{self.bound!r},"
            f"{str(self.certified).lower()},{self.max_diam!r},{self.wall_ms!r}"
        )

    @staticmethod
    def csv_header() -> str:
        return "c_lo,c_hi,depth,bound,certified,max_diam,wall_ms"

    @staticmethod
    def from_csv_row(row: str) -> "StairRecord":
        f = row.strip().split(",")
        return StairRecord(
            float(f[0]), float(f[1]), int(f[2]), float(f[3]),
            f[4] == "true", float(f[5]), float(f[6]),
        )


def run_bound(cfg: RunConfig) -> tuple[BoundResult, float]:
    """The three-stage pipeline: tiles+matrix, bisection, validation."""
    k = cfg.depth
    if k < 3:
        raise ValueError(f"bound runs need depth >= 3, got {k}")
    t0 = time.perf_counter()
    log.info("Covering the half circles with %d discs each", cfg.n_discs)
    log.info("Covering the x-axis with 1 collapsed discs")
    log.info("Splitting the y-axis with tol: %g", cfg.split_tol)
    log.info(
        "Computing %d tiles to depth %d (level-%d quarter; matrix dimension %d)",
        1 << (k - 2), k, k, 1 << (k - 1),
    )
    matrix = mcmullen.build(k - 1, cfg.param(), cfg.cover_cfg())
    log.info("maxDiam(MM) = %.18g", matrix.max_diam)
    log.info("stage 1 done in %.1f ms", 1e3 * (time.perf_counter() - t0))

    t1 = time.perf_counter()
    delta = spectral.bisect_delta(matrix, eps=cfg.epsilon, t_lo=cfg.t_lo,
                                  t_hi=cfg.t_hi)
    log.info("hd_lo = %.17e", delta)
    log.info("stage 2 done in %.1f ms", 1e3 * (time.perf_counter() - t1))

    if not cfg.validate_stage:
        return (
            BoundResult(delta, float("nan"), False,
                        spectral.SpectralEnclosure(0.0, float("inf"), 0)),
            matrix.max_diam,
        )
    t2 = time.perf_counter()
    res = spectral.validate(matrix, delta)
    if res.certified:
        log.info("Confirmed that HD >= %.17e", res.delta_star)
    else:
        log.warning("Validation FAILED for delta = %.17e", delta)
    log.info("stage 3 done in %.1f ms", 1e3 * (time.perf_counter() - t2))
    return res, matrix.max_diam


def _bound_record(cfg: RunConfig) -> StairRecord:
    t0 = time.perf_counter()
    try:
        res, max_diam = run_bound(cfg)
        return StairRecord(
            cfg.center - cfg.radius, cfg.center + cfg.radius, cfg.depth,
            res.delta_star, res.certified, max_diam,
            1e3 * (time.perf_counter() - t0),
        )
    except (TileError, MatrixError, SpectralError) as exc:
        log.error("piece [%r, %r] failed: %s",
                  cfg.center - cfg.radius, cfg.center + cfg.radius, exc)
        return StairRecord(
            cfg.center - cfg.radius, cfg.center + cfg.radius, cfg.depth,
            float("nan"), False, float("nan"),
            1e3 * (time.perf_counter() - t0),
        )


def run_sweep(c_lo: float, c_hi: float, pieces: int, cfg: RunConfig) -> list[StairRecord]:
    if not -2.0 <= c_lo <= c_hi <= 2.0:
        raise ValueError(f"sweep domain [{c_lo}, {c_hi}] must lie inside [-2, 2]")
    radius = 0.5 * (c_hi - c_lo) / pieces
    centers = [c_lo + (2 * i + 1) * radius for i in range(pieces)]
    piece_cfgs = [
        replace(cfg, center=c, radius=radius, threads=1) for c in centers
    ]
    if cfg.threads > 1 and pieces > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            return list(pool.map(_bound_record, piece_cfgs))
    return [_bound_record(pc) for pc in piece_cfgs]


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _records_text(records: list[StairRecord], fmt: str) -> str:
    if fmt == "csv":
        return "\n".join([StairRecord.csv_header()] + [r.csv_row() for r in records]) + "\n"
    if fmt == "json":
        return json.dumps([r.__dict__ for r in records], indent=2) + "\n"
    if fmt == "svg":
        steps = [(r.c_lo, r.c_hi, r.bound) for r in records if r.certified]
        return svg.svg_staircase(steps)
    raise ValueError(f"unknown format {fmt!r}")


def cmd_bound(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    try:
        res, max_diam = run_bound(cfg)
    except (TileError, MatrixError) as exc:
        log.error("[tiles/matrix] %s", exc)
        return EXIT_STAGE_ERROR
    except SpectralError as exc:
        tag = "bracket" if "bracket" in str(exc) else "spectral"
        log.error("[%s] %s", tag, exc)
        return EXIT_BRACKET if tag == "bracket" else EXIT_STAGE_ERROR
    rec = StairRecord(
        cfg.center - cfg.radius, cfg.center + cfg.radius, cfg.depth,
        res.delta_star, res.certified, max_diam,
        1e3 * (time.perf_counter() - t0),
    )
    _emit(_records_text([rec], cfg.fmt), cfg.out)
    if cfg.validate_stage and not res.certified:
        return EXIT_NOT_CERTIFIED
    return EXIT_OK


def cmd_sweep(c_lo: float, c_hi: float, pieces: int, cfg: RunConfig) -> int:
    records = run_sweep(c_lo, c_hi, pieces, cfg)
    _emit(_records_text(records, cfg.fmt), cfg.out)
    return EXIT_OK if all(r.certified for r in records) else EXIT_NOT_CERTIFIED


def cmd_feig(perm_spec: str, tol: float, out: str | None) -> int:
    perm = kneading.UnimodalPermutation(
        tuple(int(p) for p in perm_spec.replace(" ", "").split(","))
    )
    try:
        root = kneading.matching_root(perm)
        enc = kneading.locate_feig_param(perm, tol)
    except kneading.KneadingError as exc:
        log.error("[kneading] %s", exc)
        return EXIT_STAGE_ERROR
    log.info("superattracting anchor: %.17g +/- %.3g", root.center, root.radius)
    log.info("Feigenbaum parameter: %.17g +/- %.3g", enc.center, enc.radius)
    _emit(
        json.dumps(
            {
                "permutation": list(perm.s),
                "center": enc.center,
                "radius": enc.radius,
                "anchor_center": root.center,
                "anchor_radius": root.radius,
            },
            indent=2,
        )
        + "\n",
        out,
    )
    return EXIT_OK


_KIND_NAMES = {0: "full", 1: "x", 2: "y"}


def cmd_tiles(cfg: RunConfig) -> int:
    k = cfg.depth
    try:
        covers = level_covers(k, cfg.param(), cfg.cover_cfg())
    except TileError as exc:
        log.error("[tiles] %s", exc)
        return EXIT_STAGE_ERROR
    if cfg.fmt == "svg":
        if k > 16:
            log.error("[tiles] svg output is limited to depth <= 16")
            return EXIT_STAGE_ERROR
        discs = []
        for cover in covers:
            upper = cover.code.is_upper
            for d in cover.discs:
                discs.append((int(d.kind), d.center, d.radius, upper))
        _emit(svg.svg_tiles(discs), cfg.out)
        return EXIT_OK
    lines = []
    for cover in covers:
        code = cover.code.bits
        for d in cover.discs:
            lines.append(
                f"{code},{_KIND_NAMES[int(d.kind)]},"
                f"{d.center.real!r},{d.center.imag!r},{d.radius!r}"
            )
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def _env(name: str, default):
    raw = os.environ.get(f"JULIADIM_{name}")
    if raw is None:
        return default
    return type(default)(raw) if default is not None else raw


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--depth", type=int, default=_env("DEPTH", 10))
    p.add_argument("--discs", type=int, default=_env("DISCS", 39))
    p.add_argument("--split-tol", type=float, default=_env("SPLIT_TOL", 0.01))
    p.add_argument("--eps", type=float, default=_env("EPS", 1e-10))
    p.add_argument("--threads", type=int, default=_env("THREADS", 1))
    p.add_argument("--center", type=float, default=_env("CENTER", -1.25))
    p.add_argument("--radius", type=float, default=_env("RADIUS", 1e-5))
    p.add_argument("--out", default=os.environ.get("JULIADIM_OUT"))
    p.add_argument("--format", dest="fmt", default=_env("FORMAT", "json"),
                   choices=["csv", "json", "svg"])
    p.add_argument("--no-validate", action="store_true",
                   help="skip the rigorous validation stage")
    p.add_argument("--t-lo", type=float, default=_env("T_LO", 0.1),
                   help="left end of the bisection bracket")
    p.add_argument("--t-hi", type=float, default=_env("T_HI", 2.0),
                   help="right end of the bisection bracket")


def _cfg_from(args) -> RunConfig:
    return RunConfig(
        depth=args.depth, n_discs=args.discs, split_tol=args.split_tol,
        epsilon=args.eps, threads=args.threads, center=args.center,
        radius=args.radius, out=args.out, fmt=args.fmt,
        validate_stage=not args.no_validate,
        t_lo=args.t_lo, t_hi=args.t_hi,
    )


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(message)s")
    ap = argparse.ArgumentParser(
        prog="juliadim",
        description="Certified lower bounds on Julia-set Hausdorff dimension",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="bound for one parameter enclosure")
    _add_common(p)

    p = sub.add_parser("sweep", help="staircase over a parameter interval")
    _add_common(p)
    p.add_argument("--domain", nargs=2, type=float, required=True,
                   metavar=("C_LO", "C_HI"))
    p.add_argument("--pieces", type=int, default=1)

    p = sub.add_parser("feig", help="locate a Feigenbaum parameter")
    p.add_argument("--perm", required=True,
                   help="comma-separated unimodal permutation, e.g. 1,0,2")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", default=os.environ.get("JULIADIM_OUT"))

    p = sub.add_parser("tiles", help="dump tile covers at a level")
    _add_common(p)

    args = ap.parse_args(argv)
    try:
        if args.command == "bound":
            return cmd_bound(_cfg_from(args))
        if args.command == "sweep":
            return cmd_sweep(args.domain[0], args.domain[1], args.pieces,
                             _cfg_from(args))
        if args.command == "feig":
            return cmd_feig(args.perm, args.tol, args.out)
        if args.command == "tiles":
            return cmd_tiles(_cfg_from(args))
    except ValueError as exc:
        log.error("[config] %s", exc)
        return EXIT_STAGE_ERROR
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
