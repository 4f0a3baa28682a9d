"""Validated boundary covers of the dynamical tiles of p_c(z) = z^2 + c.

A level-k tile is a connected component of the (k-1)-fold preimage of the
slit disc D_2(0) minus [-2, 2].  Tiles are encoded by k-bit indices
b_{k-1} ... b_0: bit b_j says whether the j-th forward image of the tile
lies in the upper (1) or lower (0) half plane; b_{k-1} is the half plane
of the tile itself and is the bit appended most recently during
construction.

A cover is a batch of extended discs whose union provably contains the
tile boundary for every parameter in a real enclosure.  Refinement maps a
level-k cover to a level-(k+1) cover by the inverse map +-sqrt(w - c),
choosing the branch that lands in the target quadrant.

For real parameters the four-fold symmetry (conjugation and negation)
means only the fourth-quadrant tiles, indices 0 .. 2^(k-2)-1, are ever
computed; everything else is index arithmetic.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rounding as rd
from .cdisc import (
    DiscBatch,
    DiscKind,
    ParamEnclosure,
    _axisx_sqrt_split,
    _full_sqrt_origin_fallback,
    _full_sqrt_principal,
    _split_ay_rows,
    _sub_param,
)


class TileError(RuntimeError):
    pass


@dataclass(frozen=True)
class TileCode:
    level: int
    index: int

    def __post_init__(self):
        if self.level < 1:
            raise TileError(f"level must be >= 1, got {self.level}")
        if not 0 <= self.index < (1 << self.level):
            raise TileError(f"index {self.index} out of range at level {self.level}")

    @property
    def bits(self) -> str:
        return format(self.index, f"0{self.level}b")

    @property
    def is_upper(self) -> bool:
        """Half plane of the tile itself: the most significant bit."""
        return bool((self.index >> (self.level - 1)) & 1)

    def parent(self) -> "TileCode":
        """The level-(k-1) tile containing this one (drop the oldest bit)."""
        return TileCode(self.level - 1, self.index >> 1)

    def image(self) -> "TileCode":
        """The level-(k-1) tile p_c maps this one onto (drop the newest bit)."""
        return TileCode(self.level - 1, self.index & ((1 << (self.level - 1)) - 1))

    def child(self, bit: int) -> "TileCode":
        return TileCode(self.level + 1, self.index + (bit << self.level))


def quarter_rep(index: int, level: int) -> int:
    """Map any level-k tile index to its fourth-quadrant representative.

    Negation of a tile flips only the most significant code bit (forward
    images of T and -T coincide since p_c is even); conjugation flips every
    bit.  Composing the two as needed lands every index in [0, 2^(k-2)),
    and |z|-distance bounds are invariant under both maps.
    """
    index &= (1 << (level - 1)) - 1
    if index >= (1 << (level - 2)):
        index = ((1 << (level - 1)) - 1) ^ index
    return index


@dataclass(frozen=True)
class CoverConfig:
    n_discs: int = 39
    split_tol: float = 0.01
    threads: int = 1

    def __post_init__(self):
        if self.n_discs < 3:
            raise TileError(f"need at least 3 arc discs, got {self.n_discs}")
        if self.split_tol <= 0:
            raise TileError(f"split_tol must be positive, got {self.split_tol}")
        if self.threads < 1:
            raise TileError(f"threads must be >= 1, got {self.threads}")


@dataclass
class TileCover:
    code: TileCode
    batch: DiscBatch
    param: ParamEnclosure

    @property
    def discs(self):
        return self.batch.to_discs()


@dataclass(frozen=True)
class DistanceBounds:
    """Validated bracket of s_i = max{|z| : z in P_i}."""

    lo_s: float
    hi_s: float

    def __post_init__(self):
        if not (0.0 <= self.lo_s <= self.hi_s):
            raise TileError(f"bad distance bounds [{self.lo_s}, {self.hi_s}]")


# ---------------------------------------------------------------------------
# initial covers
# ---------------------------------------------------------------------------

def _arc_batch(n_discs: int, upper: bool) -> DiscBatch:
    n = n_discs
    phi = (np.arange(n) + 0.5) * (math.pi / n)
    # half the chord between adjacent centers, with a 5% safety factor that
    # dwarfs every rounding effect in the trigonometric centers
    radius = rd.up(2.1 * math.sin(math.pi / (2.0 * n)) + 1e-13)
    cx = 2.0 * np.cos(phi)
    cy = 2.0 * np.sin(phi)
    if not upper:
        cy = -cy
    kind = np.concatenate(
        [np.full(n, DiscKind.FULL, dtype=np.uint8), [np.uint8(DiscKind.AXIS_X)]]
    )
    cx = np.concatenate([cx, [0.0]])
    cy = np.concatenate([cy, [0.0]])
    r = np.concatenate([np.full(n, radius), [2.0]])
    return DiscBatch(kind, cx, cy, r)


def initial_covers(n_discs: int, param: ParamEnclosure) -> tuple[TileCover, TileCover]:
    """Level-1 covers of the lower (index 0) and upper (index 1) half discs.

    Each cover is n_discs full discs along the radius-2 arc plus one
    collapsed x-axis disc <0, 2>_x for the diameter segment.
    """
    if n_discs < 3:
        raise TileError(f"need at least 3 arc discs, got {n_discs}")
    lower = TileCover(TileCode(1, 0), _arc_batch(n_discs, upper=False), param)
    upper = TileCover(TileCode(1, 1), _arc_batch(n_discs, upper=True), param)
    return lower, upper


# ---------------------------------------------------------------------------
# refinement
# ---------------------------------------------------------------------------

def _refine_arrays(kind, cx, cy, r, param: ParamEnclosure, qx: int, qy: int,
                   split_tol: float) -> DiscBatch:
    """One inverse-map step on a cover batch, landing in quadrant (qx, qy)."""
    kind, cx, cy, r = _sub_param(kind, cx, cy, r, param)
    ok, ox, oy, orr = [], [], [], []

    fm = kind == DiscKind.FULL
    if np.any(fm):
        fcx, fcy, fr = cx[fm], cy[fm], r[fm]
        px, py, pr, bad = _full_sqrt_principal(fcx, fcy, fr)
        rp = rd.up(fr)
        # discs meeting the branch cut (negative real axis) keep both signs
        cross = ~bad & (rd.sub_dn(fcx, rp) <= 0.0) & (np.abs(fcy) <= rp)
        plain = ~bad & ~cross
        if np.any(plain):
            ok.append(np.full(plain.sum(), DiscKind.FULL, dtype=np.uint8))
            ox.append(qx * px[plain])
            oy.append(qx * py[plain])
            orr.append(pr[plain])
        if np.any(cross):
            for s in (1.0, -1.0):
                ok.append(np.full(cross.sum(), DiscKind.FULL, dtype=np.uint8))
                ox.append(s * px[cross])
                oy.append(s * py[cross])
                orr.append(pr[cross])
        if np.any(bad):
            # origin not excluded: fall back to an origin-centered disc
            # containing both branches
            fb = _full_sqrt_origin_fallback(fcx[bad], fcy[bad], fr[bad])
            ok.append(np.full(bad.sum(), DiscKind.FULL, dtype=np.uint8))
            ox.append(np.zeros(bad.sum()))
            oy.append(np.zeros(bad.sum()))
            orr.append(fb)

    am = kind == DiscKind.AXIS_X
    if np.any(am):
        has_pos, pxx, prx, has_neg, nyy, nry = _axisx_sqrt_split(cx[am], r[am])
        if np.any(has_pos):
            npos = int(has_pos.sum())
            ok.append(np.full(npos, DiscKind.AXIS_X, dtype=np.uint8))
            ox.append(qx * pxx[has_pos])
            oy.append(np.zeros(npos))
            orr.append(prx[has_pos])
        if np.any(has_neg):
            ycy, yrr = _split_ay_rows(qy * nyy[has_neg], nry[has_neg], split_tol)
            nneg = len(ycy)
            ok.append(np.full(nneg, DiscKind.AXIS_Y, dtype=np.uint8))
            ox.append(np.zeros(nneg))
            oy.append(ycy)
            orr.append(yrr)

    if not ok:
        raise TileError("refinement produced an empty cover")
    return DiscBatch(
        np.concatenate(ok), np.concatenate(ox), np.concatenate(oy), np.concatenate(orr)
    )


def _quadrant_signs(parent_upper: bool, bit: int) -> tuple[int, int]:
    """Signs (qx, qy) of the quadrant the refined tile lands in.

    The new tile is in the upper half plane iff bit == 1; squaring doubles
    arguments, so the parent sits in the upper half plane exactly when the
    child quadrant has qx*qy > 0.
    """
    qy = 1 if bit else -1
    qx = 1 if parent_upper == bool(bit) else -1
    return qx, qy


def refine(cover: TileCover, bit: int, split_tol: float) -> TileCover:
    if bit not in (0, 1):
        raise TileError(f"bit must be 0 or 1, got {bit}")
    qx, qy = _quadrant_signs(cover.code.is_upper, bit)
    b = cover.batch
    out = _refine_arrays(b.kind, b.cx, b.cy, b.r, cover.param, qx, qy, split_tol)
    return TileCover(cover.code.child(bit), out, cover.param)


def distance_bounds(cover: TileCover) -> DistanceBounds:
    if len(cover.batch) == 0:
        raise TileError(f"empty cover for tile {cover.code}")
    lo, hi = cover.batch.abs_bounds()
    return DistanceBounds(float(np.max(lo)), float(np.max(hi)))


# ---------------------------------------------------------------------------
# quarter-tile enumeration
# ---------------------------------------------------------------------------

def _dfs_emit(cover: TileCover, k: int, cfg: CoverConfig, out_codes, out_lo, out_hi):
    """Depth-first expansion of a cover down to level k, recording distance
    bounds of every fourth-quadrant leaf.

    The two newest bits of a fourth-quadrant index are zero, so branching is
    free until level k-2 and forced to bit 0 afterwards.
    """
    level = cover.code.level
    if level == k:
        db = distance_bounds(cover)
        out_codes.append(cover.code.index)
        out_lo.append(db.lo_s)
        out_hi.append(db.hi_s)
        return
    branches = (0,) if level >= k - 2 else (0, 1)
    for bit in branches:
        try:
            child = refine(cover, bit, cfg.split_tol)
        except TileError as exc:
            raise TileError(f"refining {cover.code} bit {bit}: {exc}") from exc
        _dfs_emit(child, k, cfg, out_codes, out_lo, out_hi)


def _prefix_cover(root_bit: int, prefix: tuple[int, ...], param: ParamEnclosure,
                  cfg: CoverConfig) -> TileCover:
    lower, upper = initial_covers(cfg.n_discs, param)
    cover = upper if root_bit else lower
    for bit in prefix:
        cover = refine(cover, bit, cfg.split_tol)
    return cover


def _quarter_task(args):
    root_bit, prefix, k, param, cfg = args
    cover = _prefix_cover(root_bit, prefix, param, cfg)
    codes, lo, hi = [], [], []
    _dfs_emit(cover, k, cfg, codes, lo, hi)
    return (
        np.asarray(codes, dtype=np.int64),
        np.asarray(lo, dtype=np.float64),
        np.asarray(hi, dtype=np.float64),
    )


def _prefix_plan(k: int, threads: int) -> list[tuple[int, tuple[int, ...]]]:
    """Fixed task partition: (root bit, appended-bit prefix) pairs.

    The prefix depth depends only on k and the free-bit budget, never on
    the worker count, so results are bitwise identical for any threads.
    """
    free = max(k - 3, 0)
    depth = min(3, free)
    tasks = []
    # at k=2 even the root bit is pinned to the fourth quadrant
    roots = (0,) if k <= 2 else (0, 1)
    for root_bit in roots:
        for p in range(1 << depth):
            prefix = tuple((p >> j) & 1 for j in range(depth))
            tasks.append((root_bit, prefix))
    return tasks


def quarter_bounds(k: int, param: ParamEnclosure, cfg: CoverConfig):
    """Distance bounds for every fourth-quadrant tile at level k.

    Returns (lo_s, hi_s) arrays of length 2^(k-2) indexed by tile code; the
    remaining three quadrants follow by symmetry via quarter_rep.
    """
    if k < 2:
        raise TileError(f"quarter tiles need level >= 2, got {k}")
    n = 1 << (k - 2)
    lo = np.zeros(n)
    hi = np.zeros(n)
    seen = np.zeros(n, dtype=bool)
    tasks = [(rb, pf, k, param, cfg) for rb, pf in _prefix_plan(k, cfg.threads)]
    if cfg.threads == 1 or len(tasks) == 1:
        results = map(_quarter_task, tasks)
    else:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(_quarter_task, tasks))
    for codes, tlo, thi in results:
        lo[codes] = tlo
        hi[codes] = thi
        seen[codes] = True
    if not seen.all():
        raise TileError("incomplete quarter enumeration")
    return lo, hi


def quarter_tiles(k: int, param: ParamEnclosure, cfg: CoverConfig):
    """Stream of (TileCode, DistanceBounds) over the level-k quarter."""
    lo, hi = quarter_bounds(k, param, cfg)
    for i in range(len(lo)):
        yield TileCode(k, i), DistanceBounds(float(lo[i]), float(hi[i]))


def level_covers(k: int, param: ParamEnclosure, cfg: CoverConfig) -> list[TileCover]:
    """All 2^k tile covers at level k, in code order (small k only)."""
    if k < 1:
        raise TileError(f"level must be >= 1, got {k}")
    if k > 16:
        raise TileError("full-level enumeration is limited to k <= 16")
    out: dict[int, TileCover] = {}

    def walk(cover: TileCover):
        if cover.code.level == k:
            out[cover.code.index] = cover
            return
        for bit in (0, 1):
            walk(refine(cover, bit, cfg.split_tol))

    for cover in initial_covers(cfg.n_discs, param):
        walk(cover)
    return [out[i] for i in range(1 << k)]
