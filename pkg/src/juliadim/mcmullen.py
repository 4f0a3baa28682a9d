"""Interval-valued McMullen matrices built from tile distance bounds.

The level-k matrix M^(k)(t) is 2^k x 2^k with entries
m_{i,j} = (max{|p'_c(z)| : z in P_i intersect p_c^{-1}(P_j)})^{-t};
that intersection is a single level-(k+1) tile P_l, and |p'_c(z)| = 2|z|,
so each non-zero is (2 s_l)^{-t} with s_l the tile's max distance to the
origin.  Row i has exactly two children l = 2i and 2i+1; the column is
l mod 2^k.  For real parameters the four-fold tile symmetry reduces
storage to the 2^(k-1) fourth-quadrant entries (the generator block G);
everything else is resolved by index arithmetic.

Entries are intervals [1/(2 hi_s), 1/(2 lo_s)] reflecting cover
uncertainty; the lower-endpoint matrix realizes the minimum spectral
radius over the interval family and is the certified object.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rounding as rd
from .cdisc import ParamEnclosure
from .tiles import CoverConfig, TileError, quarter_bounds


class MatrixError(RuntimeError):
    pass


def _rep_vec(l: np.ndarray, level: int) -> np.ndarray:
    """Vectorized fourth-quadrant representative of level-`level` codes."""
    l = l & ((1 << (level - 1)) - 1)
    flip = l >= (1 << (level - 2))
    return np.where(flip, ((1 << (level - 1)) - 1) ^ l, l)


class SparseOp:
    """Matrix-vector products for a (point- or endpoint-valued) level-k
    McMullen matrix stored as its quarter-entry vector."""

    def __init__(self, level: int, g: np.ndarray):
        if len(g) != 1 << (level - 1):
            raise MatrixError(f"expected {1 << (level - 1)} entries, got {len(g)}")
        self.level = level
        self.n = 1 << level
        self.g = np.asarray(g, dtype=np.float64)
        rows = np.arange(self.n, dtype=np.int64)
        child0 = 2 * rows
        child1 = 2 * rows + 1
        mask = self.n - 1
        self.col0 = child0 & mask
        self.col1 = child1 & mask
        self.gi0 = _rep_vec(child0, level + 1)
        self.gi1 = _rep_vec(child1, level + 1)

    def _check(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.n,):
            raise MatrixError(f"vector of shape {v.shape}, expected ({self.n},)")
        return v

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """Plain product; two-term sums in a fixed order, deterministic."""
        v = self._check(v)
        return self.g[self.gi0] * v[self.col0] + self.g[self.gi1] * v[self.col1]

    def matvec_dn(self, v: np.ndarray) -> np.ndarray:
        """Rigorous lower bound of the exact product (v >= 0)."""
        v = self._check(v)
        return rd.add_dn(
            rd.mul_dn(self.g[self.gi0], v[self.col0]),
            rd.mul_dn(self.g[self.gi1], v[self.col1]),
        )

    def matvec_up(self, v: np.ndarray) -> np.ndarray:
        """Rigorous upper bound of the exact product (v >= 0)."""
        v = self._check(v)
        return rd.add_up(
            rd.mul_up(self.g[self.gi0], v[self.col0]),
            rd.mul_up(self.g[self.gi1], v[self.col1]),
        )

    def dense(self) -> np.ndarray:
        """Dense reconstruction (tests and small-k dumps only)."""
        a = np.zeros((self.n, self.n))
        rows = np.arange(self.n)
        a[rows, self.col0] = self.g[self.gi0]
        a[rows, self.col1] = self.g[self.gi1]
        return a


@dataclass
class McMullenMatrix:
    level: int
    g_lo: np.ndarray
    g_hi: np.ndarray
    param: ParamEnclosure

    @property
    def n(self) -> int:
        return 1 << self.level

    @property
    def max_diam(self) -> float:
        return float(np.max(self.g_hi - self.g_lo))

    def pow_entries(self, t: float) -> "McMullenMatrix":
        """Elementwise interval power; same sparsity pattern."""
        if t <= 0:
            raise MatrixError(f"exponent must be positive, got {t}")
        return McMullenMatrix(
            self.level,
            np.asarray(rd.pow_dn(self.g_lo, t)),
            np.asarray(rd.pow_up(self.g_hi, t)),
            self.param,
        )

    def lo_matrix(self) -> SparseOp:
        return SparseOp(self.level, self.g_lo)

    def hi_matrix(self) -> SparseOp:
        return SparseOp(self.level, self.g_hi)

    def mid_matrix(self) -> SparseOp:
        return SparseOp(self.level, 0.5 * (self.g_lo + self.g_hi))

    def dump(self) -> str:
        """Text triples row,col,lo,hi of the full matrix (k <= 8)."""
        if self.level > 8:
            raise MatrixError("matrix dump is limited to k <= 8")
        op = self.lo_matrix()
        lines = []
        for i in range(self.n):
            for col, gi in ((op.col0[i], op.gi0[i]), (op.col1[i], op.gi1[i])):
                lines.append(
                    f"{i},{col},{float(self.g_lo[gi])!r},{float(self.g_hi[gi])!r}"
                )
        return "\n".join(lines) + "\n"


def build(k: int, param: ParamEnclosure, cfg: CoverConfig) -> McMullenMatrix:
    """Level-k matrix from the level-(k+1) quarter tiles."""
    if k < 2:
        raise MatrixError(f"matrix level must be >= 2, got {k}")
    try:
        lo_s, hi_s = quarter_bounds(k + 1, param, cfg)
    except TileError as exc:
        raise MatrixError(str(exc)) from exc
    if np.any(lo_s <= 0.0):
        bad = int(np.argmax(lo_s <= 0.0))
        raise MatrixError(f"tile touches origin (child code {bad}); cover too coarse")
    # scaling by 2 is exact in binary floating point
    g_lo = np.asarray(rd.div_dn(1.0, 2.0 * hi_s))
    g_hi = np.asarray(rd.div_up(1.0, 2.0 * lo_s))
    return McMullenMatrix(k, g_lo, g_hi, param)


def pow_entries(m: McMullenMatrix, t: float) -> McMullenMatrix:
    return m.pow_entries(t)


def lo_matrix(m: McMullenMatrix) -> SparseOp:
    return m.lo_matrix()


def matvec(op: SparseOp, v: np.ndarray) -> np.ndarray:
    return op.matvec(v)
