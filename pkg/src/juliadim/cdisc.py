"""Extended circular complex arithmetic.

Sets in the plane are represented by discs <m, r> = {z : |z - m| <= r},
optionally collapsed onto the real axis (kind AXIS_X) or the imaginary
axis (kind AXIS_Y).  Collapsed discs represent axis segments exactly.

Two disc operations drive the whole tile pipeline: subtracting a real
parameter disc, and taking validated square-root enclosures.  All rounding
slack is pushed into the radius; centers are plain floats.

The scalar operations below are the public contract.  They delegate to
vectorized kernels (module-private ``_*`` functions on numpy arrays) that
the tile generator uses directly for throughput.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import rounding as rd
from .interval import RInterval


class DiscError(ValueError):
    pass


class DiscKind(IntEnum):
    FULL = 0
    AXIS_X = 1
    AXIS_Y = 2


@dataclass(frozen=True)
class ExtendedDisc:
    kind: DiscKind
    center: complex
    radius: float

    def __post_init__(self):
        if self.radius < 0 or not math.isfinite(self.radius):
            raise DiscError(f"bad radius {self.radius}")
        if self.kind == DiscKind.AXIS_X and self.center.imag != 0.0:
            raise DiscError("AXIS_X disc must have a real center")
        if self.kind == DiscKind.AXIS_Y and self.center.real != 0.0:
            raise DiscError("AXIS_Y disc must have a purely imaginary center")

    @staticmethod
    def full(center: complex, radius: float) -> "ExtendedDisc":
        return ExtendedDisc(DiscKind.FULL, complex(center), float(radius))

    @staticmethod
    def axis_x(x: float, radius: float) -> "ExtendedDisc":
        return ExtendedDisc(DiscKind.AXIS_X, complex(x, 0.0), float(radius))

    @staticmethod
    def axis_y(y: float, radius: float) -> "ExtendedDisc":
        return ExtendedDisc(DiscKind.AXIS_Y, complex(0.0, y), float(radius))

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        if self.kind == DiscKind.AXIS_X and abs(z.imag) > slack:
            return False
        if self.kind == DiscKind.AXIS_Y and abs(z.real) > slack:
            return False
        return abs(z - self.center) <= self.radius + slack


@dataclass(frozen=True)
class ParamEnclosure:
    """A real parameter interval <center, radius>_x with center in [-2, 2]."""

    center: float
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise DiscError(f"bad parameter radius {self.radius}")

    @property
    def lo(self) -> float:
        return self.center - self.radius

    @property
    def hi(self) -> float:
        return self.center + self.radius


# ---------------------------------------------------------------------------
# vectorized kernels
# ---------------------------------------------------------------------------

def _eps_abs(x):
    """One-ulp absolute error bound for a correctly rounded result x."""
    ax = np.abs(x)
    return np.nextafter(ax, np.inf) - ax


def _midrad(lo, hi):
    """Point center + validated radius covering the interval [lo, hi]."""
    m = 0.5 * (lo + hi)
    return m, np.maximum(rd.sub_up(hi, m), rd.sub_up(m, lo))


def _sub_param(kind, cx, cy, r, c: ParamEnclosure):
    """Subtract the real parameter disc from a batch of discs.

    Kind rules: FULL-AxisX -> FULL, AxisX-AxisX -> AxisX,
    AxisY-AxisX -> FULL.  AxisY rows carry cx == 0, so the center rule
    is uniform: cx' = cx - c.center, cy' = cy.
    """
    ncx = cx - c.center
    nkind = np.where(kind == DiscKind.AXIS_Y, DiscKind.FULL, kind).astype(np.uint8)
    nr = rd.add_up(rd.add_up(r, c.radius), _eps_abs(ncx))
    return nkind, ncx, cy.copy(), nr


def _full_sqrt_principal(cx, cy, r):
    """Principal-branch sqrt enclosure of full discs <cx + i*cy, r>.

    Returns (px, py, pr, bad): the enclosing disc of the branch that is
    continuous over the input disc and agrees with the principal square
    root at the center; ``bad`` marks rows where the origin could not be
    excluded (|m| <= r up to rounding), whose outputs are invalid.
    """
    rho2_lo = rd.add_dn(rd.mul_dn(cx, cx), rd.mul_dn(cy, cy))
    rho2_hi = rd.add_up(rd.mul_up(cx, cx), rd.mul_up(cy, cy))
    rho_lo = rd.sqrt_dn(rho2_lo)
    rho_hi = rd.sqrt_up(rho2_hi)
    bad = rho_lo <= r

    a1_lo = rd.sqrt_dn(rd.add_dn(rho_lo, r))
    a1_hi = rd.sqrt_up(rd.add_up(rho_hi, r))
    a2_lo = rd.sqrt_dn(np.maximum(rd.sub_dn(rho_lo, r), 0.0))
    a2_hi = rd.sqrt_up(np.maximum(rd.sub_up(rho_hi, r), 0.0))
    rt_lo = 0.5 * rd.add_dn(a1_lo, a2_lo)
    rt_hi = 0.5 * rd.add_up(a1_hi, a2_hi)
    rr_hi = 0.5 * rd.sub_up(a1_hi, a2_lo)

    safe_lo = np.maximum(rho_lo, 5e-324)
    ux_lo = np.clip(rd.div_dn(cx, np.where(cx >= 0, rho_hi, safe_lo)), -1.0, 1.0)
    ux_hi = np.clip(rd.div_up(cx, np.where(cx >= 0, safe_lo, rho_hi)), -1.0, 1.0)

    # half-angle construction: cos(t/2) = sqrt((1+cos t)/2) >= 0,
    # sin(t/2) = sign(cy) * sqrt((1-cos t)/2), with sign(0) := +1 so the
    # negative real axis rotates to the positive imaginary one.
    ch_lo = rd.sqrt_dn(0.5 * rd.add_dn(1.0, ux_lo))
    ch_hi = np.minimum(rd.sqrt_up(0.5 * rd.add_up(1.0, ux_hi)), 1.0)
    sm_lo = rd.sqrt_dn(0.5 * rd.sub_dn(1.0, ux_hi))
    sm_hi = np.minimum(rd.sqrt_up(0.5 * rd.sub_up(1.0, ux_lo)), 1.0)
    neg = cy < 0
    sh_lo = np.where(neg, -sm_hi, sm_lo)
    sh_hi = np.where(neg, -sm_lo, sm_hi)

    ocx_lo = rd.mul_dn(rt_lo, ch_lo)
    ocx_hi = rd.mul_up(rt_hi, ch_hi)
    ocy_lo = rd.dn(np.where(sh_lo >= 0, rt_lo * sh_lo, rt_hi * sh_lo))
    ocy_hi = rd.up(np.where(sh_hi >= 0, rt_hi * sh_hi, rt_lo * sh_hi))

    px = 0.5 * (ocx_lo + ocx_hi)
    py = 0.5 * (ocy_lo + ocy_hi)
    pad = rd.add_up(rd.sub_up(ocx_hi, ocx_lo), rd.sub_up(ocy_hi, ocy_lo))
    pr = rd.add_up(rr_hi, pad)
    return px, py, pr, bad


def _full_sqrt_origin_fallback(cx, cy, r):
    """Origin-centered disc containing both sqrt branches of <m, r>."""
    rho2_hi = rd.add_up(rd.mul_up(cx, cx), rd.mul_up(cy, cy))
    return rd.sqrt_up(rd.add_up(rd.sqrt_up(rho2_hi), r))


def _axisx_sqrt_split(cx, r):
    """Principal sqrt of x-axis discs, split at 0 where needed.

    Returns (has_pos, px, pr, has_neg, ny, nr): an AXIS_X piece covering
    sqrt of the non-negative part and an AXIS_Y piece covering sqrt of the
    non-positive part.
    """
    a = rd.sub_dn(cx, r)
    b = rd.add_up(cx, r)
    has_pos = b > 0.0
    has_neg = a < 0.0
    p_lo = rd.sqrt_dn(np.maximum(a, 0.0))
    p_hi = rd.sqrt_up(np.maximum(b, 0.0))
    px, pr = _midrad(p_lo, p_hi)
    n_lo = rd.sqrt_dn(np.maximum(-b, 0.0))
    n_hi = rd.sqrt_up(np.maximum(-a, 0.0))
    ny, nr = _midrad(n_lo, n_hi)
    return has_pos, px, pr, has_neg, ny, nr


def _split_counts(r, tol):
    n = np.ones(len(r), dtype=np.int64)
    mask = r >= tol
    n[mask] = (r[mask] / tol).astype(np.int64) + 1
    return n


def _split_ay_rows(cy, r, tol):
    """Split y-axis discs so every piece has radius < tol.

    Returns (cy_out, r_out); rows with r < tol pass through unchanged.
    """
    n = _split_counts(r, tol)
    total = int(n.sum())
    rep = np.repeat(np.arange(len(cy)), n)
    # index of each piece within its source row
    offs = np.concatenate(([0], np.cumsum(n)[:-1]))
    j = np.arange(total) - np.repeat(offs, n)
    nn = n[rep].astype(np.float64)
    t = (2.0 * j + 1.0) / nn - 1.0
    out_cy = cy[rep] + r[rep] * t
    scale = _eps_abs(np.abs(cy[rep]) + r[rep])
    out_r = rd.add_up(rd.div_up(r[rep], nn), 4.0 * scale)
    return out_cy, out_r


def _abs_bounds_arrays(kind, cx, cy, r):
    rho2_lo = rd.add_dn(rd.mul_dn(cx, cx), rd.mul_dn(cy, cy))
    rho2_hi = rd.add_up(rd.mul_up(cx, cx), rd.mul_up(cy, cy))
    rho_lo = rd.sqrt_dn(rho2_lo)
    rho_hi = rd.sqrt_up(rho2_hi)
    # collapsed discs have an exact |m|
    exact = np.abs(cx) + np.abs(cy)
    collapsed = kind != DiscKind.FULL
    rho_lo = np.where(collapsed, exact, rho_lo)
    rho_hi = np.where(collapsed, exact, rho_hi)
    lo = np.maximum(rd.sub_dn(rho_lo, r), 0.0)
    hi = rd.add_up(rho_hi, r)
    return lo, hi


# ---------------------------------------------------------------------------
# batch container
# ---------------------------------------------------------------------------

@dataclass
class DiscBatch:
    """Struct-of-arrays batch of ExtendedDiscs."""

    kind: np.ndarray
    cx: np.ndarray
    cy: np.ndarray
    r: np.ndarray

    def __len__(self) -> int:
        return len(self.kind)

    @staticmethod
    def empty() -> "DiscBatch":
        z = np.empty(0)
        return DiscBatch(np.empty(0, dtype=np.uint8), z.copy(), z.copy(), z.copy())

    @staticmethod
    def from_discs(discs) -> "DiscBatch":
        kind = np.array([int(d.kind) for d in discs], dtype=np.uint8)
        cx = np.array([d.center.real for d in discs], dtype=np.float64)
        cy = np.array([d.center.imag for d in discs], dtype=np.float64)
        r = np.array([d.radius for d in discs], dtype=np.float64)
        return DiscBatch(kind, cx, cy, r)

    def to_discs(self):
        return [
            ExtendedDisc(DiscKind(int(k)), complex(x, y), float(rr))
            for k, x, y, rr in zip(self.kind, self.cx, self.cy, self.r)
        ]

    def abs_bounds(self):
        return _abs_bounds_arrays(self.kind, self.cx, self.cy, self.r)


# ---------------------------------------------------------------------------
# scalar operations
# ---------------------------------------------------------------------------

def _as_batch(d: ExtendedDisc) -> DiscBatch:
    return DiscBatch.from_discs([d])


def disc_sub_param(d: ExtendedDisc, c: ParamEnclosure) -> ExtendedDisc:
    b = _as_batch(d)
    kind, cx, cy, r = _sub_param(b.kind, b.cx, b.cy, b.r, c)
    return ExtendedDisc(DiscKind(int(kind[0])), complex(cx[0], cy[0]), float(r[0]))


def disc_sqrt(d: ExtendedDisc) -> tuple[ExtendedDisc, ExtendedDisc]:
    """Both branch enclosures of sqrt over a full disc with 0 provably outside."""
    if d.kind != DiscKind.FULL:
        raise DiscError("disc_sqrt needs a full disc")
    b = _as_batch(d)
    px, py, pr, bad = _full_sqrt_principal(b.cx, b.cy, b.r)
    if bool(bad[0]):
        raise DiscError("origin in disc")
    plus = ExtendedDisc.full(complex(px[0], py[0]), float(pr[0]))
    minus = ExtendedDisc.full(-plus.center, plus.radius)
    return plus, minus


def axisx_sqrt(d: ExtendedDisc) -> list[ExtendedDisc]:
    """Principal-branch sqrt of an x-axis disc (negate outputs for the other)."""
    if d.kind != DiscKind.AXIS_X:
        raise DiscError("axisx_sqrt needs an AXIS_X disc")
    b = _as_batch(d)
    has_pos, px, pr, has_neg, ny, nr = _axisx_sqrt_split(b.cx, b.r)
    out = []
    if bool(has_pos[0]):
        out.append(ExtendedDisc.axis_x(float(px[0]), float(pr[0])))
    if bool(has_neg[0]):
        out.append(ExtendedDisc.axis_y(float(ny[0]), float(nr[0])))
    return out


def split_axis_y(d: ExtendedDisc, tol: float) -> list[ExtendedDisc]:
    if d.kind != DiscKind.AXIS_Y:
        raise DiscError("split_axis_y needs an AXIS_Y disc")
    if tol <= 0:
        raise DiscError("tol must be positive")
    b = _as_batch(d)
    cy, r = _split_ay_rows(b.cy, b.r, tol)
    return [ExtendedDisc.axis_y(float(y), float(rr)) for y, rr in zip(cy, r)]


def abs_bounds(d: ExtendedDisc) -> RInterval:
    """Validated enclosure of {|z| : z in d}."""
    b = _as_batch(d)
    lo, hi = b.abs_bounds()
    return RInterval(float(lo[0]), float(hi[0]))
