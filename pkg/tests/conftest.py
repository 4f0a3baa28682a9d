"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from juliadim.cdisc import ParamEnclosure
from juliadim.tiles import CoverConfig


@pytest.fixture
def param_i1() -> ParamEnclosure:
    """The parameter enclosure around the parabolic point -5/4."""
    return ParamEnclosure(-1.25, 1e-5)


@pytest.fixture
def point_param() -> ParamEnclosure:
    return ParamEnclosure(-1.25, 0.0)


@pytest.fixture
def default_cfg() -> CoverConfig:
    return CoverConfig()


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def dense_rho(a: np.ndarray) -> float:
    """Spectral radius of a dense nonnegative matrix via LAPACK eigenvalues.

    This deliberately shares no code with the Collatz iteration under test.
    """
    return float(np.max(np.abs(np.linalg.eigvals(a))))


def dense_delta_oracle(g_lo: np.ndarray, level: int, tol: float = 1e-12) -> float:
    """Brute-force bisection for rho(M(t)) = 1 on the dense lower matrix.

    Entries are raised to the power t with plain numpy (no directed
    rounding) and the spectral radius comes from eigenvalues, so the only
    thing shared with the pipeline is the g_lo data itself.
    """
    n = 1 << level

    def dense_at(t: float) -> np.ndarray:
        g = np.power(g_lo, t)
        a = np.zeros((n, n))
        hh = 1 << level
        qq = 1 << (level - 1)
        for i in range(n):
            for child in (2 * i, 2 * i + 1):
                # fourth-quadrant representative of the level-(k+1) child
                l = child & (hh - 1)
                if l >= qq:
                    l = (hh - 1) ^ l
                a[i, child % n] = g[l]
        return a

    lo, hi = 0.1, 2.0
    assert dense_rho(dense_at(lo)) > 1.0
    assert dense_rho(dense_at(hi)) < 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if dense_rho(dense_at(mid)) > 1.0:
            lo = mid
        else:
            hi = mid
    return lo


def continuous_sqrt(w: complex) -> complex:
    """The sqrt branch cut along the positive real axis: arg in (0, 2*pi).

    Continuous on any disc avoiding the non-negative real axis; agrees with
    the principal square root in the closed upper half plane.
    """
    r = math.sqrt(abs(w))
    theta = cmath.phase(w)  # (-pi, pi]
    if theta < 0:
        theta += 2.0 * math.pi
    return r * cmath.exp(0.5j * theta)


def batch_contains(batch, z: complex, slack: float = 1e-9) -> bool:
    """Whether any disc of a DiscBatch contains the point z (with slack)."""
    for d in batch.to_discs():
        if d.contains(z, slack):
            return True
    return False


def tile_boundary_samples(n: int, upper: bool) -> list[complex]:
    """Points on the boundary of a level-1 tile (half slit disc)."""
    sign = 1.0 if upper else -1.0
    arc = [2.0 * cmath.exp(sign * 1j * math.pi * (j + 0.5) / n) for j in range(n)]
    seg = [complex(-2.0 + 4.0 * (j + 0.5) / n, 0.0) for j in range(n)]
    return arc + seg


def pullback_samples(samples: list[complex], c: float, qx: int, qy: int,
                     tol: float = 1e-9) -> list[complex]:
    """Preimages of boundary samples under p_c landing in quadrant (qx, qy).

    Points whose preimage sits on a quadrant boundary are kept for both
    signs, which only makes the containment check stricter.
    """
    out = []
    for w in samples:
        z0 = cmath.sqrt(w - c)
        for z in (z0, -z0):
            if z.real * qx >= -tol and z.imag * qy >= -tol:
                out.append(z)
    return out
