"""Spectral-radius enclosures and the bisection for the dimension bound.

For a nonnegative irreducible matrix A and any positive vector v,
min_i (Av)_i / v_i  <=  rho(A)  <=  max_i (Av)_i / v_i ,
and iterating v <- Av tightens both sides monotonically (Collatz).  The
fast phase runs this in plain floating point; certification then takes
the converged vector and performs a single matrix-vector product with
directed rounding, which yields a rigorous bound valid regardless of how
the vector was obtained.

The dimension bound delta* is found by bisecting t on [0.1, 2] for the
crossing rho(M(t)) = 1 of the lower-endpoint matrix; t -> rho(M(t)) is
concave up with rho > 1 on the left and rho <= 1 at t = 2, so it crosses
1 at most once and bisection is sound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rounding as rd
from .mcmullen import McMullenMatrix, SparseOp


class SpectralError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralEnclosure:
    lo: float
    hi: float
    iterations: int

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class BoundResult:
    delta_star: float
    epsilon_achieved: float
    certified: bool
    rho_at_delta: SpectralEnclosure


def collatz_iterate(apply, v0, max_iters: int = 10_000, width_tol: float = 1e-12,
                    decide_vs: float | None = None):
    """Run the Collatz iteration; returns (SpectralEnclosure, final vector).

    Stops when the enclosure width drops below width_tol, when it decides
    the comparison against ``decide_vs``, or after max_iters steps.  The
    iterate is renormalized to sup-norm 1 each step, which cancels in the
    ratios.
    """
    v = np.asarray(v0, dtype=np.float64)
    if np.any(v <= 0.0) or not np.all(np.isfinite(v)):
        raise SpectralError("initial vector must be strictly positive")
    v = v / v.max()
    lo, hi = -np.inf, np.inf
    its = 0
    for its in range(1, max_iters + 1):
        w = apply(v)
        if np.any(w <= 0.0):
            raise SpectralError("non-positive iterate component (matrix has a zero row?)")
        ratios = w / v
        lo = max(lo, float(ratios.min()))
        hi = min(hi, float(ratios.max()))
        v = w / w.max()
        if hi - lo < width_tol:
            break
        if decide_vs is not None and (lo > decide_vs or hi < decide_vs):
            break
    return SpectralEnclosure(lo, hi, its), v


def collatz_enclose(apply, n: int, v0=None, max_iters: int = 10_000,
                    width_tol: float = 1e-12) -> SpectralEnclosure:
    if v0 is None:
        v0 = np.ones(n)
    enc, _ = collatz_iterate(apply, v0, max_iters=max_iters, width_tol=width_tol)
    return enc


def certify_lower(op: SparseOp, v: np.ndarray) -> float:
    """Rigorous lower bound on rho(op) from one outward-rounded product."""
    v = np.asarray(v, dtype=np.float64)
    if np.any(v <= 0.0):
        raise SpectralError("test vector must be strictly positive")
    w = op.matvec_dn(v)
    return float(np.min(rd.div_dn(w, v)))


def certify_upper(op: SparseOp, v: np.ndarray) -> float:
    """Rigorous upper bound on rho(op), the Collatz-Wielandt counterpart."""
    v = np.asarray(v, dtype=np.float64)
    if np.any(v <= 0.0):
        raise SpectralError("test vector must be strictly positive")
    w = op.matvec_up(v)
    return float(np.max(rd.div_up(w, v)))


def _lo_op(m: McMullenMatrix, t: float) -> SparseOp:
    """Lower-endpoint matrix at exponent t (entries rounded down)."""
    return SparseOp(m.level, np.asarray(rd.pow_dn(m.g_lo, t)))


# Accept a midpoint as the new left bracket only when rho provably clears 1
# by this margin, so the final delta* survives certification slack.
_BISECT_SAFETY = 1e-11


def bisect_delta(m: McMullenMatrix, eps: float = 1e-10, t_lo: float = 0.1,
                 t_hi: float = 2.0, max_iters: int = 10_000,
                 width_tol: float = 1e-12) -> float:
    """Left endpoint delta* of the bisection for rho(M(t)) = 1, with
    0 < rho(M(delta*)) - 1 <= eps on the lower-endpoint matrix."""
    if eps <= 0:
        raise SpectralError(f"eps must be positive, got {eps}")
    v = np.ones(m.n)

    def rho(t):
        # warm-started from the previous evaluation's vector
        nonlocal v
        enc, v = collatz_iterate(_lo_op(m, t).matvec, v, max_iters=max_iters,
                                 width_tol=width_tol)
        return enc

    enc_lo = rho(t_lo)
    if not enc_lo.lo > 1.0:
        raise SpectralError(
            f"invalid bracket: rho(M({t_lo})) enclosed in "
            f"[{enc_lo.lo}, {enc_lo.hi}], not above 1"
        )
    enc_hi = rho(t_hi)
    if not enc_hi.hi < 1.0 + _BISECT_SAFETY:
        raise SpectralError(
            f"invalid bracket: rho(M({t_hi})) enclosed in "
            f"[{enc_hi.lo}, {enc_hi.hi}], not below 1"
        )
    while True:
        if enc_lo.hi - 1.0 <= eps:
            break
        if t_hi - t_lo < 4e-16 * max(1.0, abs(t_lo)):
            break
        mid = 0.5 * (t_lo + t_hi)
        enc = rho(mid)
        if enc.lo > 1.0 + _BISECT_SAFETY:
            t_lo, enc_lo = mid, enc
        else:
            t_hi = mid
    return t_lo


def validate(m: McMullenMatrix, delta_star: float, max_iters: int = 10_000,
             width_tol: float = 1e-12, retreat: bool = True) -> BoundResult:
    """Certify delta_star: rigorous check that rho of the lower-endpoint
    matrix at delta_star exceeds 1.

    If certification falls short by rounding slack, optionally retreat to a
    slightly smaller exponent (rho grows to the left of the crossing) and
    certify that instead; the returned delta_star is the certified value.
    """
    if not 0.0 < delta_star <= 2.0:
        raise SpectralError(f"delta_star must be in (0, 2], got {delta_star}")
    last = None
    backs = (0.0, 1e-9, 1e-7, 1e-5, 1e-3) if retreat else (0.0,)
    for back in backs:
        d = delta_star - back
        if d <= 0.0:
            continue
        op = _lo_op(m, d)
        enc, vec = collatz_iterate(op.matvec, np.ones(m.n), max_iters=max_iters,
                                   width_tol=width_tol)
        cert_lo = certify_lower(op, vec)
        cert_hi = certify_upper(op, vec)
        rho_enc = SpectralEnclosure(cert_lo, cert_hi, enc.iterations)
        last = BoundResult(d, cert_hi - 1.0, cert_lo > 1.0, rho_enc)
        if last.certified:
            return last
    return last
