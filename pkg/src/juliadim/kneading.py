"""Rigorous location of real Feigenbaum parameters via kneading sequences.

The kneading sequence of p_c is k_i = sign(p_c^i(0)).  A parameter with
stationary period-n combinatorics has a kneading sequence determined by
its first n symbols through the extension rules
    k_{s+n} = k_s            when n does not divide s,
    k_{n^l m} = (-k_n)^l k_m when n does not divide m,
which lets the target sequence be evaluated at any index by pure
arithmetic.  Parameters are ordered on the real line by their kneading
sequences: at the first index i where midpoint b disagrees with the
target, b < c exactly when sign(k_i(b)) differs from the sign of the
parameter derivative d/dx p_x^i(0) at x = b.  Bisection from [-2, 0]
then encloses c to any tolerance.

All sign decisions run in mpmath interval arithmetic with automatic
precision doubling; an undecidable sign at the precision cap is a hard
error, never a guess.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import mpmath
import numpy as np

from . import rounding as rd
from .cdisc import ParamEnclosure

# a kneading symbol is an int in {-1, 0, +1}
KneadingSymbol = int

_PREC_START = 64
_PREC_CAP = 1 << 15
_BUDGET_CAP = 1 << 18


class KneadingError(RuntimeError):
    pass


@contextmanager
def _iv_prec(prec: int):
    old = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        yield mpmath.iv
    finally:
        mpmath.iv.prec = old


def _decided_sign(x) -> int | None:
    """Provable sign of an interval, or None if it straddles zero."""
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    if x.a == 0 and x.b == 0:
        return 0
    return None


def _param_bounds(c: ParamEnclosure) -> tuple[float, float]:
    """Outward float endpoints of the enclosure; exact when radius is 0."""
    if c.radius == 0.0:
        return c.center, c.center
    return float(rd.sub_dn(c.center, c.radius)), float(rd.add_up(c.center, c.radius))


@dataclass(frozen=True)
class UnimodalPermutation:
    s: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.s) != list(range(len(self.s))):
            raise KneadingError(f"not a permutation of 0..{len(self.s) - 1}: {self.s}")

    def __len__(self) -> int:
        return len(self.s)


@dataclass(frozen=True)
class StationaryKneading:
    prefix: tuple[KneadingSymbol, ...]

    @property
    def n(self) -> int:
        return len(self.prefix)


def kneading_symbols(c: ParamEnclosure, n: int) -> list[KneadingSymbol]:
    """First n provable kneading symbols, uniform over the enclosure."""
    if n < 1:
        raise KneadingError(f"need n >= 1, got {n}")
    lo, hi = _param_bounds(c)
    prec = _PREC_START
    while prec <= _PREC_CAP:
        with _iv_prec(prec) as iv:
            cc = iv.mpf([lo, hi])
            x = iv.mpf(0)
            out: list[KneadingSymbol] = []
            failed_at = None
            for i in range(1, n + 1):
                x = x * x + cc
                s = _decided_sign(x)
                if s is None:
                    failed_at = i
                    break
                out.append(s)
            if failed_at is None:
                return out
        prec *= 2
    raise KneadingError(
        f"sign undecidable at orbit index {failed_at}; refine parameter/precision"
    )


def stationary_symbol(sk: StationaryKneading, i: int) -> KneadingSymbol:
    """k_i of the stationary sequence, by the extension rules alone."""
    if i < 1:
        raise KneadingError(f"need i >= 1, got {i}")
    n = sk.n
    if i % n != 0:
        return sk.prefix[(i % n) - 1]
    # strip powers of n: each factor contributes -k_n
    sign = 1
    m = i
    while m % n == 0:
        m //= n
        sign *= -sk.prefix[n - 1]
    # n no longer divides m, so k_m reduces by periodicity
    return sign * sk.prefix[(m % n) - 1]


def _orbit_floats(c: np.ndarray, n: int) -> np.ndarray:
    x = np.zeros_like(c)
    for _ in range(n):
        x = x * x + c
    return x


def _proper_divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


def _orbit_excludes_zero_at(lo: float, hi: float, d: int) -> bool:
    """Whether p_c^d(0) provably excludes 0 for all c in [lo, hi]."""
    for prec in (128, 512):
        with _iv_prec(prec) as iv:
            cc = iv.mpf([lo, hi])
            x = iv.mpf(0)
            for _ in range(d):
                x = x * x + cc
            if _decided_sign(x) in (1, -1):
                return True
    return False


def superattracting_roots(n: int, width: float = 1e-12) -> list[ParamEnclosure]:
    """All real c in (-2, 0) with p_c^n(0) = 0 and exact period n."""
    if not 2 <= n <= 8:
        raise KneadingError(f"period must be in [2, 8], got {n}")
    step = 1e-6
    # slightly irrational offset so the grid never hits a root exactly
    grid = np.arange(-2.0 + 0.309 * step, 0.0, step)
    vals = _orbit_floats(grid, n)
    sgn = np.sign(vals)
    changes = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
    roots = []
    for idx in changes:
        lo, hi = float(grid[idx]), float(grid[idx + 1])
        slo = sgn[idx]
        while hi - lo > 0.25 * width:
            mid = 0.5 * (lo + hi)
            if np.sign(_orbit_floats(np.array([mid]), n)[0]) == slo:
                lo = mid
            else:
                hi = mid
        # validated sign change across the bracket
        if not (_orbit_excludes_zero_at(lo, lo, n) and _orbit_excludes_zero_at(hi, hi, n)):
            raise KneadingError(f"could not validate root bracket near {lo}")
        # drop roots whose exact period divides n properly
        if all(_orbit_excludes_zero_at(lo, hi, d) for d in _proper_divisors(n)):
            center = 0.5 * (lo + hi)
            radius = float(rd.add_up(rd.sub_up(hi, center), rd.sub_up(center, lo)))
            roots.append(ParamEnclosure(center, radius))
    return roots


def orbit_permutation(a: ParamEnclosure, n: int) -> UnimodalPermutation:
    """Order of the critical orbit 0, p_a(0), ..., p_a^{n-1}(0)."""
    lo, hi = _param_bounds(a)
    prec = _PREC_START
    while prec <= _PREC_CAP:
        with _iv_prec(prec) as iv:
            cc = iv.mpf([lo, hi])
            pts = [iv.mpf(0)]
            for _ in range(n - 1):
                pts.append(pts[-1] * pts[-1] + cc)
            separable = all(
                pts[i].b < pts[j].a or pts[j].b < pts[i].a
                for i in range(n)
                for j in range(i + 1, n)
            )
            if separable:
                order = [
                    sum(1 for j in range(n) if pts[j].b < pts[i].a) for i in range(n)
                ]
                return UnimodalPermutation(tuple(order))
        prec *= 2
    raise KneadingError("orbit points not separable; refine the enclosure")


def feig_last_symbol(a: ParamEnclosure, n: int) -> KneadingSymbol:
    """n-th stationary symbol, k_n = -sign(d/dx p_x^n(0) at x = a)."""
    lo, hi = _param_bounds(a)
    prec = _PREC_START
    while prec <= _PREC_CAP:
        with _iv_prec(prec) as iv:
            cc = iv.mpf([lo, hi])
            x = iv.mpf(0)
            d = iv.mpf(0)
            for _ in range(n):
                d = 2 * x * d + 1
                x = x * x + cc
            s = _decided_sign(d)
            if s in (1, -1):
                return -s
        prec *= 2
    raise KneadingError("derivative sign undecidable; refine")


def stationary_prefix(a: ParamEnclosure, n: int) -> StationaryKneading:
    """Stationary kneading of the period-n combinatorics anchored at the
    superattracting parameter a: symbols 1..n-1 from the orbit, symbol n
    from the parameter derivative."""
    head = kneading_symbols(a, n - 1) if n > 1 else []
    if any(s == 0 for s in head):
        raise KneadingError("unexpected zero symbol before the period")
    return StationaryKneading(tuple(head) + (feig_last_symbol(a, n),))


_BELOW, _ABOVE, _TIE, _SUPERATTRACTING = range(4)


def _compare_midpoint(b: float, sk: StationaryKneading, budget: int) -> int:
    """Compare exact parameter b against the stationary target sequence.

    Returns _BELOW / _ABOVE when the first disagreeing symbol decides the
    order, _TIE when the first `budget` symbols all agree, and
    _SUPERATTRACTING when b itself has a provably zero symbol first.

    The order at the first disagreement i follows the parity-lexicographic
    kneading order: with e = k_1(b) * ... * k_{i-1}(b) the product of the
    agreeing symbols, b < c exactly when k_i(b) * e = -1 (kneading
    sequences grow in this order as the parameter decreases).
    """
    prec = _PREC_START
    while prec <= _PREC_CAP:
        with _iv_prec(prec) as iv:
            bb = iv.mpf(b)
            x = iv.mpf(0)
            parity = 1
            stuck = False
            for i in range(1, budget + 1):
                x = x * x + bb
                s = _decided_sign(x)
                if s is None:
                    stuck = True
                    break
                if s == 0:
                    return _SUPERATTRACTING
                if s != stationary_symbol(sk, i):
                    return _BELOW if s * parity == -1 else _ABOVE
                parity *= s
            if not stuck:
                return _TIE
        prec *= 2
    raise KneadingError(f"increase precision: comparison stalled at midpoint {b}")


def _compare(b: float, sk: StationaryKneading, start_budget: int) -> int:
    budget = start_budget
    while budget <= _BUDGET_CAP:
        res = _compare_midpoint(b, sk, budget)
        if res != _TIE:
            return res
        budget *= 2
    raise KneadingError(f"increase precision: tie within {_BUDGET_CAP} symbols at {b}")


def locate_feig_param(perm: UnimodalPermutation, tol: float = 1e-10) -> ParamEnclosure:
    """Enclosure of the period-n real Feigenbaum parameter whose
    combinatorics matches the given unimodal permutation."""
    if tol <= 0:
        raise KneadingError(f"tol must be positive, got {tol}")
    n = len(perm)
    matches = [
        a for a in superattracting_roots(n) if orbit_permutation(a, n).s == perm.s
    ]
    if len(matches) != 1:
        raise KneadingError(
            f"permutation {perm.s} matched {len(matches)} superattracting roots"
        )
    sk = stationary_prefix(matches[0], n)
    lo, hi = -2.0, 0.0
    while hi - lo > 2.0 * tol:
        b = 0.5 * (lo + hi)
        # a superattracting midpoint has no comparable kneading tail: nudge
        # it inward by shrinking fractions of the segment and retry
        shift = 0.25 * (hi - lo)
        for _ in range(6):
            res = _compare(b, sk, 4 * n)
            if res != _SUPERATTRACTING:
                break
            b -= shift
            shift *= 0.5
        else:
            raise KneadingError(f"persistent superattracting midpoints near {b}")
        if res == _BELOW:
            lo = b
        else:
            hi = b
    center = 0.5 * (lo + hi)
    radius = float(rd.add_up(rd.sub_up(hi, center), rd.sub_up(center, lo)))
    return ParamEnclosure(center, radius)


def matching_root(perm: UnimodalPermutation) -> ParamEnclosure:
    """The superattracting root realizing the permutation (for reporting)."""
    n = len(perm)
    matches = [
        a for a in superattracting_roots(n) if orbit_permutation(a, n).s == perm.s
    ]
    if len(matches) != 1:
        raise KneadingError(
            f"permutation {perm.s} matched {len(matches)} superattracting roots"
        )
    return matches[0]
