"""Outward-rounded real interval arithmetic.

The single invariant that matters: for any operation R = op(A, B), the
exact set image {op(a, b) : a in A, b in B} is contained in R.  Rounding
slack always widens, never narrows.  Unbounded or empty intervals are not
representable; constructing lo > hi or a non-finite endpoint is an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import rounding as rd


class IntervalError(ValueError):
    pass


@dataclass(frozen=True)
class RInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise IntervalError(f"endpoints must be finite: [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise IntervalError(f"inverted interval: [{self.lo}, {self.hi}]")

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "RInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @staticmethod
    def point(x: float) -> "RInterval":
        return RInterval(x, x)


def iv_add(a: RInterval, b: RInterval) -> RInterval:
    return RInterval(float(rd.add_dn(a.lo, b.lo)), float(rd.add_up(a.hi, b.hi)))


def iv_sub(a: RInterval, b: RInterval) -> RInterval:
    return RInterval(float(rd.sub_dn(a.lo, b.hi)), float(rd.sub_up(a.hi, b.lo)))


def iv_mul(a: RInterval, b: RInterval) -> RInterval:
    combos = (
        (a.lo, b.lo),
        (a.lo, b.hi),
        (a.hi, b.lo),
        (a.hi, b.hi),
    )
    lo = min(float(rd.mul_dn(x, y)) for x, y in combos)
    hi = max(float(rd.mul_up(x, y)) for x, y in combos)
    return RInterval(lo, hi)


def iv_div(a: RInterval, b: RInterval) -> RInterval:
    if b.lo <= 0.0 <= b.hi:
        raise IntervalError("divisor straddles zero")
    combos = (
        (a.lo, b.lo),
        (a.lo, b.hi),
        (a.hi, b.lo),
        (a.hi, b.hi),
    )
    lo = min(float(rd.div_dn(x, y)) for x, y in combos)
    hi = max(float(rd.div_up(x, y)) for x, y in combos)
    return RInterval(lo, hi)


def iv_sqrt(a: RInterval) -> RInterval:
    if a.lo < 0.0:
        raise IntervalError(f"sqrt of interval with negative lower endpoint {a.lo}")
    lo = max(float(rd.sqrt_dn(a.lo)), 0.0)
    return RInterval(lo, float(rd.sqrt_up(a.hi)))


def iv_pow(a: RInterval, t: float) -> RInterval:
    if a.lo <= 0.0:
        raise IntervalError(f"pow needs a strictly positive base, got lo={a.lo}")
    if t <= 0.0:
        raise IntervalError(f"pow needs a positive exponent, got t={t}")
    # x^t is increasing in x for t > 0.
    return RInterval(float(rd.pow_dn(a.lo, t)), float(rd.pow_up(a.hi, t)))
