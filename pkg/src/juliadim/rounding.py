"""Directed-rounding primitives on IEEE-754 doubles.

All validated arithmetic in this package is realized by post-hoc outward
nudging: the hardware result of a correctly rounded operation (+, -, *, /,
sqrt) differs from the exact value by at most half an ulp, so moving one
float towards the wanted direction yields a guaranteed one-sided bound.
For transcendental functions (log, exp, pow) the platform libm is only
assumed to be faithful to within a few ulp; those results are padded by a
relative margin of 2^-48 (16 ulp), far more than any libm in use errs by.

Everything here works elementwise on numpy arrays as well as on Python
floats (numpy scalars are returned for scalar input).
"""

from __future__ import annotations

import numpy as np

_INF = np.inf
_NINF = -np.inf

# Relative padding for libm-evaluated functions (log/exp/pow): 16 ulp.
_REL_PAD_UP = 1.0 + 2.0**-48
_REL_PAD_DN = 1.0 - 2.0**-48


def up(x):
    """Next float towards +inf."""
    return np.nextafter(x, _INF)


def dn(x):
    """Next float towards -inf."""
    return np.nextafter(x, _NINF)


def add_up(a, b):
    return up(np.add(a, b))


def add_dn(a, b):
    return dn(np.add(a, b))


def sub_up(a, b):
    return up(np.subtract(a, b))


def sub_dn(a, b):
    return dn(np.subtract(a, b))


def mul_up(a, b):
    return up(np.multiply(a, b))


def mul_dn(a, b):
    return dn(np.multiply(a, b))


def div_up(a, b):
    return up(np.divide(a, b))


def div_dn(a, b):
    return dn(np.divide(a, b))


def sqrt_up(x):
    return up(np.sqrt(x))


def sqrt_dn(x):
    # sqrt of a negative rounding artifact is clamped at zero by callers;
    # guard here so -1e-300 inputs do not produce NaN.
    return dn(np.sqrt(np.maximum(x, 0.0)))


def log_up(x):
    l = np.log(x)
    return up(l * np.where(l >= 0, _REL_PAD_UP, _REL_PAD_DN))


def log_dn(x):
    l = np.log(x)
    return dn(l * np.where(l >= 0, _REL_PAD_DN, _REL_PAD_UP))


def exp_up(x):
    return up(np.exp(x) * _REL_PAD_UP)


def exp_dn(x):
    return dn(np.exp(x) * _REL_PAD_DN)


def pow_up(x, t):
    """Upper bound of x**t for x > 0, t > 0 (exp/log with outward pads)."""
    return exp_up(up(np.multiply(t, log_up(x))))


def pow_dn(x, t):
    """Lower bound of x**t for x > 0, t > 0."""
    return np.maximum(exp_dn(dn(np.multiply(t, log_dn(x)))), 0.0)
