"""Containment contract of the outward-rounded interval layer."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from juliadim import rounding as rd
from juliadim.interval import (
    IntervalError,
    RInterval,
    iv_add,
    iv_div,
    iv_mul,
    iv_pow,
    iv_sqrt,
    iv_sub,
)

finite = st.floats(min_value=-1e8, max_value=1e8, allow_nan=False)
positive = st.floats(min_value=1e-8, max_value=1e8)


def make_interval(a: float, b: float) -> RInterval:
    return RInterval(min(a, b), max(a, b))


class TestRInterval:
    def test_validation(self):
        with pytest.raises(IntervalError):
            RInterval(1.0, 0.0)
        with pytest.raises(IntervalError):
            RInterval(0.0, math.inf)
        with pytest.raises(IntervalError):
            RInterval(math.nan, 1.0)

    def test_accessors(self):
        x = RInterval(1.0, 3.0)
        assert x.mid == 2.0
        assert x.width == 2.0
        assert x.contains(1.0) and x.contains(3.0) and not x.contains(3.5)
        assert x.encloses(RInterval(1.5, 2.5))
        assert not x.encloses(RInterval(0.5, 2.5))
        assert RInterval.point(2.0) == RInterval(2.0, 2.0)


class TestArithmeticContainment:
    @given(finite, finite, finite, finite)
    def test_add_sub_mul(self, a, b, c, d):
        x, y = make_interval(a, b), make_interval(c, d)
        assert iv_add(x, y).contains(a + c)
        assert iv_sub(x, y).contains(a - d)
        assert iv_mul(x, y).contains(b * c)

    @given(finite, finite, positive, positive)
    def test_div(self, a, b, c, d):
        x, y = make_interval(a, b), make_interval(c, d)
        assert iv_div(x, y).contains(a / c)
        assert iv_div(x, y).contains(b / d)

    def test_div_by_zero_straddle(self):
        with pytest.raises(IntervalError, match="straddles"):
            iv_div(RInterval(1.0, 2.0), RInterval(-1.0, 1.0))

    @given(positive, positive)
    def test_sqrt(self, a, b):
        x = make_interval(a, b)
        assert iv_sqrt(x).contains(math.sqrt(a))
        assert iv_sqrt(x).contains(math.sqrt(x.mid))

    def test_sqrt_negative(self):
        with pytest.raises(IntervalError):
            iv_sqrt(RInterval(-1.0, 1.0))

    @given(positive, positive, st.floats(min_value=0.05, max_value=2.0))
    def test_pow(self, a, b, t):
        x = make_interval(a, b)
        r = iv_pow(x, t)
        assert r.contains(a**t)
        assert r.contains(b**t)

    def test_pow_domain(self):
        with pytest.raises(IntervalError):
            iv_pow(RInterval(0.0, 1.0), 1.0)
        with pytest.raises(IntervalError):
            iv_pow(RInterval(1.0, 2.0), 0.0)


class TestDirectedRounding:
    def test_exact_ops_bracket(self):
        rng = np.random.default_rng(7)
        a = rng.uniform(-1e3, 1e3, 1000)
        b = rng.uniform(-1e3, 1e3, 1000)
        assert np.all(rd.add_dn(a, b) < a + b)
        assert np.all(a + b < rd.add_up(a, b))
        assert np.all(rd.mul_dn(a, b) < a * b)
        assert np.all(a * b < rd.mul_up(a, b))
        assert np.all(rd.div_dn(a, np.abs(b) + 1.0) < a / (np.abs(b) + 1.0))

    def test_pow_brackets_libm(self):
        rng = np.random.default_rng(11)
        x = rng.uniform(1e-3, 10.0, 1000)
        t = rng.uniform(0.05, 2.0, 1000)
        exact = x**t
        assert np.all(rd.pow_dn(x, t) < exact)
        assert np.all(exact < rd.pow_up(x, t))

    def test_sqrt_dn_clamps_negative_artifacts(self):
        out = float(rd.sqrt_dn(-1e-300))
        assert not math.isnan(out) and out >= -5e-324
        assert rd.sqrt_dn(np.array([-1e-300, 4.0]))[1] < 2.0


def fuzz_containment(n_cases: int, seed: int = 2024) -> int:
    """Random-evaluation containment check over all interval operations.

    Returns the number of violations (must be zero).  Shared with the
    acceptance suite, which runs it at full scale.
    """
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n_cases):
        a, b = sorted(rng.uniform(-100.0, 100.0, 2))
        c, d = sorted(rng.uniform(0.1, 100.0, 2))
        x, y = RInterval(a, b), RInterval(c, d)
        sx = rng.uniform(a, b)
        sy = rng.uniform(c, d)
        checks = (
            (iv_add(x, y), sx + sy),
            (iv_sub(x, y), sx - sy),
            (iv_mul(x, y), sx * sy),
            (iv_div(x, y), sx / sy),
            (iv_sqrt(y), math.sqrt(sy)),
        )
        bad += sum(0 if r.contains(v) else 1 for r, v in checks)
    return bad


def test_fuzz_containment_smoke():
    assert fuzz_containment(2000) == 0
