"""Collatz enclosures, certification, and the dimension bisection."""

import numpy as np
import pytest

from conftest import dense_rho
from juliadim import mcmullen, spectral
from juliadim.cdisc import ParamEnclosure
from juliadim.mcmullen import SparseOp
from juliadim.spectral import (
    SpectralError,
    bisect_delta,
    certify_lower,
    certify_upper,
    collatz_enclose,
    collatz_iterate,
    validate,
)
from juliadim.tiles import CoverConfig


@pytest.fixture(scope="module")
def m5():
    return mcmullen.build(5, ParamEnclosure(-1.25, 1e-5), CoverConfig())


def dense_apply(a):
    return lambda v: a @ v


class TestCollatz:
    def test_symmetric_2x2(self):
        a = np.array([[2.0, 1.0], [1.0, 2.0]])
        enc = collatz_enclose(dense_apply(a), 2)
        # v = (1, 1) is the Perron vector, so the first step is exact
        assert enc.lo == enc.hi == 3.0
        assert enc.iterations == 1

    def test_generic_2x2(self):
        a = np.array([[1.0, 2.0], [3.0, 1.0]])
        rho = dense_rho(a)
        enc = collatz_enclose(dense_apply(a), 2)
        assert enc.lo <= rho <= enc.hi
        assert enc.width < 1e-10

    def test_random_primitive(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            a = rng.uniform(0.05, 1.0, (8, 8))
            enc = collatz_enclose(dense_apply(a), 8)
            assert enc.lo <= dense_rho(a) <= enc.hi

    def test_nesting(self):
        """Successive ratio brackets are nested around the spectral radius."""
        rng = np.random.default_rng(23)
        a = rng.uniform(0.05, 1.0, (8, 8))
        v = np.ones(8)
        prev_lo, prev_hi = -np.inf, np.inf
        rho = dense_rho(a)
        for _ in range(50):
            w = a @ v
            lo, hi = float(np.min(w / v)), float(np.max(w / v))
            assert lo >= prev_lo - 1e-13 and hi <= prev_hi + 1e-13
            # plain floats: allow rounding-level leakage around rho
            assert lo <= rho * (1 + 1e-13) and rho * (1 - 1e-13) <= hi
            prev_lo, prev_hi = max(prev_lo, lo), min(prev_hi, hi)
            v = w / w.max()

    def test_rejects_bad_vectors(self):
        a = np.eye(2) + 1.0
        with pytest.raises(SpectralError):
            collatz_iterate(dense_apply(a), np.array([1.0, 0.0]))
        with pytest.raises(SpectralError):
            collatz_iterate(dense_apply(a), np.array([1.0, -1.0]))

    def test_zero_row_detected(self):
        a = np.array([[1.0, 1.0], [0.0, 0.0]])
        with pytest.raises(SpectralError, match="non-positive"):
            collatz_iterate(dense_apply(a), np.ones(2))

    def test_decide_vs_early_exit(self):
        a = np.array([[1.0, 2.0], [3.0, 1.0]])
        enc, _ = collatz_iterate(dense_apply(a), np.ones(2), decide_vs=1.0)
        assert enc.lo > 1.0  # decided: provably above the threshold
        full = collatz_enclose(dense_apply(a), 2)
        assert enc.iterations <= full.iterations


class TestCertification:
    def test_brackets_eigenvalue(self, m5):
        for t in (0.5, 1.0, 1.3):
            op = SparseOp(m5.level, np.asarray(m5.g_lo) ** t)
            _, v = collatz_iterate(op.matvec, np.ones(op.n))
            lo = certify_lower(op, v)
            hi = certify_upper(op, v)
            rho = dense_rho(op.dense())
            assert lo <= rho <= hi
            assert hi - lo < 1e-9

    def test_rejects_nonpositive_vector(self, m5):
        op = m5.lo_matrix()
        with pytest.raises(SpectralError):
            certify_lower(op, np.zeros(op.n))
        with pytest.raises(SpectralError):
            certify_upper(op, -np.ones(op.n))

    def test_ordered_radii_on_comparable_pairs(self):
        """Entrywise domination implies spectral-radius domination."""
        rng = np.random.default_rng(29)
        for _ in range(30):
            a = rng.uniform(0.05, 1.0, (8, 8))
            b = a + rng.uniform(0.0, 0.2, (8, 8))
            assert dense_rho(a) <= dense_rho(b) + 1e-12

    def test_ordered_radii_interval_family(self, m5):
        lo_enc = collatz_enclose(m5.lo_matrix().matvec, m5.n)
        hi_enc = collatz_enclose(m5.hi_matrix().matvec, m5.n)
        assert lo_enc.lo <= hi_enc.hi
        assert lo_enc.hi <= hi_enc.hi + 1e-12


class TestBisection:
    def test_against_dense_oracle(self, m5):
        from conftest import dense_delta_oracle

        delta = bisect_delta(m5)
        oracle = dense_delta_oracle(np.asarray(m5.g_lo), m5.level)
        assert abs(delta - oracle) < 1e-9

    def test_rho_above_one_at_delta(self, m5):
        delta = bisect_delta(m5)
        op = SparseOp(m5.level, np.asarray(spectral.rd.pow_dn(m5.g_lo, delta)))
        _, v = collatz_iterate(op.matvec, np.ones(op.n))
        assert certify_lower(op, v) > 1.0

    def test_invalid_brackets(self, m5):
        with pytest.raises(SpectralError, match="bracket"):
            bisect_delta(m5, t_lo=1.9)
        with pytest.raises(SpectralError, match="bracket"):
            bisect_delta(m5, t_hi=0.2)
        with pytest.raises(SpectralError, match="eps"):
            bisect_delta(m5, eps=0.0)

    def test_concavity_of_rho(self, m5):
        """rho(M(t)) is convex in t: nonnegative second differences."""
        ts = np.linspace(0.3, 1.9, 50)
        rhos = np.array([
            dense_rho(SparseOp(m5.level, np.asarray(m5.g_lo) ** t).dense())
            for t in ts
        ])
        second = rhos[2:] - 2.0 * rhos[1:-1] + rhos[:-2]
        assert np.all(second > -1e-10)


class TestValidate:
    def test_certifies_bisection_result(self, m5):
        delta = bisect_delta(m5)
        res = validate(m5, delta)
        assert res.certified
        assert res.delta_star <= delta
        assert delta - res.delta_star <= 1e-3
        assert res.rho_at_delta.lo > 1.0

    def test_fails_beyond_crossing(self, m5):
        res = validate(m5, 2.0, retreat=False)
        assert not res.certified

    def test_domain_check(self, m5):
        with pytest.raises(SpectralError):
            validate(m5, 0.0)
        with pytest.raises(SpectralError):
            validate(m5, 2.5)
