import math

import numpy as np
import pytest

from lagmult.cesaro import (
    CesaroSpec,
    cesaro_kernel,
    cesaro_kernel_summed,
    cesaro_multiplier,
    kernel_expansion,
    kernel_l1_norm,
)
from lagmult.errors import ParameterError
from lagmult.special import binom_A
from lagmult.transform import LaguerreExpansion, apply_multiplier


class TestMultiplier:
    def test_order_zero_is_partial_sum(self):
        m = cesaro_multiplier(CesaroSpec(5, 0.0, 0.0))
        assert m.values == pytest.approx(np.ones(6), rel=0)

    def test_n1_delta1(self):
        m = cesaro_multiplier(CesaroSpec(1, 1.0, 0.0))
        assert m.values == pytest.approx([1.0, 0.5], rel=0)

    def test_n2_delta2(self):
        m = cesaro_multiplier(CesaroSpec(2, 2.0, 0.0))
        assert m.values == pytest.approx([1.0, 0.5, 1.0 / 6.0], rel=1e-15)

    def test_endpoints_and_monotonicity(self):
        for delta in (0.3, 1.0, 2.5):
            spec = CesaroSpec(20, delta, 0.0)
            vals = cesaro_multiplier(spec).values
            assert vals[0] == 1.0
            assert vals[-1] == pytest.approx(1.0 / binom_A(20, delta), rel=1e-13)
            assert np.all(np.diff(vals) < 0)

    def test_guards(self):
        with pytest.raises(ParameterError):
            CesaroSpec(-1, 1.0, 0.0)
        with pytest.raises(ParameterError):
            CesaroSpec(1, -0.1, 0.0)


class TestKernel:
    def test_hand_identity_n1(self):
        # summed: (2*1 + 1*(1-x))/2 = (3-x)/2 equals L_1^2(x)/2
        xs = np.linspace(0.0, 6.0, 13)
        spec = CesaroSpec(1, 1.0, 0.0)
        assert cesaro_kernel(spec, xs) == pytest.approx((3.0 - xs) / 2.0, rel=1e-14)
        assert cesaro_kernel_summed(spec, xs) == pytest.approx((3.0 - xs) / 2.0, rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.0, 1.0])
    @pytest.mark.parametrize("delta", [0.3, 1.0, 2.5])
    def test_value_at_zero(self, alpha, delta):
        for n in (0, 1, 5, 20):
            spec = CesaroSpec(n, delta, alpha)
            expected = binom_A(n, alpha + delta + 1.0) / (
                binom_A(n, delta) * math.gamma(alpha + 1.0))
            assert cesaro_kernel(spec, 0.0)[0] == pytest.approx(expected, rel=1e-12)

    def test_degree_zero(self):
        spec = CesaroSpec(0, 1.7, 0.5)
        xs = np.array([0.0, 2.0, 9.0])
        assert cesaro_kernel(spec, xs) == pytest.approx(
            np.full(3, 1.0 / math.gamma(1.5)), rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.0, 1.0])
    @pytest.mark.parametrize("delta", [0.3, 1.0, 2.5])
    def test_closed_vs_summed(self, alpha, delta):
        for n in (2, 9, 33):
            spec = CesaroSpec(n, delta, alpha)
            nu = 4.0 * n + 2.0 * (alpha + delta + 1.0) + 2.0
            xs = np.linspace(0.5, nu, 64) + 0.123456
            c = cesaro_kernel(spec, xs)
            s = cesaro_kernel_summed(spec, xs)
            rel = np.abs(c - s) / np.maximum(np.maximum(np.abs(c), np.abs(s)), 1e-300)
            assert np.max(rel) < 1e-9

    def test_multiplier_matches_direct_sum(self):
        # applying the multiplier through the transform equals sum m_k c_k L_k
        rng = np.random.default_rng(2)
        coeffs = rng.standard_normal(9)
        f = LaguerreExpansion(0.0, coeffs)
        spec = CesaroSpec(8, 0.7, 0.0)
        m = cesaro_multiplier(spec)
        g = apply_multiplier(m, f)
        assert g.coeffs == pytest.approx(m.values * coeffs, rel=1e-10)


class TestKernelL1Norm:
    def test_degree_zero_norm(self):
        assert kernel_l1_norm(CesaroSpec(0, 0.5, 0.0), 0.0) == pytest.approx(2.0, abs=1e-9)

    def test_piecewise_oracle_n1(self):
        # kernel (3-x)/2; split at x = 3: integral = (2 + 8 e^{-3/2})/2
        got = kernel_l1_norm(CesaroSpec(1, 1.0, 0.0), 0.0)
        assert got == pytest.approx((2.0 + 8.0 * math.exp(-1.5)) / 2.0, rel=1e-10)

    def test_above_critical_bounded(self):
        vals = [kernel_l1_norm(CesaroSpec(n, 0.75, 0.0), 0.0) for n in (8, 16, 32, 64)]
        assert max(vals) / min(vals) < 1.3

    def test_expansion_wrapper(self):
        spec = CesaroSpec(3, 1.0, 0.0)
        f = kernel_expansion(spec)
        xs = np.array([0.1, 2.0, 7.0])
        assert f.evaluate(xs) == pytest.approx(cesaro_kernel(spec, xs), rel=1e-13)

    def test_gamma_guard(self):
        with pytest.raises(ParameterError):
            kernel_l1_norm(CesaroSpec(1, 1.0, 0.0), -1.0)
