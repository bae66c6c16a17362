import math

import numpy as np
import pytest

from lagmult.errors import ConvergenceError, ParameterError
from lagmult.quadrature import (
    gauss_laguerre,
    integrate_weighted,
    laguerre_zeros,
    sup_scan,
)


class TestGaussLaguerre:
    def test_order_one(self):
        rule = gauss_laguerre(1, 0.0)
        assert rule.nodes == pytest.approx([1.0], abs=1e-14)
        assert rule.weights == pytest.approx([1.0], abs=1e-14)

    def test_order_two(self):
        # roots of x^2 - 4x + 2 are 2 -+ sqrt(2); weights (2 +- sqrt(2))/4
        rule = gauss_laguerre(2, 0.0)
        r2 = math.sqrt(2.0)
        assert rule.nodes == pytest.approx([2.0 - r2, 2.0 + r2], abs=1e-12)
        assert rule.weights == pytest.approx([(2.0 + r2) / 4.0, (2.0 - r2) / 4.0], abs=1e-12)

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.5])
    @pytest.mark.parametrize("order", [1, 5, 40])
    def test_total_mass(self, alpha, order):
        rule = gauss_laguerre(order, alpha)
        assert float(np.sum(rule.weights)) == pytest.approx(math.gamma(alpha + 1.0), rel=1e-12)

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 0.5, 2.0])
    def test_monomial_exactness(self, alpha):
        # exact moments: int x^m x^alpha e^-x = Gamma(m+alpha+1)
        rng = np.random.default_rng(17)
        for order in (4, 16, 64, 128):
            rule = gauss_laguerre(order, alpha)
            for m in rng.integers(0, 2 * order, size=6):
                got = rule.integrate(rule.nodes ** float(m))
                expected = math.exp(math.lgamma(m + alpha + 1.0))
                assert got == pytest.approx(expected, rel=1e-9)

    def test_nodes_positive_ascending(self):
        rule = gauss_laguerre(50, 0.3)
        assert np.all(rule.nodes > 0)
        assert np.all(np.diff(rule.nodes) > 0)
        assert np.all(rule.weights > 0)

    @pytest.mark.parametrize("order", [3, 10, 31])
    def test_interlacing(self, order):
        a = gauss_laguerre(order, 0.7).nodes
        b = gauss_laguerre(order + 1, 0.7).nodes
        assert np.all(b[:-1] < a) and np.all(a < b[1:])

    def test_zeros_match_rule_nodes(self):
        rule = gauss_laguerre(33, 1.2)
        assert laguerre_zeros(33, 1.2) == pytest.approx(rule.nodes, rel=1e-13)

    @pytest.mark.parametrize("order", [0, 513])
    def test_order_guard(self, order):
        with pytest.raises(ParameterError):
            gauss_laguerre(order, 0.0)

    def test_alpha_guard(self):
        with pytest.raises(ParameterError):
            gauss_laguerre(4, -1.0)


class TestIntegrateWeighted:
    def test_exponential(self):
        res = integrate_weighted(lambda x: np.exp(-x), 1.0, 1e-9)
        assert res.value == pytest.approx(1.0, abs=2e-9)
        assert res.abs_error_estimate >= 0
        assert res.panels_used > 0

    def test_gamma_three(self):
        res = integrate_weighted(lambda x: x**2 * np.exp(-x), 1.0, 1e-9)
        assert res.value == pytest.approx(2.0, abs=2e-9)

    def test_kink(self):
        # split at x=1 by hand: both halves integrate to e^{-1}
        res = integrate_weighted(lambda x: np.abs(1 - x) * np.exp(-x), 1.0, 1e-9)
        assert res.value == pytest.approx(2.0 * math.exp(-1.0), abs=1e-8)

    @pytest.mark.parametrize("s", [0.5, 1.7, 4.0])
    def test_gamma_function(self, s):
        # endpoint singularity at s = 0.5 exercises the grading toward 0
        res = integrate_weighted(lambda x: x ** (s - 1.0) * np.exp(-x), 1.0, 1e-7)
        assert res.value == pytest.approx(math.gamma(s), abs=5e-7)

    def test_decay_guard(self):
        with pytest.raises(ParameterError):
            integrate_weighted(lambda x: np.exp(-x), 0.0)

    def test_rough_integrand_raises(self):
        with pytest.raises(ConvergenceError):
            integrate_weighted(
                lambda x: np.sin(50.0 / np.maximum(x, 1e-12)) * np.exp(-x), 1.0, 1e-12
            )


class TestSupScan:
    def test_decreasing_exponential(self):
        sup, arg = sup_scan(lambda t: np.exp(-t / 2.0), 0)
        assert sup == pytest.approx(1.0, abs=1e-5)
        assert arg < 1e-4

    def test_calculus_oracle(self):
        # d/dx[(x-1)e^{-x/2}] = 0 at x = 3
        sup, arg = sup_scan(lambda x: np.abs(1 - x) * np.exp(-x / 2.0), 1)
        assert arg == pytest.approx(3.0, abs=1e-6)
        assert sup == pytest.approx(2.0 * math.exp(-1.5), rel=1e-10)

    def test_uniform_bound_weighted_orthonormal(self):
        # sup_t t^{1/6} |scriptL_k^{1/3}(t)| <= C (k+1)^{-1/6}, compensated value
        # settles near 0.598
        from lagmult.special import script_values

        a = 1.0 / 3.0
        compensated = []
        for k in (1, 4, 16, 64, 256):
            def g(ts, k=k):
                return ts ** (1.0 / 6.0) * script_values(a, k, ts)[k]

            sup, _ = sup_scan(g, k, a)
            compensated.append(sup * (k + 1.0) ** (1.0 / 6.0))
        assert max(compensated) < 0.75
        assert max(compensated) / min(compensated) < 1.25
