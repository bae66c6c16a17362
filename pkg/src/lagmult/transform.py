"""Fourier-Laguerre analysis, synthesis, multipliers, and the transfer identity.

Conventions: an expansion stores raw-L coefficients, f(x) = sum_k c_k L_k^alpha(x).
The hat coefficients are f^(n) = int f R_n^alpha x^alpha e^{-x} dx, so for an
expansion in its own basis f^(n) = c_n Gamma(alpha+1); the paper-normalized
(Gamma(alpha+1))^{-1} factor enters only at the synthesize boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .differences import RealSequence, frac_diff_range
from .errors import ParameterError
from .quadrature import gauss_laguerre, integrate_weighted
from .special import (
    binom_A_array,
    laguerre_combine,
    laguerre_raw_matrix,
    laguerre_weighted_combine,
)


@dataclass(frozen=True)
class LaguerreExpansion:
    """Finite expansion f = sum_k coeffs[k] L_k^alpha."""

    alpha: float
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise ParameterError("coeffs must be a nonempty 1-d array")
        if not self.alpha > -1.0:
            raise ParameterError(f"expansion requires alpha > -1, got {self.alpha}")

    @property
    def degree(self) -> int:
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if nz.size else 0

    def evaluate(self, xs) -> np.ndarray:
        """Plain values f(x); fine at quadrature-node scale."""
        return laguerre_combine(self.alpha, self.coeffs, xs)

    def weighted_evaluate(self, xs) -> np.ndarray:
        """f(x) e^{-x/2}, stable for any x >= 0."""
        return laguerre_weighted_combine(self.alpha, self.coeffs, xs)


def analysis_order(degree: int, n_max: int) -> int:
    """Gauss-Laguerre order making every analyze inner product exact quadrature."""
    return (degree + n_max) // 2 + 8


def analyze(f, alpha: float, n_max: int, decay_rate: float | None = None,
            tol: float = 1e-9) -> np.ndarray:
    """Fourier-Laguerre coefficients f^(0..n_max) at expansion index alpha.

    Expansions use one exact Gauss-Laguerre rule; black-box callables must
    declare a decay rate >= 1/2 (|f| <~ e^{-rate x}) and go through the panel
    integrator coefficient by coefficient.
    """
    if not alpha > -1.0:
        raise ParameterError(f"analyze requires alpha > -1, got {alpha}")
    if isinstance(f, LaguerreExpansion):
        order = analysis_order(f.degree, n_max)
        if order > 512:
            raise ParameterError(
                f"analysis order {order} exceeds the supported quadrature range"
            )
        rule = gauss_laguerre(order, alpha)
        fvals = f.evaluate(rule.nodes)
        rmat = laguerre_raw_matrix(alpha, n_max, rule.nodes)
        rmat /= binom_A_array(n_max, alpha)[:, None]
        return rmat @ (rule.weights * fvals)
    if decay_rate is None or decay_rate < 0.5:
        raise ParameterError(
            "black-box analyze requires a declared decay rate >= 1/2"
        )
    out = np.empty(n_max + 1)
    a_vals = binom_A_array(n_max, alpha)
    for n in range(n_max + 1):
        def integrand(xs, _n=n):
            xs = np.asarray(xs, dtype=float)
            from .special import laguerre_weighted_single
            weighted = laguerre_weighted_single(alpha, _n, xs)
            return (np.asarray(f(xs), dtype=float) * weighted / a_vals[_n]
                    * xs ** alpha * np.exp(-xs / 2.0))
        out[n] = integrate_weighted(integrand, decay_rate + 0.5, tol).value
    return out


def synthesize(coeffs, alpha: float) -> LaguerreExpansion:
    """Expansion with hat coefficients coeffs: g = Gamma(alpha+1)^{-1} sum m_k L_k^alpha."""
    coeffs = np.asarray(coeffs, dtype=float)
    return LaguerreExpansion(alpha=alpha, coeffs=coeffs / math.gamma(alpha + 1.0))


def apply_multiplier(m, f: LaguerreExpansion) -> LaguerreExpansion:
    """Coefficientwise action of the multiplier sequence on an expansion.

    In the raw-L representation the shared Gamma factor cancels, so this is
    exactly coeffs[k] -> m_k coeffs[k].
    """
    if isinstance(m, RealSequence):
        mvals = m.window(0, f.coeffs.size - 1)
    else:
        m = np.asarray(m, dtype=float)
        mvals = np.zeros(f.coeffs.size)
        upto = min(m.size, f.coeffs.size)
        mvals[:upto] = m[:upto]
    return LaguerreExpansion(alpha=f.alpha, coeffs=mvals * f.coeffs)


@dataclass(frozen=True)
class TransferCheck:
    lhs: float
    rhs: float
    gap: float
    absolutely_convergent: bool


def transfer_identity_check(f: LaguerreExpansion, alpha: float, a: float, k: int,
                            j_max: int = 10_000) -> TransferCheck:
    """Check Delta^a f^_alpha(k) = (Gamma(alpha+1)/Gamma(alpha+a+1)) f^_{alpha+a}(k).

    The left side is the fractional difference of the analyzed coefficients
    (finite support, truncated at j_max); the right side is an independent
    reanalysis of f at index alpha+a.  Outside a > -(2 alpha + 1)/4 the
    underlying series is not absolutely convergent and the check is flagged.
    """
    if not (alpha > -1.0 and a > -1.0 and alpha + a > -1.0):
        raise ParameterError(
            f"transfer identity requires alpha, a > -1 and alpha+a > -1 "
            f"(alpha={alpha}, a={a})"
        )
    if k < 0:
        raise ParameterError(f"transfer identity requires k >= 0, got {k}")
    n_hat = min(f.degree, k + j_max)
    fhat = RealSequence.finite(analyze(f, alpha, n_hat))
    lhs = float(frac_diff_range(fhat, a, k, k)[0])
    rhs_all = analyze(f, alpha + a, k)
    rhs = math.gamma(alpha + 1.0) / math.gamma(alpha + a + 1.0) * float(rhs_all[k])
    return TransferCheck(
        lhs=lhs,
        rhs=rhs,
        gap=abs(lhs - rhs),
        absolutely_convergent=a > -(2.0 * alpha + 1.0) / 4.0,
    )
