"""Cesaro multiplier sequences, kernels, and their weighted L^1 norms.

The kernel of the order-delta Cesaro mean of degree n collapses to a single
Laguerre polynomial of raised index:
chi_n(x) = (A_n^delta Gamma(alpha+1))^{-1} L_n^{alpha+delta+1}(x).
The closed form is the primary evaluation path; the summed form is kept as a
cross-check oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .differences import RealSequence
from .errors import ParameterError
from .norms import SpaceSpec, lp_norm
from .quadrature import laguerre_zeros
from .special import binom_A, binom_A_array, laguerre_combine, laguerre_weighted_single
from .transform import LaguerreExpansion


@dataclass(frozen=True)
class CesaroSpec:
    """Degree n, order delta, and expansion index alpha of one Cesaro mean."""

    n: int
    delta: float
    alpha: float

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError(f"CesaroSpec requires n >= 0, got {self.n}")
        if self.delta < 0:
            raise ParameterError(f"CesaroSpec requires delta >= 0, got {self.delta}")
        if not self.alpha > -1.0:
            raise ParameterError(f"CesaroSpec requires alpha > -1, got {self.alpha}")


def cesaro_multiplier(spec: CesaroSpec) -> RealSequence:
    """Multiplier sequence m_k = A_{n-k}^delta / A_n^delta, k = 0..n."""
    a = binom_A_array(spec.n, spec.delta)
    return RealSequence.finite(a[::-1] / a[-1])


def cesaro_kernel(spec: CesaroSpec, x) -> np.ndarray:
    """Kernel values via the closed form L_n^{alpha+delta+1}(x) / (A_n^delta Gamma(alpha+1))."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    coeffs = np.zeros(spec.n + 1)
    coeffs[spec.n] = 1.0
    vals = laguerre_combine(spec.alpha + spec.delta + 1.0, coeffs, xs)
    return vals / (binom_A(spec.n, spec.delta) * math.gamma(spec.alpha + 1.0))


def cesaro_kernel_summed(spec: CesaroSpec, x) -> np.ndarray:
    """Cross-check path: (A_n^delta Gamma(alpha+1))^{-1} sum_k A_{n-k}^delta L_k^alpha(x)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    weights = binom_A_array(spec.n, spec.delta)[::-1]
    vals = laguerre_combine(spec.alpha, weights, xs)
    return vals / (binom_A(spec.n, spec.delta) * math.gamma(spec.alpha + 1.0))


def kernel_expansion(spec: CesaroSpec) -> LaguerreExpansion:
    """The kernel as a single-mode expansion in the raised-index basis."""
    coeffs = np.zeros(spec.n + 1)
    coeffs[spec.n] = 1.0 / (binom_A(spec.n, spec.delta) * math.gamma(spec.alpha + 1.0))
    return LaguerreExpansion(alpha=spec.alpha + spec.delta + 1.0, coeffs=coeffs)


def kernel_l1_norm(spec: CesaroSpec, gamma: float, tol: float = 1e-7) -> float:
    """L^1_{w(gamma)} norm of the kernel, integrated between its sign changes."""
    if not gamma > -1.0:
        raise ParameterError(f"kernel_l1_norm requires gamma > -1, got {gamma}")
    space = SpaceSpec(p=1.0, gamma=gamma, alpha=spec.alpha)
    f = kernel_expansion(spec)
    roots = laguerre_zeros(spec.n, f.alpha) if spec.n >= 1 else None
    return lp_norm(f, space, tol=tol, roots=roots)
