"""Weighted L^p function norms and the sequence norms of the main inequalities.

Exponents are taken verbatim from the inequality displays: the ell^q sum with
weight (k+1)^{(gamma+1)/p - 1/2}, the dyadic block sups with weight
(k+1)^{(2 gamma+1)/p - (2 alpha+1)/2} and measure 1/(k+1), and the weighted
ell^1 sums of the sufficient/necessary L^1 pair.  p = 1 uses exact max norms,
never a large-q surrogate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial import legendre as _legendre

from .differences import RealSequence, delta2_frac_range, frac_diff_range
from .errors import ParameterError
from .quadrature import integrate_weighted, laguerre_zeros
from .transform import LaguerreExpansion

_gl_nodes24, _gl_weights24 = _legendre.leggauss(24)


@dataclass(frozen=True)
class SpaceSpec:
    """The triple (p, gamma, alpha): weighted space L^p_{w(gamma)} and expansion index.

    The multiplier theorems all live at 1 <= p < 2 (their admissibility
    predicates enforce that); p = 2 is allowed here so Parseval-direction
    norms are expressible.
    """

    p: float
    gamma: float
    alpha: float

    def __post_init__(self):
        if not 1.0 <= self.p <= 2.0:
            raise ParameterError(f"SpaceSpec requires 1 <= p <= 2, got p={self.p}")
        if not self.gamma > -1.0:
            raise ParameterError(f"SpaceSpec requires gamma > -1, got {self.gamma}")
        if not self.alpha > -1.0:
            raise ParameterError(f"SpaceSpec requires alpha > -1, got {self.alpha}")

    @property
    def q(self) -> float:
        """Conjugate exponent; inf when p = 1."""
        return math.inf if self.p == 1.0 else self.p / (self.p - 1.0)


@dataclass(frozen=True)
class BlockNormProfile:
    """Dyadic block norms (sum over [n, 2n]) and their running sup."""

    n_values: np.ndarray
    block_norms: np.ndarray

    @property
    def sup(self) -> float:
        return float(np.max(self.block_norms)) if self.block_norms.size else 0.0


@dataclass(frozen=True)
class WeightedSumResult:
    """A truncated weighted ell^1 sum with its tail certificate."""

    value: float
    tail_estimate: float
    certified: bool
    condition_ok: bool
    condition: str


def _panel_integral(g, edges: np.ndarray) -> float:
    a = edges[:-1]
    b = edges[1:]
    half = 0.5 * (b - a)
    xs = (a[:, None] + half[:, None] * (_gl_nodes24[None, :] + 1.0)).ravel()
    ws = (half[:, None] * _gl_weights24[None, :]).ravel()
    return float(np.dot(ws, g(xs)))


def _head_edges(r1: float, gamma: float, tol: float) -> np.ndarray:
    """Edges of [0, r1] graded geometrically toward 0 (ratio 1/4).

    Depth chosen so the uncovered [0, eps] remainder ~ eps^{gamma+1} is below tol.
    """
    levels = int(math.ceil((math.log(10.0 * max(r1, 1.0) / tol))
                           / ((gamma + 1.0) * math.log(4.0))))
    levels = min(max(levels, 8), 400)
    pts = r1 * 0.25 ** np.arange(levels)
    return np.concatenate([[0.0], pts[::-1]])


def _detect_sign_changes(f: LaguerreExpansion, nu: float) -> np.ndarray:
    """Sign changes of f e^{-x/2} on (0, 1.05 nu), bisected to full precision."""
    deg = max(f.degree, 1)
    lo = nu * 1e-7
    hi = 1.05 * nu
    head_grid = np.geomspace(lo, nu / 8.0, max(256, 16 * deg))
    body_grid = np.linspace(nu / 8.0, hi, max(256, 8 * deg))
    grid = np.unique(np.concatenate([head_grid, body_grid]))
    w = f.weighted_evaluate(grid)
    sign = np.sign(w)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if idx.size == 0:
        return np.empty(0)
    a, b = grid[idx].copy(), grid[idx + 1].copy()
    fa = w[idx].copy()
    for _ in range(52):
        mid = 0.5 * (a + b)
        fm = f.weighted_evaluate(mid)
        same = fa * fm > 0
        a = np.where(same, mid, a)
        fa = np.where(same, fm, fa)
        b = np.where(same, b, mid)
    return 0.5 * (a + b)


def _subdivided(edges_lo: np.ndarray, edges_hi: np.ndarray, max_width: float) -> np.ndarray:
    """All panel edges between paired bounds, each gap split to at most max_width."""
    out = []
    for a, b in zip(edges_lo, edges_hi):
        parts = max(1, int(math.ceil((b - a) / max_width)))
        out.append(np.linspace(a, b, parts + 1)[:-1])
    out.append(np.array([edges_hi[-1]]))
    return np.concatenate(out)


def _integrate_abs_bracketed(f: LaguerreExpansion, p: float, gamma: float,
                             roots: np.ndarray, tol: float) -> float:
    """integral of |f e^{-x/2}|^p x^gamma with panels split at every sign change.

    Inside a panel the integrand is smooth, so one moderate Gauss panel per
    root gap is spectrally accurate; for non-integer p a few digits are lost
    to the |x - r|^p endpoint behavior at the sign changes.
    """

    def g(xs):
        w = np.abs(f.weighted_evaluate(xs)) ** p
        return w * xs ** gamma

    nu = 4.0 * max(f.degree, 1) + 2.0 * f.alpha + 2.0
    tail_end = max(nu + 60.0 * nu ** (1.0 / 3.0) + 20.0,
                   (roots[-1] if roots.size else 0.0) + 40.0)
    first = roots[0] if roots.size else min(1.0, tail_end / 10.0)
    edges = [_head_edges(first, gamma, tol)]
    anchors = np.concatenate([roots, [tail_end]]) if roots.size else np.array([tail_end])
    body = _subdivided(np.concatenate([[first], anchors[:-1]]), anchors, max_width=8.0)
    edges.append(body)
    all_edges = np.unique(np.concatenate(edges))
    return _panel_integral(g, all_edges)


def lp_norm(f, space: SpaceSpec, tol: float = 1e-7,
            decay_rate: Optional[float] = None,
            roots: Optional[np.ndarray] = None) -> float:
    """Weighted norm (integral of |f(x) e^{-x/2}|^p x^gamma dx)^{1/p}.

    Expansions are integrated with the stable weighted evaluator; a single-mode
    expansion (or an explicit ``roots`` array of sign-change locations) is
    integrated on panels split at the sign changes, everything else through the
    graded panel integrator with decay rate p/2.  Black-box callables must
    declare their decay rate.
    """
    p, gamma = space.p, space.gamma
    if isinstance(f, LaguerreExpansion):
        scale = float(np.max(np.abs(f.coeffs)))
        if scale == 0.0:
            return 0.0
        # normalizing first makes the panelization scale-free, so the norm is
        # exactly homogeneous under scalar multiplication
        fn = LaguerreExpansion(f.alpha, f.coeffs / scale)
        if roots is None:
            nz = np.nonzero(fn.coeffs)[0]
            if nz.size == 1 and nz[0] >= 1:
                roots = laguerre_zeros(int(nz[0]), fn.alpha)
            else:
                nu = 4.0 * max(fn.degree, 1) + 2.0 * fn.alpha + 2.0
                roots = _detect_sign_changes(fn, nu)
        value = _integrate_abs_bracketed(fn, p, gamma, np.asarray(roots, float), tol)
        return scale * value ** (1.0 / p)
    if decay_rate is None:
        raise ParameterError("lp_norm of a black-box callable needs decay_rate")

    def g(xs):
        return np.abs(np.asarray(f(xs), dtype=float) * np.exp(-xs / 2.0)) ** p * xs ** gamma

    res = integrate_weighted(g, decay_rate=p * (decay_rate + 0.5), tol=tol)
    return res.value ** (1.0 / p)


def _ell_q(values: np.ndarray, q: float, measure: Optional[np.ndarray] = None) -> float:
    if q == math.inf:
        return float(np.max(np.abs(values))) if values.size else 0.0
    a = np.abs(values) ** q
    if measure is not None:
        a = a * measure
    return float(np.sum(a) ** (1.0 / q))


def thm11_lhs(fhat, space: SpaceSpec, a: float, tol: float = 1e-9) -> float:
    """(sum_k |(k+1)^{(gamma+1)/p - 1/2} Delta_2 Delta^a fhat(k)|^q)^{1/q}.

    fhat is a finite coefficient array; the sum stops where the finite-support
    tail is exactly zero.
    """
    seq = fhat if isinstance(fhat, RealSequence) else RealSequence.finite(fhat)
    if seq.values is None:
        raise ParameterError("thm11_lhs needs a finite coefficient sequence")
    deg = seq.values.size - 1
    diffs = delta2_frac_range(seq, a, 0, deg, tol)
    k = np.arange(deg + 1, dtype=float)
    weights = (k + 1.0) ** ((space.gamma + 1.0) / space.p - 0.5)
    return _ell_q(weights * diffs, space.q)


def _window_values(s, k_lo: int, k_hi: int) -> np.ndarray:
    if isinstance(s, RealSequence):
        return s.window(k_lo, k_hi)
    if callable(s):
        return np.asarray(s(np.arange(k_lo, k_hi + 1)), dtype=float)
    arr = np.asarray(s, dtype=float)
    return RealSequence.finite(arr).window(k_lo, k_hi)


def block_sup_norm(s, weight_exponent: float, space: SpaceSpec, n_max: int,
                   q: Optional[float] = None) -> BlockNormProfile:
    """Dyadic profile of (sum_{k=n}^{2n} |(k+1)^w s_k|^q / (k+1))^{1/q}.

    q defaults to the conjugate exponent of the space (max over the block when
    q = inf).  s may be a RealSequence, an array, or a vectorized k-callable.
    """
    if n_max < 1:
        raise ParameterError(f"block_sup_norm requires n_max >= 1, got {n_max}")
    q = space.q if q is None else q
    ns, norms = [], []
    n = 1
    while n <= n_max:
        vals = _window_values(s, n, 2 * n)
        k = np.arange(n, 2 * n + 1, dtype=float)
        weighted = (k + 1.0) ** weight_exponent * vals
        if q == math.inf:
            norms.append(float(np.max(np.abs(weighted))))
        else:
            norms.append(float(np.sum(np.abs(weighted) ** q / (k + 1.0)) ** (1.0 / q)))
        ns.append(n)
        n *= 2
    return BlockNormProfile(n_values=np.array(ns), block_norms=np.array(norms))


def _octave_sum(term_fn: Callable[[int, int], np.ndarray], tol: float,
                max_k: int = 1 << 22):
    """Sum term_fn over octaves [2^i, 2^{i+1}) until the tail is certified."""
    total = float(np.sum(term_fn(0, 1)))  # k = 0 alone
    prev = None
    k_lo = 1
    while k_lo < max_k:
        k_hi = 2 * k_lo
        s = float(np.sum(term_fn(k_lo, k_hi)))
        total += s
        if prev is not None and s < prev:
            r = s / prev if prev > 0 else 0.0
            remainder = s * r / (1.0 - r) if r < 1.0 else math.inf
            if s < tol / 4 and remainder < tol:
                return total, remainder, True
        prev = s
        k_lo = k_hi
    return total, math.inf, False


def thm31_K(fseq: RealSequence, delta: float, alpha: float, gamma: float,
            tol: float = 1e-7) -> WeightedSumResult:
    """sum_k (k+1)^{delta+alpha-gamma} |Delta^{delta+1} fseq_k|, with tail certificate."""
    condition_ok = delta > 2.0 * gamma - alpha + 0.5 >= 0.0
    condition = (f"delta > 2 gamma - alpha + 1/2 >= 0: "
                 f"{delta} > {2.0 * gamma - alpha + 0.5} >= 0")
    w = delta + alpha - gamma
    if fseq.values is not None:
        deg = fseq.values.size - 1
        diffs = frac_diff_range(fseq, delta + 1.0, 0, deg)
        k = np.arange(deg + 1, dtype=float)
        value = float(np.sum((k + 1.0) ** w * np.abs(diffs)))
        return WeightedSumResult(value, 0.0, True, condition_ok, condition)

    def terms(k_lo, k_hi):
        inner_tol = tol / (16.0 * (k_hi - k_lo) * max((k_hi + 1.0) ** max(w, 0.0), 1.0))
        diffs = frac_diff_range(fseq, delta + 1.0, k_lo, k_hi - 1, inner_tol)
        k = np.arange(k_lo, k_hi, dtype=float)
        return (k + 1.0) ** w * np.abs(diffs)

    value, tail, certified = _octave_sum(terms, tol)
    return WeightedSumResult(value, tail, certified, condition_ok, condition)


def thm32_lhs(fhat, alpha: float, gamma: float, tol: float = 1e-7) -> WeightedSumResult:
    """sum_k (k+1)^{gamma-2/3} |Delta^{2 gamma - alpha + 1/3} fhat(k)|."""
    condition_ok = gamma > max(-1.0 / 3.0, alpha / 2.0 - 1.0 / 6.0)
    condition = (f"gamma > max(-1/3, alpha/2 - 1/6): "
                 f"{gamma} > {max(-1.0 / 3.0, alpha / 2.0 - 1.0 / 6.0)}")
    order = 2.0 * gamma - alpha + 1.0 / 3.0
    w = gamma - 2.0 / 3.0
    seq = fhat if isinstance(fhat, RealSequence) else RealSequence.finite(fhat)
    if seq.values is not None:
        deg = seq.values.size - 1
        diffs = frac_diff_range(seq, order, 0, deg)
        k = np.arange(deg + 1, dtype=float)
        value = float(np.sum((k + 1.0) ** w * np.abs(diffs)))
        return WeightedSumResult(value, 0.0, True, condition_ok, condition)

    def terms(k_lo, k_hi):
        inner_tol = tol / (16.0 * (k_hi - k_lo))
        diffs = frac_diff_range(seq, order, k_lo, k_hi - 1, inner_tol)
        k = np.arange(k_lo, k_hi, dtype=float)
        return (k + 1.0) ** w * np.abs(diffs)

    value, tail, certified = _octave_sum(terms, tol)
    return WeightedSumResult(value, tail, certified, condition_ok, condition)
