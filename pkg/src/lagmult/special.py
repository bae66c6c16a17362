"""Gamma ratios, generalized binomial coefficients, and Laguerre evaluation.

The raw three-term recurrence is reliable in plain doubles for n <= 512 at
moderate x.  The weighted evaluators below carry the e^{-x/2} damping through
a renormalized recurrence and therefore stay in range for any x >= 0 and for
degrees in the thousands; they are what the norm and sup-scan machinery uses.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError

_BIG = 1e250
_LOG_BIG = math.log(_BIG)

#: documented validity cap for the plain (unrenormalized) recurrence
PLAIN_RECURRENCE_CAP = 512


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def binom_A(n: int, a: float) -> float:
    """Generalized binomial coefficient A_n^a = Gamma(n+a+1)/(Gamma(n+1)Gamma(a+1)).

    Computed by the multiplicative recurrence A_j = A_{j-1} (j+a)/j, which keeps
    exact signs (and exact zeros) for negative a where a log-gamma route would not.
    """
    if n < 0:
        raise ParameterError(f"binom_A requires n >= 0, got {n}")
    v = 1.0
    for j in range(1, n + 1):
        v *= (j + a) / j
    return v


def binom_A_array(n_max: int, a: float) -> np.ndarray:
    """A_0^a .. A_{n_max}^a as an array, via the same recurrence (cumprod form)."""
    if n_max < 0:
        raise ParameterError(f"binom_A_array requires n_max >= 0, got {n_max}")
    out = np.empty(n_max + 1)
    out[0] = 1.0
    if n_max >= 1:
        j = np.arange(1.0, n_max + 1.0)
        np.cumprod((j + a) / j, out=out[1:])
    return out


class BinomCoeffStream:
    """Lazily extended array of A_j^a, safe to share between workers."""

    def __init__(self, a: float):
        self.a = float(a)
        self._values = np.array([1.0])
        self._lock = threading.Lock()

    def _extend(self, j_max: int) -> None:
        with self._lock:
            n = self._values.size
            if j_max < n:
                return
            grown = np.empty(max(j_max + 1, 2 * n))
            grown[:n] = self._values
            a = self.a
            for j in range(n, grown.size):
                grown[j] = grown[j - 1] * (j + a) / j
            self._values = grown

    def value(self, j: int) -> float:
        if j < 0:
            raise ParameterError(f"A_j^a requires j >= 0, got {j}")
        if j >= self._values.size:
            self._extend(j)
        return float(self._values[j])

    def values(self, j_max: int) -> np.ndarray:
        """Read-only view of A_0^a .. A_{j_max}^a."""
        if j_max >= self._values.size:
            self._extend(j_max)
        view = self._values[: j_max + 1]
        view.flags.writeable = False
        return view


@dataclass(frozen=True)
class LaguerreEval:
    """Values L_0^alpha(x) .. L_{n_max}^alpha(x) at a single point."""

    alpha: float
    n_max: int
    x: float
    values: np.ndarray


def _check_alpha(alpha: float) -> None:
    if not alpha > -1.0:
        raise ParameterError(f"Laguerre parameter must satisfy alpha > -1, got {alpha}")


def laguerre_batch(alpha: float, n_max: int, x: float) -> LaguerreEval:
    """All of L_0^alpha(x) .. L_{n_max}^alpha(x) by forward recurrence.

    Plain double precision; capped at n_max <= 512.  Values can leave the
    representable range for very large x (the weighted evaluators do not).
    """
    _check_alpha(alpha)
    if n_max < 0 or n_max > PLAIN_RECURRENCE_CAP:
        raise ParameterError(
            f"laguerre_batch supports 0 <= n_max <= {PLAIN_RECURRENCE_CAP}, got {n_max}"
        )
    if x < 0:
        raise DomainError(f"laguerre_batch requires x >= 0, got {x}")
    out = np.empty(n_max + 1)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1.0 + alpha - x
    for n in range(1, n_max):
        out[n + 1] = ((2 * n + 1 + alpha - x) * out[n] - (n + alpha) * out[n - 1]) / (n + 1)
    if not np.all(np.isfinite(out)):
        raise ParameterError(
            f"Laguerre recurrence left double range at alpha={alpha}, n_max={n_max}, x={x}"
        )
    return LaguerreEval(alpha=alpha, n_max=n_max, x=float(x), values=out)


def laguerre_normalized(alpha: float, n_max: int, x: float) -> np.ndarray:
    """R_n^alpha(x) = L_n^alpha(x) / A_n^alpha, so R_n^alpha(0) = 1."""
    ev = laguerre_batch(alpha, n_max, x)
    return ev.values / binom_A_array(n_max, alpha)


def recurrence_residuals(ev: LaguerreEval) -> np.ndarray:
    """Relative residual of each stored L_n against its two predecessors."""
    vals = ev.values
    n = np.arange(1, ev.n_max)
    recomputed = ((2 * n + 1 + ev.alpha - ev.x) * vals[1:-1] - (n + ev.alpha) * vals[:-2]) / (n + 1)
    scale = np.maximum(np.abs(vals[2:]), 1e-300)
    return np.abs(recomputed - vals[2:]) / scale


def _weighted_start(alpha: float, xs: np.ndarray):
    off = -0.5 * xs
    expoff = np.exp(off)
    v_prev = np.ones_like(xs)
    v_curr = 1.0 + alpha - xs
    return off, expoff, v_prev, v_curr


def _weighted_step(n: int, alpha: float, xs, off, expoff, v_prev, v_curr):
    v_next = ((2 * n + 1 + alpha - xs) * v_curr - (n + alpha) * v_prev) / (n + 1)
    v_prev, v_curr = v_curr, v_next
    big = np.abs(v_curr) > _BIG
    if big.any():
        v_prev[big] /= _BIG
        v_curr[big] /= _BIG
        off[big] += _LOG_BIG
        expoff[big] = np.exp(off[big])
    return v_prev, v_curr


def laguerre_raw_matrix(alpha: float, n_max: int, xs) -> np.ndarray:
    """Matrix [n, i] of plain L_n^alpha(x_i); no renormalization, moderate x only."""
    _check_alpha(alpha)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < 0):
        raise DomainError("laguerre_raw_matrix requires x >= 0")
    out = np.empty((n_max + 1, xs.size))
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = 1.0 + alpha - xs
    for n in range(1, n_max):
        out[n + 1] = ((2 * n + 1 + alpha - xs) * out[n] - (n + alpha) * out[n - 1]) / (n + 1)
    if not np.all(np.isfinite(out)):
        raise ParameterError(
            f"raw Laguerre recurrence left double range (alpha={alpha}, n_max={n_max})"
        )
    return out


def laguerre_combine(alpha: float, coeffs, xs) -> np.ndarray:
    """sum_n c_n L_n^alpha(x), plain recurrence accumulation (moderate x only)."""
    _check_alpha(alpha)
    coeffs = np.asarray(coeffs, dtype=float)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    acc = np.full(xs.size, coeffs[0])
    if coeffs.size == 1:
        return acc
    v_prev = np.ones(xs.size)
    v_curr = 1.0 + alpha - xs
    acc = acc + coeffs[1] * v_curr
    for n in range(1, coeffs.size - 1):
        v_next = ((2 * n + 1 + alpha - xs) * v_curr - (n + alpha) * v_prev) / (n + 1)
        v_prev, v_curr = v_curr, v_next
        if coeffs[n + 1] != 0.0:
            acc += coeffs[n + 1] * v_curr
    return acc


def laguerre_weighted(alpha: float, n_max: int, xs) -> np.ndarray:
    """Matrix [n, i] of L_n^alpha(x_i) e^{-x_i/2}, renormalized recurrence.

    Stays in range for any x >= 0; entries that are genuinely below the
    smallest double underflow to 0.
    """
    _check_alpha(alpha)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < 0):
        raise DomainError("laguerre_weighted requires x >= 0")
    out = np.empty((n_max + 1, xs.size))
    off, expoff, v_prev, v_curr = _weighted_start(alpha, xs)
    out[0] = expoff
    if n_max == 0:
        return out
    out[1] = v_curr * expoff
    for n in range(1, n_max):
        v_prev, v_curr = _weighted_step(n, alpha, xs, off, expoff, v_prev, v_curr)
        out[n + 1] = v_curr * expoff
    return out


def laguerre_weighted_single(alpha: float, n: int, xs) -> np.ndarray:
    """Row n only of laguerre_weighted, without storing the matrix."""
    _check_alpha(alpha)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < 0):
        raise DomainError("laguerre_weighted_single requires x >= 0")
    off, expoff, v_prev, v_curr = _weighted_start(alpha, xs)
    if n == 0:
        return expoff.copy()
    for m in range(1, n):
        v_prev, v_curr = _weighted_step(m, alpha, xs, off, expoff, v_prev, v_curr)
    return v_curr * expoff


def laguerre_weighted_combine(alpha: float, coeffs, xs) -> np.ndarray:
    """sum_n c_n L_n^alpha(x) e^{-x/2}, accumulated without the full matrix."""
    _check_alpha(alpha)
    coeffs = np.asarray(coeffs, dtype=float)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < 0):
        raise DomainError("laguerre_weighted_combine requires x >= 0")
    off, expoff, v_prev, v_curr = _weighted_start(alpha, xs)
    acc = coeffs[0] * expoff
    if coeffs.size == 1:
        return acc
    acc = acc + coeffs[1] * v_curr * expoff
    for n in range(1, coeffs.size - 1):
        v_prev, v_curr = _weighted_step(n, alpha, xs, off, expoff, v_prev, v_curr)
        if coeffs[n + 1] != 0.0:
            acc += coeffs[n + 1] * v_curr * expoff
    return acc


def script_values(alpha: float, n_max: int, ts) -> np.ndarray:
    """Matrix [k, i] of the orthonormal Laguerre functions script-L_k^alpha(t_i).

    script-L_k = L_k e^{-t/2} t^{alpha/2} / sqrt(A_k^alpha Gamma(alpha+1)); the
    family is orthonormal on (0, inf) with plain Lebesgue measure.
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if np.any(ts <= 0):
        raise DomainError("script_values requires t > 0")
    weighted = laguerre_weighted(alpha, n_max, ts)
    k = np.arange(n_max + 1)
    lg = np.vectorize(math.lgamma)
    scale = np.exp(0.5 * (lg(k + 1.0) - lg(k + alpha + 1.0)))
    return weighted * scale[:, None] * ts[None, :] ** (alpha / 2.0)


def script_L(k: int, alpha: float, t: float) -> float:
    """Orthonormal Laguerre function script-L_k^alpha at a single t > 0."""
    if not t > 0:
        raise DomainError(f"script_L requires t > 0, got {t}")
    _check_alpha(alpha)
    if k < 0:
        raise ParameterError(f"script_L requires k >= 0, got {k}")
    weighted = laguerre_weighted_single(alpha, k, np.array([t]))[0]
    scale = math.exp(0.5 * (math.lgamma(k + 1.0) - math.lgamma(k + alpha + 1.0)))
    return weighted * scale * t ** (alpha / 2.0)
