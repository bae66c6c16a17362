"""Fractional difference calculus on real sequences.

Delta^delta m_k = sum_j A_j^{-delta-1} m_{k+j}; Delta_2 m_k = m_k - m_{k+2};
the combined operator is Delta_2 Delta^delta m_k = Delta^{delta+1} m_k
+ Delta^{delta+1} m_{k+1}.  Finite sequences give exact finite sums;
parametric sequences are truncated against their declared tail descriptor,
and the truncation refuses to guess when the descriptor cannot certify
convergence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ParameterError, TailNotCertifiable
from .special import binom_A_array

_J_MIN = 64
_J_CAP = 1 << 22
_ALTERNATING_SAFETY = 4.0


@dataclass
class RealSequence:
    """A real sequence, either stored values (zero-extended) or a generator rule.

    Parametric sequences declare |m_k| <= bound * (k+1)^(-decay); the
    ``alternating`` flag additionally declares m_k = s(-1)^k u_k with u_k >= 0
    eventually nonincreasing, which admits alternating-series tail bounds.
    The declared bound is spot-checked at 32 indices on construction.
    """

    values: Optional[np.ndarray] = None
    rule: Optional[Callable] = None
    tail_bound: float = 0.0
    tail_decay: float = 0.0
    alternating: bool = False
    support_hint: Optional[int] = None
    _spot_checked: bool = field(default=False, repr=False)

    @staticmethod
    def finite(values) -> "RealSequence":
        return RealSequence(values=np.asarray(values, dtype=float))

    @staticmethod
    def parametric(rule: Callable, bound: float, decay: float,
                   alternating: bool = False,
                   support_hint: Optional[int] = None) -> "RealSequence":
        seq = RealSequence(rule=rule, tail_bound=float(bound), tail_decay=float(decay),
                           alternating=alternating, support_hint=support_hint)
        seq._spot_check()
        return seq

    @property
    def kind(self) -> str:
        return "finite" if self.values is not None else "parametric"

    @property
    def degree(self) -> int:
        if self.values is None:
            raise ParameterError("degree is only defined for finite sequences")
        nz = np.nonzero(self.values)[0]
        return int(nz[-1]) if nz.size else 0

    def window(self, k_lo: int, k_hi: int) -> np.ndarray:
        """Values m_{k_lo} .. m_{k_hi} inclusive."""
        if k_lo < 0 or k_hi < k_lo:
            raise ParameterError(f"bad window [{k_lo}, {k_hi}]")
        if self.values is not None:
            out = np.zeros(k_hi - k_lo + 1)
            hi = min(k_hi + 1, self.values.size)
            if hi > k_lo:
                out[: hi - k_lo] = self.values[k_lo:hi]
            return out
        ks = np.arange(k_lo, k_hi + 1)
        vals = np.asarray(self.rule(ks), dtype=float)
        if vals.shape != ks.shape:
            vals = np.array([float(self.rule(int(k))) for k in ks])
        return vals

    def value(self, k: int) -> float:
        return float(self.window(k, k)[0])

    def _spot_check(self, samples: int = 32) -> None:
        if self._spot_checked:
            return
        ks = np.unique(np.geomspace(1, 1 << 16, samples).astype(int))
        vals = self.window(0, 0)  # rule sanity at k=0
        vals = np.concatenate([[vals[0]], [self.value(int(k)) for k in ks]])
        allowed = self.tail_bound * (np.concatenate([[0], ks]) + 1.0) ** (-self.tail_decay)
        bad = np.abs(vals) > allowed * (1.0 + 1e-12)
        if bad.any():
            k_bad = int(np.concatenate([[0], ks])[np.argmax(bad)])
            raise ParameterError(
                f"declared tail bound |m_k| <= {self.tail_bound}(k+1)^{-self.tail_decay} "
                f"fails at k={k_bad}"
            )
        self._spot_checked = True


def _coeff_envelope(coeffs: np.ndarray, delta: float) -> float:
    """C with |A_j^{-delta-1}| <= C (j+1)^{-delta-1}, from the materialized prefix."""
    j = np.arange(1, coeffs.size)
    if j.size == 0:
        return 1.0
    return 1.5 * float(np.max(np.abs(coeffs[1:]) * (j + 1.0) ** (delta + 1.0)))


def _is_nonneg_integer(delta: float) -> bool:
    return delta >= -1e-12 and abs(delta - round(delta)) < 1e-12


def _truncation_length(m: RealSequence, delta: float, k_lo: int, k_hi: int,
                       tol: float) -> int:
    """Smallest J (power-of-two-ish) whose certified tail is below tol."""
    if _is_nonneg_integer(delta):
        return int(round(delta)) + 1  # coefficients vanish beyond j = delta
    if not delta > -1.0:
        raise ParameterError(f"fractional difference requires delta > -1, got {delta}")
    eps = m.tail_decay
    M = m.tail_bound
    absolute_ok = eps > 0 and delta + eps > 0
    alternating_ok = m.alternating and eps > -delta
    if not absolute_ok and not alternating_ok:
        raise TailNotCertifiable(
            "tail descriptor cannot certify convergence of Delta^delta: need "
            f"decay > max(0, -delta) or alternating with decay > -delta "
            f"(delta={delta}, decay={eps}, alternating={m.alternating})"
        )
    J = _J_MIN
    while J <= _J_CAP:
        coeffs = binom_A_array(J, -delta - 1.0)
        c_env = _coeff_envelope(coeffs, delta)
        if alternating_ok:
            tail = _ALTERNATING_SAFETY * max(
                abs(coeffs[-1]) * M * (k_lo + J + 1.0) ** (-eps),
                abs(coeffs[-1]) * M * (k_hi + J + 1.0) ** (-eps),
            )
        else:
            tail = c_env * M * J ** (-(delta + eps)) / (delta + eps)
        if tail < tol:
            return J
        J *= 2
    raise TailNotCertifiable(
        f"truncation budget exhausted for Delta^{delta} at tol={tol}; "
        "tail decays too slowly"
    )


def frac_diff_range(m: RealSequence, delta: float, k_lo: int, k_hi: int,
                    tol: float = 1e-9) -> np.ndarray:
    """Delta^delta m_k for every k in [k_lo, k_hi], sharing one coefficient array."""
    if k_lo < 0 or k_hi < k_lo:
        raise ParameterError(f"bad k range [{k_lo}, {k_hi}]")
    if m.values is not None:
        support_end = m.values.size - 1
        if k_lo > support_end:
            return np.zeros(k_hi - k_lo + 1)
        J = support_end - k_lo  # largest offset with a stored value
        coeffs = binom_A_array(J, -delta - 1.0)
        win = m.window(k_lo, k_lo + (k_hi - k_lo) + J)
    else:
        J = _truncation_length(m, delta, k_lo, k_hi, tol) - 1
        coeffs = binom_A_array(J, -delta - 1.0)
        win = m.window(k_lo, k_hi + J)
    return np.correlate(win, coeffs, mode="valid")[: k_hi - k_lo + 1]


def frac_diff(m: RealSequence, delta: float, k: int, tol: float = 1e-9) -> float:
    """Delta^delta m_k = sum_j A_j^{-delta-1} m_{k+j}."""
    return float(frac_diff_range(m, delta, k, k, tol)[0])


def delta2(m: RealSequence, k: int) -> float:
    """Delta_2 m_k = m_k - m_{k+2}."""
    return m.value(k) - m.value(k + 2)


def delta2_frac(m: RealSequence, a: float, k: int, tol: float = 1e-9) -> float:
    """Delta_2 Delta^a m_k = Delta^{a+1} m_k + Delta^{a+1} m_{k+1}."""
    pair = frac_diff_range(m, a + 1.0, k, k + 1, tol / 2)
    return float(pair[0] + pair[1])


def delta2_frac_range(m: RealSequence, a: float, k_lo: int, k_hi: int,
                      tol: float = 1e-9) -> np.ndarray:
    """delta2_frac over a k range, vectorized."""
    inner = frac_diff_range(m, a + 1.0, k_lo, k_hi + 1, tol / 2)
    return inner[:-1] + inner[1:]


def compose_check(m: RealSequence, a: float, b: float, k: int) -> float:
    """|Delta^a(Delta^b m)_k - Delta^{a+b} m_k| on a finite sequence.

    The inner difference is materialized on a window long enough that the
    outer sum is exact (it vanishes beyond the support of m).
    """
    if m.values is None:
        raise ParameterError("compose_check requires a finite sequence")
    support_end = m.values.size - 1
    width = support_end + 64
    inner = frac_diff_range(m, b, k, k + width, tol=0.0)
    coeffs = binom_A_array(width, -a - 1.0)
    outer = float(np.dot(coeffs, inner))
    direct = frac_diff(m, a + b, k)
    return abs(outer - direct)
