"""Desk-scale workbench for Laguerre expansions, fractional differences,
weighted multiplier norms, and Cesaro summability checks."""

from .cesaro import CesaroSpec, cesaro_kernel, cesaro_multiplier, kernel_l1_norm
from .differences import RealSequence, compose_check, delta2, delta2_frac, frac_diff
from .norms import BlockNormProfile, SpaceSpec, block_sup_norm, lp_norm, thm11_lhs, thm31_K, thm32_lhs
from .quadrature import IntegralResult, QuadRule, gauss_laguerre, integrate_weighted, sup_scan
from .special import BinomCoeffStream, LaguerreEval, binom_A, laguerre_batch, laguerre_normalized, log_gamma, script_L
from .transform import LaguerreExpansion, analyze, apply_multiplier, synthesize, transfer_identity_check

__version__ = "0.1.0"

__all__ = [
    "BinomCoeffStream", "BlockNormProfile", "CesaroSpec", "IntegralResult",
    "LaguerreEval", "LaguerreExpansion", "QuadRule", "RealSequence", "SpaceSpec",
    "analyze", "apply_multiplier", "binom_A", "block_sup_norm", "cesaro_kernel",
    "cesaro_multiplier", "compose_check", "delta2", "delta2_frac", "frac_diff",
    "gauss_laguerre", "integrate_weighted", "kernel_l1_norm", "laguerre_batch",
    "laguerre_normalized", "log_gamma", "lp_norm", "script_L", "sup_scan",
    "synthesize", "thm11_lhs", "thm31_K", "thm32_lhs", "transfer_identity_check",
]
