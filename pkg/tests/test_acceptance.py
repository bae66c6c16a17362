"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest -v -s tests/test_acceptance.py` to see the per-criterion
lines.  Criterion 7b asserts the documented profile-B slope and is expected
to fail; the analysis lives in the decisions ledger.
"""

import math
import time

import numpy as np
import pytest

from lagmult.cesaro import CesaroSpec, cesaro_kernel, cesaro_kernel_summed, kernel_l1_norm
from lagmult.differences import RealSequence, compose_check
from lagmult.harness import counterexample_remark3, fit_exponent, verify_thm11, verify_thm32
from lagmult.norms import SpaceSpec, lp_norm
from lagmult.quadrature import gauss_laguerre
from lagmult.special import binom_A_array, script_values
from lagmult.transform import LaguerreExpansion, transfer_identity_check
from lagmult.cli import run as cli_run

ALPHA_GRID = [-0.5, 0.0, 1.0, 2.5]


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {criterion}: {detail}")
    assert ok, f"{criterion}: {detail}"


def test_criterion_1_orthogonality_and_parseval():
    start = time.time()
    worst_gram = 0.0
    for alpha in ALPHA_GRID:
        rule = gauss_laguerre(48, alpha)
        mat = script_values(alpha, 40, rule.nodes)
        scaled_w = rule.weights * rule.nodes ** (-alpha) * np.exp(rule.nodes)
        gram = (mat * scaled_w) @ mat.T
        worst_gram = max(worst_gram, float(np.max(np.abs(gram - np.eye(41)))))
    worst_parseval = 0.0
    for alpha in ALPHA_GRID:
        rule = gauss_laguerre(72, alpha)
        a_over_gamma = binom_A_array(64, alpha) / math.gamma(alpha + 1.0)
        for trial in range(100):
            rng = np.random.default_rng((2024, trial))
            coeffs = rng.standard_normal(65)
            f = LaguerreExpansion(alpha, coeffs)
            fhat = coeffs * math.gamma(alpha + 1.0)
            lhs = float(np.sum(a_over_gamma * fhat**2))
            rhs = float(rule.integrate(f.evaluate(rule.nodes) ** 2))
            worst_parseval = max(worst_parseval, abs(lhs - rhs) / abs(rhs))
    elapsed = time.time() - start
    ok = worst_gram < 1e-8 and worst_parseval < 1e-9 and elapsed < 30.0
    _report("criterion 1 (orthogonality/Parseval)", ok,
            f"gram deviation {worst_gram:.2e}, parseval rel {worst_parseval:.2e}, "
            f"{elapsed:.1f}s")


def test_criterion_2_cesaro_kernel_identity():
    start = time.time()
    worst = 0.0
    for alpha in (0.0, 1.0):
        for delta in (0.3, 1.0, 2.5):
            for n in range(1, 65):
                spec = CesaroSpec(n, delta, alpha)
                nu = 4.0 * n + 2.0 * (alpha + delta + 1.0) + 2.0
                xs = np.linspace(0.5, nu, 64) + 0.123456
                c = cesaro_kernel(spec, xs)
                s = cesaro_kernel_summed(spec, xs)
                rel = np.max(np.abs(c - s) /
                             np.maximum(np.maximum(np.abs(c), np.abs(s)), 1e-300))
                worst = max(worst, float(rel))
    elapsed = time.time() - start
    ok = worst < 1e-9 and elapsed < 10.0
    _report("criterion 2 (Cesaro kernel identity)", ok,
            f"worst rel gap {worst:.2e}, {elapsed:.1f}s")


def test_criterion_3_transfer_identity():
    start = time.time()
    rng = np.random.default_rng(99)
    fs = [LaguerreExpansion(0.0, np.array([0.0, 0.0, 0.0, 1.0])),
          LaguerreExpansion(0.0, rng.standard_normal(9)),
          LaguerreExpansion(0.0, rng.choice([-1.0, 1.0], 13))]
    worst = 0.0
    for a in (0.5, 1.0, 1.5):
        for f in fs:
            for k in range(0, f.degree + 1, 2):
                chk = transfer_identity_check(f, 0.0, a, k, j_max=10_000)
                worst = max(worst, chk.gap)
    elapsed = time.time() - start
    ok = worst < 1e-6 and elapsed < 20.0
    _report("criterion 3 (transfer identity)", ok,
            f"worst gap {worst:.2e}, {elapsed:.1f}s")


def test_criterion_4_semigroup():
    start = time.time()
    worst = 0.0
    for trial in range(100):
        rng = np.random.default_rng((4, trial))
        m = RealSequence.finite(rng.standard_normal(rng.integers(1, 24)))
        a, b = rng.uniform(0.1, 1.6, size=2)
        k = int(rng.integers(0, 8))
        worst = max(worst, compose_check(m, float(a), float(b), k))
    elapsed = time.time() - start
    ok = worst < 1e-9 and elapsed < 5.0
    _report("criterion 4 (fractional semigroup)", ok,
            f"worst gap {worst:.2e}, {elapsed:.1f}s")


def test_criterion_5_gauss_laguerre():
    start = time.time()
    rule = gauss_laguerre(2, 0.0)
    r2 = math.sqrt(2.0)
    node_err = float(np.max(np.abs(rule.nodes - np.array([2.0 - r2, 2.0 + r2]))))
    weight_err = float(np.max(np.abs(
        rule.weights - np.array([(2.0 + r2) / 4.0, (2.0 - r2) / 4.0]))))
    worst_moment = 0.0
    rng = np.random.default_rng(5)
    for alpha in (-0.5, 0.0, 1.0, 2.5):
        for order in (8, 32, 128):
            r = gauss_laguerre(order, alpha)
            for m in rng.integers(0, 2 * order, size=4):
                got = r.integrate(r.nodes ** float(m))
                expected = math.exp(math.lgamma(m + alpha + 1.0))
                worst_moment = max(worst_moment, abs(got - expected) / expected)
    elapsed = time.time() - start
    ok = node_err < 1e-12 and weight_err < 1e-12 and worst_moment < 1e-9 \
        and elapsed < 5.0
    _report("criterion 5 (Gauss-Laguerre)", ok,
            f"N=2 node err {node_err:.1e}, weight err {weight_err:.1e}, "
            f"moment rel {worst_moment:.1e}, {elapsed:.1f}s")


def test_criterion_6_thm11_bounded_ratios():
    start = time.time()
    rep = verify_thm11(SpaceSpec(1.0, 0.0, 0.0), 0.0, n_max=256, trials=200,
                       random_degree=64, seed=7)
    elapsed = time.time() - start
    ratios = [row[3] for row in rep.table]
    top = ratios[-3:]
    no_growth = not (top[0] <= top[1] <= top[2] and top[2] >= 2.0 * top[0])
    ok = rep.verdict == "consistent" and no_growth and elapsed < 180.0
    _report("criterion 6 (Thm 1.1 ratio suite)", ok,
            f"verdict {rep.verdict}, ratio sup {rep.ratio_sup:.3f}, "
            f"top ratios {top[0]:.3f}/{top[1]:.3f}/{top[2]:.3f}, {elapsed:.1f}s")


@pytest.fixture(scope="module")
def remark3_result():
    start = time.time()
    res = counterexample_remark3(0.5, 2.0, 1.0, n_max=4096)
    res.elapsed = time.time() - start
    return res


def test_criterion_7a_remark3_plain_profile(remark3_result):
    res = remark3_result
    slope = res.fits["plain_qinf"].slope
    ok = abs(slope - 0.5) <= 0.1 and res.elapsed < 60.0
    _report("criterion 7a (Remark 3, plain-difference profile)", ok,
            f"fitted slope {slope:.4f} (target +0.5 +/- 0.1), {res.elapsed:.1f}s")


def test_criterion_7b_remark3_delta2_profile(remark3_result):
    # Stated target: slope -0.5 +/- 0.1, derived from the source display
    # Delta_2 Delta^{lambda-1} m_k ~ (k+1)^{-eps-lambda}.  The computed decay
    # is (k+1)^{-eps-1} (verified against high-precision truncated sums and
    # the alternating-symbol analysis), so the weighted profile grows like
    # n^{lambda-1-eps} = n^{+1} and this criterion cannot pass as written.
    # See the decisions ledger for the full analysis.
    res = remark3_result
    slope = res.fits["delta2_qinf"].slope
    ok = abs(slope - (-0.5)) <= 0.1
    _report("criterion 7b (Remark 3, combined-difference profile)", ok,
            f"fitted slope {slope:.4f} (stated target -0.5 +/- 0.1; computed "
            f"asymptotics give lambda-1-eps = +1.0)")


def test_criterion_8_cesaro_critical_index():
    start = time.time()
    bounded_vals = [kernel_l1_norm(CesaroSpec(n, 0.75, 0.0), 0.0)
                    for n in (32, 45, 64, 91, 128, 181, 256)]
    ratio = max(bounded_vals) / min(bounded_vals)
    grid = [32, 64, 128, 256, 512, 1024, 2048]
    growing = [kernel_l1_norm(CesaroSpec(n, 0.3, 0.0), 0.0) for n in grid]
    fit = fit_exponent(list(zip(grid, growing)))
    elapsed = time.time() - start
    ok = ratio < 1.5 and abs(fit.slope - 0.2) <= 0.05 and elapsed < 120.0
    _report("criterion 8 (Cesaro critical index)", ok,
            f"delta=0.75 sup/inf {ratio:.3f} (<1.5), delta=0.3 slope "
            f"{fit.slope:.3f} (0.2 +/- 0.05), {elapsed:.1f}s")


def test_criterion_9_cohen_single_mode():
    start = time.time()
    space = SpaceSpec(1.0, 0.0, 0.0)
    ns = [4, 8, 16, 32, 64, 128, 256]
    ratios = []
    for n in ns:
        coeffs = np.zeros(n + 1)
        coeffs[n] = 1.0
        norm = lp_norm(LaguerreExpansion(0.0, coeffs), space)
        ratios.append((n + 1.0) ** 0.5 / norm)
    top = ratios[-3:]
    no_growth = not (top[0] <= top[1] <= top[2] and top[2] >= 2.0 * top[0])
    elapsed = time.time() - start
    ok = no_growth and elapsed < 60.0
    _report("criterion 9 (Remark 1 / Cohen single mode)", ok,
            f"ratios at top octaves {top[0]:.4f}/{top[1]:.4f}/{top[2]:.4f}, "
            f"{elapsed:.1f}s")


def test_criterion_10_thm32_suite():
    start = time.time()
    rep = verify_thm32(0.0, 0.0, n_max=128, trials=50, random_degree=64, seed=13)
    elapsed = time.time() - start
    ok = rep.verdict == "consistent" and elapsed < 120.0
    _report("criterion 10 (Thm 3.2 ratio suite)", ok,
            f"verdict {rep.verdict}, ratio sup {rep.ratio_sup:.3f}, {elapsed:.1f}s")


def test_criterion_11_determinism(tmp_path):
    argv = ["thm11", "--alpha", "0", "--gamma", "0", "--p", "1", "--a", "0",
            "--n-max", "32", "--trials", "16", "--degree", "16", "--seed", "42"]
    outs = []
    for threads in ("1", "3", "7"):
        path = tmp_path / f"t{threads}.csv"
        assert cli_run(argv + ["--threads", threads, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    rerun = tmp_path / "rerun.csv"
    assert cli_run(argv + ["--threads", "1", "--out", str(rerun)]) == 0
    outs.append(rerun.read_bytes())
    ok = all(o == outs[0] for o in outs)
    _report("criterion 11 (determinism)", ok,
            f"{len(outs)} runs bitwise identical across thread counts")
