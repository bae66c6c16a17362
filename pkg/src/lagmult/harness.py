"""Theorem-level verification: admissibility, ratio suites, counterexamples, fits.

Necessary-condition theorems are checked as bounded-ratio claims: the unspecified
constant C is estimated empirically and a "violated" verdict needs sustained
geometric growth (>= 2x over the top two octaves of n), never a single bump.
All runs are deterministic for a fixed seed, independent of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .cesaro import CesaroSpec, kernel_l1_norm
from .differences import RealSequence, delta2_frac_range
from .errors import ParameterError
from .norms import SpaceSpec, BlockNormProfile, block_sup_norm, lp_norm, thm11_lhs, thm31_K, thm32_lhs
from .transform import LaguerreExpansion, apply_multiplier, synthesize

_NORM_TOL = 1e-6  # p-norm tolerance in family sweeps; ratios are compared at 1e-2


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares slope of log(value) against log(n), top octaves only."""

    slope: float
    intercept: float
    max_residual: float
    n_range: tuple[int, int]

    def to_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept,
                "max_residual": self.max_residual,
                "n_range": [self.n_range[0], self.n_range[1]]}


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    admissible: bool
    branch: str
    table: list  # rows (n, lhs, rhs, ratio)
    ratio_sup: float
    fit: Optional[ExponentFit]
    verdict: str  # consistent | violated | inconclusive
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        if self.table and len(self.table[0]) == 2:
            rows = [{"n": int(n), "block_norm": v} for (n, v) in self.table]
        else:
            rows = [{"n": int(n), "lhs": lhs, "rhs": rhs, "ratio": ratio}
                    for (n, lhs, rhs, ratio) in self.table]
        return {
            "theorem": self.theorem,
            "params": self.params,
            "admissible": self.admissible,
            "branch": self.branch,
            "table": rows,
            "ratio_sup": self.ratio_sup,
            "fit": self.fit.to_dict() if self.fit is not None else None,
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def _pmap(fn: Callable, items: Sequence, threads: int) -> list:
    """Order-preserving map; identical output for any worker count."""
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def dyadic_grid(n_max: int, n_min: int = 1) -> list[int]:
    out = []
    n = n_min
    while n <= n_max:
        out.append(n)
        n *= 2
    return out


def fit_exponent(points: Iterable[tuple[float, float]]) -> ExponentFit:
    """Fit value ~ C n^slope on (log n, log value), using only n >= n_hi/8."""
    pts = sorted((float(n), float(v)) for n, v in points)
    if len(pts) < 4:
        raise ParameterError(f"fit_exponent needs >= 4 points, got {len(pts)}")
    if any(v <= 0 for _, v in pts):
        raise ParameterError("fit_exponent requires positive values")
    n_hi = pts[-1][0]
    used = [(n, v) for n, v in pts if n >= n_hi / 8.0 - 1e-12]
    ln = np.log([n for n, _ in used])
    lv = np.log([v for _, v in used])
    slope, intercept = np.polyfit(ln, lv, 1)
    resid = np.abs(lv - (slope * ln + intercept))
    return ExponentFit(slope=float(slope), intercept=float(intercept),
                       max_residual=float(np.max(resid)),
                       n_range=(int(round(used[0][0])), int(round(n_hi))))


def thm11_admissible(p: float, gamma: float, alpha: float, a: float) -> tuple[bool, str]:
    """Admissibility of (p, gamma, alpha, a) for the coefficient-difference inequality."""
    if not 1.0 <= p < 2.0:
        raise ParameterError(f"requires 1 <= p < 2, got p={p}")
    if not (alpha > -1.0 and a > -1.0 and alpha + a > -1.0):
        return False, "requires alpha > -1, a > -1, alpha+a > -1"
    s = alpha + a
    if s <= 0.5:
        ok = (gamma + 1.0) / p <= s / p + 1.0 + 1e-12
        return ok, "alpha+a <= 1/2: (gamma+1)/p <= (alpha+a)/p + 1"
    ok = (gamma + 1.0) / p <= s / 2.0 + 1.0 + 0.5 * (1.0 / p - 0.5) + 1e-12
    return ok, "alpha+a > 1/2: (gamma+1)/p <= (alpha+a)/2 + 1 + (1/p - 1/2)/2"


def thm12_admissible(p: float, gamma: float, alpha: float, a: float) -> tuple[bool, str]:
    """Admissibility for the block-norm multiplier inequality (upper and lower bound)."""
    upper_ok, upper_branch = thm11_admissible(p, gamma, alpha, a)
    if not (alpha > -1.0 and a > -1.0 and alpha + a > -1.0):
        return False, upper_branch
    if p < 4.0 / 3.0:
        low = (alpha + 1.0) / 2.0 + 1.0 / (3.0 * p)
        low_branch = "1 <= p < 4/3: (gamma+1)/p > (alpha+1)/2 + 1/(3p)"
    else:
        low = (alpha + 1.0) / 2.0 + 0.25
        low_branch = "4/3 <= p < 2: (gamma+1)/p > (alpha+1)/2 + 1/4"
    ok = upper_ok and (gamma + 1.0) / p > low
    return ok, f"{upper_branch}; {low_branch}"


def growth_verdict(ns: Sequence[float], values: Sequence[float]) -> str:
    """violated only on monotone >= 2x growth over the top two octaves."""
    if len(ns) < 3:
        return "inconclusive"
    v1, v2, v3 = values[-3], values[-2], values[-1]
    if v1 <= v2 <= v3 and v1 > 0 and v3 >= 2.0 * v1:
        return "violated"
    return "consistent"


def taper_profile(width: int) -> np.ndarray:
    """Delayed-mean style profile: 1 up to width, smooth cosine^2 taper to 2*width."""
    if width < 1:
        raise ParameterError(f"taper_profile requires width >= 1, got {width}")
    k = np.arange(2 * width + 1, dtype=float)
    c = np.ones(k.size)
    ramp = (k - width) / (width + 1.0)
    mask = k > width
    c[mask] = np.cos(0.5 * math.pi * ramp[mask]) ** 2
    return c


def family_members(alpha: float, degree: int, trials: int, seed: int,
                   which: Sequence[str] = ("single", "random", "power", "ones"),
                   ) -> list[tuple[str, LaguerreExpansion]]:
    """The fixed test-function families: spikes, rough, smooth, Dirichlet-type."""
    members: list[tuple[str, LaguerreExpansion]] = []
    for fam in which:
        if fam == "single":
            c = np.zeros(degree + 1)
            c[degree] = 1.0
            members.append((f"single:{degree}", LaguerreExpansion(alpha, c)))
        elif fam == "ones":
            members.append((f"ones:{degree}", LaguerreExpansion(alpha, np.ones(degree + 1))))
        elif fam == "power":
            for s in (0.6, 1.0, 2.0):
                c = (np.arange(degree + 1) + 1.0) ** (-s)
                members.append((f"power:{s}:{degree}", LaguerreExpansion(alpha, c)))
        elif fam == "random":
            for t in range(trials):
                rng = np.random.default_rng((seed, degree, t))
                c = rng.choice([-1.0, 1.0], size=degree + 1)
                members.append((f"random:{t}:{degree}", LaguerreExpansion(alpha, c)))
        elif fam == "taper":
            w = max(degree // 2, 1)
            members.append((f"taper:{w}", LaguerreExpansion(alpha, taper_profile(w))))
        else:
            raise ParameterError(f"unknown family {fam!r}")
    return members


def verify_thm11(space: SpaceSpec, a: float, n_max: int = 256, trials: int = 200,
                 random_degree: int = 64, seed: int = 0, tol: float = _NORM_TOL,
                 threads: int = 1) -> VerificationReport:
    """Bounded-ratio suite for the coefficient-difference inequality.

    Per dyadic degree n: the single mode, the Dirichlet-type and power profiles
    of degree n; seeded random +-1 expansions enter at their own degree.
    """
    params = {"p": space.p, "gamma": space.gamma, "alpha": space.alpha, "a": a,
              "n_max": n_max, "trials": trials, "random_degree": random_degree,
              "seed": seed}
    ok, branch = thm11_admissible(space.p, space.gamma, space.alpha, a)
    if not ok:
        return VerificationReport("thm1.1", params, False, branch, [], 0.0, None,
                                  "inconclusive", [f"inadmissible: {branch}"])
    gamma_factor = math.gamma(space.alpha + 1.0)
    grid = dyadic_grid(n_max)
    jobs: list[tuple[int, str, LaguerreExpansion]] = []
    for n in grid:
        for label, f in family_members(space.alpha, n, 0, seed,
                                       which=("single", "ones", "power")):
            jobs.append((n, label, f))
    for label, f in family_members(space.alpha, random_degree, trials, seed,
                                   which=("random",)):
        jobs.append((random_degree, label, f))

    def ratio_of(job):
        n, label, f = job
        fhat = f.coeffs * gamma_factor
        lhs = thm11_lhs(fhat, space, a)
        rhs = lp_norm(f, space, tol=tol)
        if rhs < 1e-280:
            return (n, label, 0.0, 0.0, None)
        return (n, label, lhs, rhs, lhs / rhs)

    results = _pmap(ratio_of, jobs, threads)
    table = []
    notes = []
    best_overall = (0.0, "")
    for n in grid:
        rows = [r for r in results if r[0] == n and r[4] is not None]
        if not rows:
            continue
        best = max(rows, key=lambda r: r[4])
        table.append((n, best[2], best[3], best[4]))
        if best[4] > best_overall[0]:
            best_overall = (best[4], best[1])
    ratios = [row[3] for row in table]
    fit = fit_exponent([(row[0], row[3]) for row in table]) \
        if len(table) >= 4 and all(r > 0 for r in ratios) else None
    verdict = growth_verdict([row[0] for row in table], ratios)
    notes.append(f"ratio sup attained by {best_overall[1]}")
    return VerificationReport("thm1.1", params, True, branch, table,
                              best_overall[0], fit, verdict, notes)


def thm12_weight_exponent(space: SpaceSpec) -> float:
    return (2.0 * space.gamma + 1.0) / space.p - (2.0 * space.alpha + 1.0) / 2.0


def verify_thm12(m: RealSequence, space: SpaceSpec, a: float, n_max: int = 256,
                 q: Optional[float] = None, tol: float = 1e-9,
                 theorem: str = "thm1.2") -> VerificationReport:
    """Block-norm profile of Delta_2 Delta^a m against the boundedness claim.

    For a multiplier of a bounded operator the weighted dyadic block norms must
    stay bounded; the verdict applies the sustained-growth rule to the profile.
    """
    params = {"p": space.p, "gamma": space.gamma, "alpha": space.alpha, "a": a,
              "n_max": n_max}
    ok, branch = thm12_admissible(space.p, space.gamma, space.alpha, a)
    weight = thm12_weight_exponent(space)

    def diffs(ks):
        return delta2_frac_range(m, a, int(ks[0]), int(ks[-1]), tol)

    profile = block_sup_norm(diffs, weight, space, n_max, q=q)
    table = [(int(n), float(v)) for n, v in zip(profile.n_values, profile.block_norms)]
    pts = [(n, v) for n, v in table if v > 0]
    fit = fit_exponent(pts) if len(pts) >= 4 else None
    if not ok:
        verdict = "inconclusive"
        notes = [f"inadmissible: {branch}"]
    else:
        verdict = growth_verdict([r[0] for r in table], [r[1] for r in table])
        notes = []
    notes.append(f"weight exponent (2 gamma+1)/p - (2 alpha+1)/2 = {weight}")
    return VerificationReport(theorem, params, ok, branch, table, profile.sup,
                              fit, verdict, notes)


def multiplier_lower_bound(m, space: SpaceSpec, trials: int = 16, degree: int = 64,
                           seed: int = 0, tol: float = _NORM_TOL,
                           include_taper: bool = True, threads: int = 1) -> float:
    """Certified lower bound on the multiplier norm: sup of ratios over test functions.

    Families: single modes at dyadic degrees, seeded random expansions, power and
    Dirichlet-type profiles, and smooth tapered profiles (whose norms stay bounded,
    so they witness kernel-norm growth).
    """
    members: list[tuple[str, LaguerreExpansion]] = []
    for j in dyadic_grid(degree):
        members += family_members(space.alpha, j, 0, seed, which=("single",))
        if include_taper and j >= 2:
            members += family_members(space.alpha, j, 0, seed, which=("taper",))
    members += family_members(space.alpha, degree, 0, seed, which=("ones", "power"))
    members += family_members(space.alpha, degree, trials, seed, which=("random",))

    def ratio_of(item):
        _, f = item
        denom = lp_norm(f, space, tol=tol)
        if denom < 1e-280:
            return 0.0
        num = lp_norm(apply_multiplier(m, f), space, tol=tol)
        return num / denom

    ratios = _pmap(ratio_of, members, threads)
    return float(max(ratios)) if ratios else 0.0


def cor14_admissible(p: float, alpha: float, variant: str) -> tuple[bool, str]:
    if variant == "a":
        cond = max(1.0 / (3.0 * p), 0.25) < (alpha + 1.0) * (1.0 / p - 0.5)
        prange = p < (4.0 * alpha + 4.0) / (2.0 * alpha + 3.0)
        return (cond and prange,
                "variant a: max(1/(3p), 1/4) < (alpha+1)(1/p-1/2) and p < (4a+4)/(2a+3)")
    if variant == "b":
        cond = (alpha - 1.0) * (1.0 / p - 0.5) >= -0.5
        prange = p < 4.0 / 3.0
        return (cond and prange,
                "variant b: (alpha-1)(1/p-1/2) >= -1/2 and p < 4/3")
    raise ParameterError(f"variant must be 'a' or 'b', got {variant!r}")


def cor14_weight_exponent(p: float, alpha: float, variant: str) -> float:
    if variant == "a":
        return (2.0 * alpha + 2.0) * (1.0 / p - 0.5) - 0.5
    return 2.0 / p - 1.5


def verify_cor14(m, space: SpaceSpec, variant: str, trials: int = 8,
                 degree: Optional[int] = None, seed: int = 0,
                 threads: int = 1) -> VerificationReport:
    """Single-sequence Cohen-type check: weight * |m_n| against an empirical norm bound."""
    mvals = m.values if isinstance(m, RealSequence) else np.asarray(m, dtype=float)
    if mvals is None:
        raise ParameterError("verify_cor14 needs a finite sequence")
    n = mvals.size - 1
    params = {"p": space.p, "gamma": space.gamma, "alpha": space.alpha,
              "variant": variant, "n": n, "trials": trials, "seed": seed}
    ok, branch = cor14_admissible(space.p, space.alpha, variant)
    expected_gamma = space.alpha if variant == "a" else space.alpha * space.p / 2.0
    if abs(space.gamma - expected_gamma) > 1e-12:
        return VerificationReport("cor1.4", params, False, branch, [], 0.0, None,
                                  "inconclusive",
                                  [f"space gamma must equal {expected_gamma} for variant {variant}"])
    if not ok:
        return VerificationReport("cor1.4", params, False, branch, [], 0.0, None,
                                  "inconclusive", [f"inadmissible: {branch}"])
    if np.all(mvals == 0.0):
        return VerificationReport("cor1.4", params, True, branch, [(n, 0.0, 0.0, 0.0)],
                                  0.0, None, "consistent", ["zero sequence"])
    e = cor14_weight_exponent(space.p, space.alpha, variant)
    lhs = (n + 1.0) ** e * abs(float(mvals[-1]))
    rhs = multiplier_lower_bound(mvals, space, trials=trials,
                                 degree=degree if degree is not None else max(2 * n, 8),
                                 seed=seed, threads=threads)
    ratio = lhs / rhs if rhs > 0 else math.inf
    return VerificationReport("cor1.4", params, True, branch,
                              [(n, lhs, rhs, ratio)], ratio, None, "consistent",
                              ["ratio column is an upper estimate of the constant C"])


def cor14_sweep(make_m: Callable[[int], RealSequence], space: SpaceSpec, variant: str,
                n_max: int = 256, trials: int = 8, seed: int = 0,
                threads: int = 1) -> VerificationReport:
    """verify_cor14 over dyadic sequence lengths, with the growth verdict on C estimates."""
    grid = dyadic_grid(n_max, n_min=2)
    reports = _pmap(lambda n: verify_cor14(make_m(n), space, variant, trials=trials,
                                           seed=seed), grid, threads)
    table = []
    notes = []
    admissible = True
    branch = ""
    for rep in reports:
        branch = rep.branch
        if not rep.admissible:
            return VerificationReport("cor1.4-sweep", rep.params, False, branch, [],
                                      0.0, None, "inconclusive", rep.notes)
        if rep.table:
            table.append(rep.table[0])
    ratios = [row[3] for row in table]
    fit = fit_exponent([(row[0] + 1, row[3]) for row in table]) \
        if len(table) >= 4 and all(r > 0 and math.isfinite(r) for r in ratios) else None
    verdict = growth_verdict([row[0] for row in table], ratios)
    params = {"p": space.p, "gamma": space.gamma, "alpha": space.alpha,
              "variant": variant, "n_max": n_max, "trials": trials, "seed": seed}
    return VerificationReport("cor1.4-sweep", params, admissible, branch, table,
                              max(ratios) if ratios else 0.0, fit, verdict, notes)


@dataclass
class Remark3Result:
    """Paired block profiles for the alternating-sequence counterexample."""

    lam: float
    illustrative: bool
    q_from_p: float
    profiles: dict  # label -> BlockNormProfile
    fits: dict      # label -> ExponentFit
    notes: list

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "illustrative": self.illustrative,
            "q_from_p": None if self.q_from_p == math.inf else self.q_from_p,
            "profiles": {k: {"n": [int(x) for x in v.n_values],
                             "block_norms": list(map(float, v.block_norms))}
                         for k, v in self.profiles.items()},
            "fits": {k: v.to_dict() for k, v in self.fits.items()},
            "notes": list(self.notes),
        }


def counterexample_remark3(epsilon: float, alpha: float, p: float,
                           n_max: int = 4096, tol: float = 1e-9) -> Remark3Result:
    """Block profiles of m_k = (-1)^k k^{-epsilon} under plain and combined differences.

    Profile "plain" weights (k+1) against the first difference (the divergent
    display); profile "delta2" weights (k+1)^lambda against Delta_2
    Delta^{lambda-1} m_k.  Both are computed for the q induced by p and for
    q = inf.
    """
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must be in (0,1), got {epsilon}")
    space = SpaceSpec(p=p, gamma=alpha, alpha=alpha)
    lam = (2.0 * alpha + 1.0) * (1.0 / p - 0.5)
    illustrative = not lam > 1.0

    def rule(ks):
        ks = np.asarray(ks, dtype=float)
        sign = np.where(np.asarray(ks).astype(int) % 2 == 0, 1.0, -1.0)
        return np.where(ks >= 1, sign * np.maximum(ks, 1.0) ** (-epsilon), 0.0)

    m = RealSequence.parametric(rule, bound=2.0 ** epsilon, decay=epsilon,
                                alternating=True)

    def plain_diff(ks):
        return m.window(int(ks[0]), int(ks[-1]) + 1)[:-1] - \
            m.window(int(ks[0]) + 1, int(ks[-1]) + 1)

    def combined_diff(ks):
        return delta2_frac_range(m, lam - 1.0, int(ks[0]), int(ks[-1]), tol)

    qs = {"qp": space.q, "qinf": math.inf}
    profiles: dict[str, BlockNormProfile] = {}
    fits: dict[str, ExponentFit] = {}
    notes = [f"lambda = {lam}"]
    if illustrative:
        notes.append("lambda <= 1: run is illustrative only")
    for qlabel, q in qs.items():
        profiles[f"plain_{qlabel}"] = block_sup_norm(plain_diff, 1.0, space, n_max, q=q)
        profiles[f"delta2_{qlabel}"] = block_sup_norm(combined_diff, lam, space, n_max, q=q)
    for label, prof in profiles.items():
        pts = [(n, v) for n, v in zip(prof.n_values, prof.block_norms) if v > 0]
        if len(pts) >= 4:
            fits[label] = fit_exponent(pts)
    return Remark3Result(lam=lam, illustrative=illustrative, q_from_p=space.q,
                         profiles=profiles, fits=fits, notes=notes)


def verify_thm31(fseq: RealSequence, delta: float, alpha: float, gamma: float,
                 n_synth: int = 64, tol: float = 1e-7, kernel_n_max: int = 256,
                 seed: int = 0, threads: int = 1) -> VerificationReport:
    """Sufficient-condition check: synthesized function norm against the weighted sum.

    Also sweeps the Cesaro kernel L^1 norms over dyadic n and fits their growth
    against the (n+1)^{alpha-gamma} reference.
    """
    params = {"delta": delta, "alpha": alpha, "gamma": gamma,
              "n_synth": n_synth, "kernel_n_max": kernel_n_max}
    K = thm31_K(fseq, delta, alpha, gamma, tol)
    fhat = fseq.window(0, n_synth)
    f = synthesize(fhat, alpha)
    space = SpaceSpec(p=1.0, gamma=gamma, alpha=alpha)
    f_norm = lp_norm(f, space, tol=tol)
    ratio = f_norm / K.value if K.value > 0 else math.inf

    grid = dyadic_grid(kernel_n_max)
    kernel_norms = _pmap(
        lambda n: kernel_l1_norm(CesaroSpec(n=n, delta=delta, alpha=alpha), gamma, tol),
        grid, threads)
    table = [(n, kn, (n + 1.0) ** (alpha - gamma), kn / (n + 1.0) ** (alpha - gamma))
             for n, kn in zip(grid, kernel_norms)]
    fit = fit_exponent(list(zip(grid, kernel_norms))) if len(grid) >= 4 else None
    compensated = [row[3] for row in table]
    if K.condition_ok:
        verdict = growth_verdict(grid, compensated)
    else:
        verdict = "inconclusive"
    notes = [f"K = {K.value} (certified={K.certified}, tail<={K.tail_estimate})",
             f"synthesized ||f||_1 = {f_norm}, ratio ||f||/K = {ratio}",
             K.condition]
    if not K.condition_ok:
        notes.append("outside the sufficient condition: kernel sweep is illustrative")
    params["f_norm"] = f_norm
    params["K_value"] = K.value
    return VerificationReport("thm3.1", params, K.condition_ok, K.condition, table,
                              ratio, fit, verdict, notes)


def verify_thm32(alpha: float, gamma: float, n_max: int = 128, trials: int = 50,
                 random_degree: int = 64, seed: int = 0, tol: float = _NORM_TOL,
                 paired_delta: Optional[float] = None,
                 threads: int = 1) -> VerificationReport:
    """Bounded-ratio suite for the weighted ell^1 necessary condition at p = 1."""
    params = {"alpha": alpha, "gamma": gamma, "n_max": n_max, "trials": trials,
              "random_degree": random_degree, "seed": seed}
    probe = thm32_lhs(np.array([1.0]), alpha, gamma)
    if not probe.condition_ok:
        return VerificationReport("thm3.2", params, False, probe.condition, [], 0.0,
                                  None, "inconclusive",
                                  [f"inadmissible: {probe.condition}"])
    gamma_factor = math.gamma(alpha + 1.0)
    space = SpaceSpec(p=1.0, gamma=gamma, alpha=alpha)
    grid = dyadic_grid(n_max)
    jobs = []
    for n in grid:
        for label, f in family_members(alpha, n, 0, seed, which=("single", "ones", "power")):
            jobs.append((n, label, f))
    for label, f in family_members(alpha, random_degree, trials, seed, which=("random",)):
        jobs.append((random_degree, label, f))

    def ratio_of(job):
        n, label, f = job
        lhs = thm32_lhs(f.coeffs * gamma_factor, alpha, gamma, tol).value
        rhs = lp_norm(f, space, tol=tol)
        if rhs < 1e-280:
            return (n, label, 0.0, 0.0, None)
        return (n, label, lhs, rhs, lhs / rhs)

    results = _pmap(ratio_of, jobs, threads)
    table = []
    best_overall = (0.0, "")
    for n in grid:
        rows = [r for r in results if r[0] == n and r[4] is not None]
        if not rows:
            continue
        best = max(rows, key=lambda r: r[4])
        table.append((n, best[2], best[3], best[4]))
        if best[4] > best_overall[0]:
            best_overall = (best[4], best[1])
    ratios = [row[3] for row in table]
    fit = fit_exponent([(row[0], row[3]) for row in table]) \
        if len(table) >= 4 and all(r > 0 for r in ratios) else None
    verdict = growth_verdict([row[0] for row in table], ratios)
    notes = [f"ratio sup attained by {best_overall[1]}"]
    if paired_delta is not None:
        gap = (paired_delta + 1.0) - (2.0 * gamma - alpha + 1.0 / 3.0)
        notes.append(
            f"smoothness gap (delta+1) - (2 gamma - alpha + 1/3) = {gap} "
            f"(reference level 7/6 = {7.0 / 6.0})")
    return VerificationReport("thm3.2", params, True, probe.condition, table,
                              best_overall[0], fit, verdict, notes)
