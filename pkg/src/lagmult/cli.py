"""Batch front end: run verifications, sweep parameters, emit CSV/JSON reports.

Exit codes: 0 = success/consistent, 2 = verdict violated, 3 = inconclusive,
64 = usage error.  A key=value config file can supply defaults; explicit flags
win.  Output is bitwise identical for a fixed seed at any --threads value.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import harness
from .cesaro import CesaroSpec, cesaro_multiplier, kernel_l1_norm
from .differences import RealSequence
from .errors import ConvergenceError, DomainError, ParameterError, TailNotCertifiable
from .harness import VerificationReport, fit_exponent
from .norms import SpaceSpec
from .quadrature import gauss_laguerre
from .transform import LaguerreExpansion, analyze

EXIT_OK = 0
EXIT_VIOLATED = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64

_VERDICT_EXIT = {"consistent": EXIT_OK, "violated": EXIT_VIOLATED,
                 "inconclusive": EXIT_INCONCLUSIVE}

COMMANDS = ("quadrule", "coeffs", "thm11", "thm12", "cor13", "cor14",
            "remark3", "thm31", "thm32", "kernel-norms", "mult-lower", "fit")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated parameters of one batch run."""

    command: str
    alpha: float = 0.0
    gamma: float = 0.0
    p: float = 1.0
    a: float = 0.0
    delta: Optional[float] = None
    epsilon: Optional[float] = None
    s: float = 1.0
    order: int = 8
    n_max: int = 256
    degree: int = 64
    trials: int = 16
    seed: int = 0
    tol: float = 1e-7
    threads: int = 1
    variant: str = "a"
    multiplier: str = "cesaro"
    profile: str = "ones"
    target_alpha: Optional[float] = None
    paired_delta: Optional[float] = None
    fseq: str = "e0"
    input: Optional[str] = None
    x_col: int = 0
    y_col: int = 1
    out_path: Optional[str] = None
    format: str = "csv"


def _fmt(x) -> str:
    """Floating point with 17 significant digits ('.' decimal separator)."""
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    return str(x)


def _json_dump(obj, chunks: list) -> None:
    if obj is None:
        chunks.append("null")
    elif obj is True:
        chunks.append("true")
    elif obj is False:
        chunks.append("false")
    elif isinstance(obj, float):
        if math.isfinite(obj):
            chunks.append(_fmt(obj))
        else:
            chunks.append(f'"{_fmt(obj)}"')
    elif isinstance(obj, (int, np.integer)):
        chunks.append(str(int(obj)))
    elif isinstance(obj, str):
        chunks.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, dict):
        chunks.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                chunks.append(", ")
            _json_dump(str(k), chunks)
            chunks.append(": ")
            _json_dump(v, chunks)
        chunks.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        chunks.append("[")
        for i, v in enumerate(obj):
            if i:
                chunks.append(", ")
            _json_dump(float(v) if isinstance(v, np.floating) else v, chunks)
        chunks.append("]")
    elif isinstance(obj, np.floating):
        _json_dump(float(obj), chunks)
    else:
        raise TypeError(f"cannot serialize {type(obj)}")


def json_dumps(obj) -> str:
    chunks: list = []
    _json_dump(obj, chunks)
    return "".join(chunks)


def _write_text(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


def _csv_text(header: list, rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) if isinstance(x, float) else str(x) for x in row])
    return buf.getvalue()


def emit_report(report: VerificationReport, fmt: str, path: Optional[str]) -> None:
    """Write one verification report as CSV (table only) or JSON (all fields)."""
    if fmt == "json":
        _write_text(json_dumps(report.to_dict()) + "\n", path)
        return
    if report.table and len(report.table[0]) == 2:
        text = _csv_text(["n", "block_norm"], report.table)
    else:
        text = _csv_text(["n", "lhs", "rhs", "ratio"], report.table)
    _write_text(text, path)


def _make_multiplier(cfg: RunConfig, n: int) -> RealSequence:
    """Finite multiplier sequence of length n+1 selected by --multiplier."""
    kind = cfg.multiplier
    if kind == "cesaro":
        if cfg.delta is None:
            raise UsageError("--multiplier cesaro requires --delta")
        return cesaro_multiplier(CesaroSpec(n=n, delta=cfg.delta, alpha=cfg.alpha))
    if kind == "spike":
        v = np.zeros(n + 1)
        v[n] = 1.0
        return RealSequence.finite(v)
    if kind == "ones":
        return RealSequence.finite(np.ones(n + 1))
    if kind == "alternating":
        if cfg.epsilon is None:
            raise UsageError("--multiplier alternating requires --epsilon")
        k = np.arange(n + 1, dtype=float)
        vals = np.where(k >= 1, (-1.0) ** (k % 2) * np.maximum(k, 1.0) ** (-cfg.epsilon), 0.0)
        return RealSequence.finite(vals)
    if kind == "power":
        k = np.arange(n + 1, dtype=float)
        return RealSequence.finite((k + 1.0) ** (-cfg.s))
    raise UsageError(f"unknown --multiplier {kind!r}")


def _make_profile(cfg: RunConfig) -> LaguerreExpansion:
    """Test function selected by --profile, at basis index --alpha."""
    d = cfg.degree
    if cfg.profile == "ones":
        return LaguerreExpansion(cfg.alpha, np.ones(d + 1))
    if cfg.profile == "single":
        c = np.zeros(d + 1)
        c[d] = 1.0
        return LaguerreExpansion(cfg.alpha, c)
    if cfg.profile == "power":
        return LaguerreExpansion(cfg.alpha, (np.arange(d + 1) + 1.0) ** (-cfg.s))
    if cfg.profile == "random":
        rng = np.random.default_rng((cfg.seed, d, 0))
        return LaguerreExpansion(cfg.alpha, rng.choice([-1.0, 1.0], size=d + 1))
    raise UsageError(f"unknown --profile {cfg.profile!r}")


def _make_fseq(cfg: RunConfig) -> RealSequence:
    if cfg.fseq == "e0":
        return RealSequence.finite([1.0])
    if cfg.fseq.startswith("power:"):
        s = float(cfg.fseq.split(":", 1)[1])
        k = np.arange(cfg.n_max + 65, dtype=float)
        return RealSequence.finite((k + 1.0) ** (-s))
    raise UsageError(f"unknown --fseq {cfg.fseq!r} (use e0 or power:S)")


# ---------------------------------------------------------------- commands


def _cmd_quadrule(cfg: RunConfig) -> int:
    rule = gauss_laguerre(cfg.order, cfg.alpha)
    if cfg.format == "json":
        _write_text(json_dumps({"alpha": rule.alpha, "order": rule.order,
                                "nodes": rule.nodes, "weights": rule.weights}) + "\n",
                    cfg.out_path)
    else:
        _write_text(_csv_text(["node", "weight"],
                              list(zip(rule.nodes.tolist(), rule.weights.tolist()))),
                    cfg.out_path)
    return EXIT_OK


def _cmd_coeffs(cfg: RunConfig) -> int:
    f = _make_profile(cfg)
    target = cfg.alpha if cfg.target_alpha is None else cfg.target_alpha
    coeffs = analyze(f, target, cfg.n_max)
    if cfg.format == "json":
        _write_text(json_dumps({"alpha": target, "coeffs": coeffs}) + "\n", cfg.out_path)
    else:
        _write_text(_csv_text(["k", "coeff"], list(enumerate(coeffs.tolist()))),
                    cfg.out_path)
    return EXIT_OK


def _cmd_thm11(cfg: RunConfig) -> int:
    space = SpaceSpec(p=cfg.p, gamma=cfg.gamma, alpha=cfg.alpha)
    rep = harness.verify_thm11(space, cfg.a, n_max=cfg.n_max, trials=cfg.trials,
                               random_degree=cfg.degree, seed=cfg.seed,
                               threads=cfg.threads)
    emit_report(rep, cfg.format, cfg.out_path)
    return _VERDICT_EXIT[rep.verdict]


def _cmd_thm12(cfg: RunConfig) -> int:
    space = SpaceSpec(p=cfg.p, gamma=cfg.gamma, alpha=cfg.alpha)
    m = _make_multiplier(cfg, cfg.n_max * 2 + 2)
    rep = harness.verify_thm12(m, space, cfg.a, n_max=cfg.n_max)
    emit_report(rep, cfg.format, cfg.out_path)
    return _VERDICT_EXIT[rep.verdict]


def _cmd_cor13(cfg: RunConfig) -> int:
    if cfg.variant == "a":
        lam = (2.0 * cfg.alpha + 1.0) * (1.0 / cfg.p - 0.5)
        space = SpaceSpec(p=cfg.p, gamma=cfg.alpha, alpha=cfg.alpha)
        a = lam - 1.0
        theorem = "cor1.3a"
    elif cfg.variant == "b":
        space = SpaceSpec(p=cfg.p, gamma=cfg.alpha * cfg.p / 2.0, alpha=cfg.alpha)
        a = 0.0
        theorem = "cor1.3b"
    else:
        raise UsageError(f"--variant must be a or b, got {cfg.variant!r}")
    m = _make_multiplier(cfg, cfg.n_max * 2 + 2)
    rep = harness.verify_thm12(m, space, a, n_max=cfg.n_max, theorem=theorem)
    emit_report(rep, cfg.format, cfg.out_path)
    return _VERDICT_EXIT[rep.verdict]


def _cmd_cor14(cfg: RunConfig) -> int:
    gamma = cfg.alpha if cfg.variant == "a" else cfg.alpha * cfg.p / 2.0
    space = SpaceSpec(p=cfg.p, gamma=gamma, alpha=cfg.alpha)
    rep = harness.cor14_sweep(lambda n: _make_multiplier(cfg, n), space, cfg.variant,
                              n_max=cfg.n_max, trials=cfg.trials, seed=cfg.seed,
                              threads=cfg.threads)
    emit_report(rep, cfg.format, cfg.out_path)
    return _VERDICT_EXIT[rep.verdict]


def _cmd_remark3(cfg: RunConfig) -> int:
    if cfg.epsilon is None:
        raise UsageError("remark3 requires --epsilon")
    res = harness.counterexample_remark3(cfg.epsilon, cfg.alpha, cfg.p,
                                         n_max=cfg.n_max)
    if cfg.format == "json":
        _write_text(json_dumps(res.to_dict()) + "\n", cfg.out_path)
        return EXIT_OK
    pa = res.profiles["plain_qp"]
    pb = res.profiles["delta2_qp"]
    rows = [(int(n), float(va), float(vb))
            for n, va, vb in zip(pa.n_values, pa.block_norms, pb.block_norms)]
    text = _csv_text(["n", "block_norm_plain", "block_norm_delta2"], rows)
    _write_text(text, cfg.out_path)
    if cfg.out_path is not None:
        _write_text(json_dumps(res.to_dict()) + "\n", cfg.out_path + ".json")
    return EXIT_OK


def _cmd_thm31(cfg: RunConfig) -> int:
    if cfg.delta is None:
        raise UsageError("thm31 requires --delta")
    rep = harness.verify_thm31(_make_fseq(cfg), cfg.delta, cfg.alpha, cfg.gamma,
                               n_synth=cfg.degree, tol=cfg.tol,
                               kernel_n_max=cfg.n_max, threads=cfg.threads)
    emit_report(rep, cfg.format, cfg.out_path)
    return _VERDICT_EXIT[rep.verdict]


def _cmd_thm32(cfg: RunConfig) -> int:
    rep = harness.verify_thm32(cfg.alpha, cfg.gamma, n_max=cfg.n_max,
                               trials=cfg.trials, random_degree=cfg.degree,
                               seed=cfg.seed, paired_delta=cfg.paired_delta,
                               threads=cfg.threads)
    emit_report(rep, cfg.format, cfg.out_path)
    return _VERDICT_EXIT[rep.verdict]


def _cmd_kernel_norms(cfg: RunConfig) -> int:
    if cfg.delta is None:
        raise UsageError("kernel-norms requires --delta")
    grid = harness.dyadic_grid(cfg.n_max)
    norms = harness._pmap(
        lambda n: kernel_l1_norm(CesaroSpec(n=n, delta=cfg.delta, alpha=cfg.alpha),
                                 cfg.gamma, cfg.tol),
        grid, cfg.threads)
    ref = [(n + 1.0) ** (cfg.alpha - cfg.gamma) for n in grid]
    table = [(n, kn, r, kn / r) for n, kn, r in zip(grid, norms, ref)]
    fit = fit_exponent(list(zip(grid, norms))) if len(grid) >= 4 else None
    condition_ok = cfg.delta > 2.0 * cfg.gamma - cfg.alpha + 0.5 >= 0.0
    verdict = harness.growth_verdict(grid, [row[3] for row in table]) \
        if condition_ok else "inconclusive"
    rep = VerificationReport(
        "kernel-norms",
        {"alpha": cfg.alpha, "gamma": cfg.gamma, "delta": cfg.delta, "n_max": cfg.n_max},
        condition_ok,
        f"delta > 2 gamma - alpha + 1/2 >= 0: {cfg.delta} > {2 * cfg.gamma - cfg.alpha + 0.5}",
        table, max(row[3] for row in table), fit, verdict,
        ["rhs column is the reference growth (n+1)^(alpha-gamma)"])
    emit_report(rep, cfg.format, cfg.out_path)
    return _VERDICT_EXIT[rep.verdict]


def _cmd_mult_lower(cfg: RunConfig) -> int:
    space = SpaceSpec(p=cfg.p, gamma=cfg.gamma, alpha=cfg.alpha)
    grid = harness.dyadic_grid(cfg.n_max, n_min=2)
    bounds = harness._pmap(
        lambda n: harness.multiplier_lower_bound(
            _make_multiplier(cfg, n), space, trials=cfg.trials,
            degree=max(2 * n, 8), seed=cfg.seed),
        grid, cfg.threads)
    table = [(n, b, 1.0, b) for n, b in zip(grid, bounds)]
    fit = fit_exponent([(n + 1, b) for n, b in zip(grid, bounds)]) \
        if len(grid) >= 4 and all(b > 0 for b in bounds) else None
    rep = VerificationReport(
        "mult-lower",
        {"p": cfg.p, "gamma": cfg.gamma, "alpha": cfg.alpha,
         "multiplier": cfg.multiplier, "delta": cfg.delta, "n_max": cfg.n_max,
         "trials": cfg.trials, "seed": cfg.seed},
        True, "empirical lower bound on the multiplier norm", table,
        max(bounds) if bounds else 0.0, fit, "consistent",
        ["lhs/ratio columns hold the certified lower bound"])
    emit_report(rep, cfg.format, cfg.out_path)
    return EXIT_OK


def _cmd_fit(cfg: RunConfig) -> int:
    if cfg.input is None:
        raise UsageError("fit requires --input CSV")
    with open(cfg.input, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    pts = []
    for row in rows[1:]:
        try:
            pts.append((float(row[cfg.x_col]), float(row[cfg.y_col])))
        except (ValueError, IndexError) as exc:
            raise UsageError(f"bad CSV row {row!r}: {exc}") from exc
    f = fit_exponent(pts)
    _write_text(json_dumps(f.to_dict()) + "\n", cfg.out_path)
    return EXIT_OK


_DISPATCH = {
    "quadrule": _cmd_quadrule,
    "coeffs": _cmd_coeffs,
    "thm11": _cmd_thm11,
    "thm12": _cmd_thm12,
    "cor13": _cmd_cor13,
    "cor14": _cmd_cor14,
    "remark3": _cmd_remark3,
    "thm31": _cmd_thm31,
    "thm32": _cmd_thm32,
    "kernel-norms": _cmd_kernel_norms,
    "mult-lower": _cmd_mult_lower,
    "fit": _cmd_fit,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="lagmult", description=__doc__)
    parser.add_argument("--config", help="key=value file supplying defaults")
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=argparse.SUPPRESS)
        p.add_argument("--alpha", type=float)
        p.add_argument("--gamma", type=float)
        p.add_argument("--p", type=float)
        p.add_argument("--a", type=float)
        p.add_argument("--delta", type=float)
        p.add_argument("--epsilon", type=float)
        p.add_argument("--s", type=float)
        p.add_argument("--order", type=int)
        p.add_argument("--n-max", type=int)
        p.add_argument("--degree", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--threads", type=int)
        p.add_argument("--variant", choices=("a", "b"))
        p.add_argument("--multiplier",
                       choices=("cesaro", "spike", "ones", "alternating", "power"))
        p.add_argument("--profile", choices=("ones", "single", "power", "random"))
        p.add_argument("--target-alpha", type=float)
        p.add_argument("--paired-delta", type=float)
        p.add_argument("--fseq")
        p.add_argument("--input")
        p.add_argument("--x-col", type=int)
        p.add_argument("--y-col", type=int)
        p.add_argument("--out")
        p.add_argument("--format", choices=("csv", "json"))
    return parser


def _load_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
                key, value = line.split("=", 1)
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return values


_FIELD_TYPES = {
    "alpha": float, "gamma": float, "p": float, "a": float, "delta": float,
    "epsilon": float, "s": float, "order": int, "n_max": int, "degree": int,
    "trials": int, "seed": int, "tol": float, "threads": int, "variant": str,
    "multiplier": str, "profile": str, "target_alpha": float,
    "paired_delta": float, "fseq": str, "input": str, "x_col": int,
    "y_col": int, "out": str, "format": str,
}


def build_config(args: argparse.Namespace, file_values: dict) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for key, caster in _FIELD_TYPES.items():
        dest = "out_path" if key == "out" else key
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            setattr(cfg, dest, flag_value)
        elif key in file_values:
            try:
                setattr(cfg, dest, caster(file_values[key]))
            except ValueError as exc:
                raise UsageError(f"config value for {key}: {exc}") from exc
    unknown = set(file_values) - set(_FIELD_TYPES)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return cfg


def run(argv) -> int:
    """Parse argv, dispatch, and return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(f"missing subcommand (one of {', '.join(COMMANDS)})")
        config_path = getattr(args, "config", None)
        file_values = _load_config_file(config_path) if config_path else {}
        cfg = build_config(args, file_values)
        return _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, DomainError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, TailNotCertifiable) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
