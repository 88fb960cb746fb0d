"""Command-line surface: coefficient maps, positivity verdicts, spectra of
both operator classes, and the unitary-equivalence check.

JSON is the machine interface (schema "hankelscope/1", reals serialized with
17 significant digits); CSV is emitted only for eigenvalue lists. Identical
configurations produce bit-identical output (fixed seeds, fixed solver
order). Exit codes: 0 success, 2 validation error, 3 numerical-convergence
failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .coeff_map import QuasiCarlemanKernel, p_to_q, q_to_p
from .delta_spectra import DeltaKernel, delta_spectrum, exact_delta_prime_eigs, weyl_prediction
from .discretization import (build_a_matrix, build_hankel_matrix, eigen_sym,
                             form_identity_check, spectral_rules,
                             test_function_factory)
from .errors import ConvergenceError, HankelscopeError
from .polynomials import RealPolynomial, is_nonnegative_on_reals
from .transforms import LogGrid

SCHEMA = "hankelscope/1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CONVERGENCE = 3

COMMANDS = ("pq", "qp", "positivity", "spectrum-hankel", "spectrum-a",
            "equiv-check", "delta-eigs", "carleman")


@dataclass
class RunConfig:
    """Validated invocation parameters for one CLI command."""

    command: str
    coefficients: list[float] = field(default_factory=list)
    t0: float = 1.0
    L: float = 12.0
    N: int = 1024
    n_max: int = 10
    seeds: tuple[int, int] = (11, 12)
    output: str | None = None
    fmt: str = "json"


def _format_real(x: float) -> str:
    if isinstance(x, float) and (math.isnan(x) or math.isinf(x)):
        return '"%s"' % repr(x)
    return format(float(x), ".17g")


def _dumps(obj, indent: int = 0) -> str:
    """Deterministic JSON with all reals at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(f'{inner}"{k}": {_dumps(v, indent + 1)}' for k, v in obj.items())
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        items = ",\n".join(f"{inner}{_dumps(v, indent + 1)}" for v in seq)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_real(float(obj))
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _emit(payload: dict, config: RunConfig) -> None:
    text = _dumps(payload) + "\n"
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(rows: list[tuple[float, float]], header: str, config: RunConfig) -> None:
    lines = [header] + [f"{_format_real(lam)},{_format_real(res)}" for lam, res in rows]
    text = "\n".join(lines) + "\n"
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_reals(text: str, flag: str) -> list[float]:
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise HankelscopeError(f"malformed coefficient list for {flag}: {text!r}")
    if not vals or not all(math.isfinite(v) for v in vals):
        raise HankelscopeError(f"coefficients for {flag} must be finite reals")
    return vals


def _require_pow2(n: int) -> None:
    if n < 2 or (n & (n - 1)) != 0:
        raise HankelscopeError(f"--N must be a power of two for FFT-based commands, got {n}")


def _spectrum_payload(report, extra_meta=None) -> dict:
    payload = {
        "eigenvalues": [float(v) for v in report.eigenvalues],
        "residual_max": float(np.max(report.residuals)) if report.residuals.size else 0.0,
        "grid": {k: report.grid_meta[k] for k in ("L", "N") if k in report.grid_meta},
    }
    if extra_meta:
        payload.update(extra_meta)
    return payload


def _cmd_pq(config: RunConfig) -> dict:
    p = RealPolynomial(np.array(config.coefficients))
    q = p_to_q(p)
    return {
        "schema": SCHEMA, "command": "pq",
        "input": {"p_coeffs": list(p.coeffs)},
        "q_coeffs": list(q.coeffs),
        "paper_refs": ["coefficient-map-triangular"],
    }


def _cmd_qp(config: RunConfig) -> dict:
    q = RealPolynomial(np.array(config.coefficients))
    p = q_to_p(q)
    return {
        "schema": SCHEMA, "command": "qp",
        "input": {"q_coeffs": list(q.coeffs)},
        "p_coeffs": list(p.coeffs),
        "paper_refs": ["coefficient-map-inverse-laplace"],
    }


def _cmd_positivity(config: RunConfig) -> dict:
    p = RealPolynomial(np.array(config.coefficients))
    q = p_to_q(p)
    cert = is_nonnegative_on_reals(q)
    k = p.degree
    if k >= 1 and (k % 2 == 1 or p.leading > 0.0):
        ess = "R" if k % 2 == 1 else "[0,inf)"
    else:
        ess = "unknown"
    return {
        "schema": SCHEMA, "command": "positivity",
        "input": {"p_coeffs": list(p.coeffs)},
        "q_coeffs": list(q.coeffs),
        "positivity": {
            "verdict": cert.nonnegative,
            "certificate": {
                "method": cert.method,
                "witness": cert.witness,
                "witness_value": cert.witness_value,
                "distinct_real_roots": cert.distinct_real_roots,
                "all_roots_even_multiplicity": cert.all_roots_even_multiplicity,
                "detail": cert.detail,
            },
        },
        "essential_spectrum": ess,
        "paper_refs": ["positivity-iff-symbol-nonnegative",
                       "essential-spectrum-by-degree-parity"],
    }


def _cmd_spectrum_hankel(config: RunConfig) -> dict:
    _require_pow2(config.N)
    p = RealPolynomial(np.array(config.coefficients))
    grid = LogGrid(L=config.L, N=config.N)
    report = spectral_rules(p, eigen_sym(build_hankel_matrix(QuasiCarlemanKernel(p), grid)))
    payload = {
        "schema": SCHEMA, "command": "spectrum-hankel",
        "input": {"p_coeffs": list(p.coeffs)},
        "q_coeffs": list(p_to_q(p).coeffs),
    }
    payload.update(_spectrum_payload(report))
    payload["positivity"] = {"verdict": report.verdicts["positivity"]}
    cert = report.extras.get("positivity_certificate")
    if cert is not None:
        payload["positivity"]["certificate"] = {
            "method": cert.method, "witness": cert.witness,
            "witness_value": cert.witness_value,
            "distinct_real_roots": cert.distinct_real_roots,
            "all_roots_even_multiplicity": cert.all_roots_even_multiplicity,
        }
    payload["essential_spectrum"] = report.verdicts["essential_spectrum"]
    payload["min_eigenvalue"] = report.extras["min_eigenvalue"]
    payload["max_eigenvalue"] = report.extras["max_eigenvalue"]
    payload["negative_count"] = report.extras["negative_count"]
    payload["paper_refs"] = ["nystrom-log-variable-model",
                             "essential-spectrum-by-degree-parity",
                             "positivity-iff-symbol-nonnegative"]
    return payload


def _cmd_spectrum_a(config: RunConfig) -> dict:
    _require_pow2(config.N)
    q = RealPolynomial(np.array(config.coefficients))
    grid = LogGrid(L=config.L, N=config.N)
    report = eigen_sym(build_a_matrix(q, grid))
    payload = {
        "schema": SCHEMA, "command": "spectrum-a",
        "input": {"q_coeffs": list(q.coeffs)},
    }
    payload.update(_spectrum_payload(report))
    payload["paper_refs"] = ["weighted-differential-model"]
    return payload


def _cmd_equiv_check(config: RunConfig) -> dict:
    _require_pow2(config.N)
    p = RealPolynomial(np.array(config.coefficients))
    grid = LogGrid(L=config.L, N=config.N)
    f1 = test_function_factory(config.seeds[0], grid)
    f2 = test_function_factory(config.seeds[1], grid)
    chk = form_identity_check(p, f1, f2, grid)
    if chk.violation:
        raise ConvergenceError(
            f"identity gap {chk.relative_gap:.3e} above the adequacy threshold 1e-3")
    return {
        "schema": SCHEMA, "command": "equiv-check",
        "input": {"p_coeffs": list(p.coeffs), "seeds": list(config.seeds)},
        "lhs": {"re": chk.lhs.real, "im": chk.lhs.imag},
        "rhs": {"re": chk.rhs.real, "im": chk.rhs.imag},
        "relative_gap": chk.relative_gap,
        "grid": {"L": config.L, "N": config.N},
        "paper_refs": ["quadratic-form-unitary-equivalence"],
    }


def _cmd_delta_eigs(config: RunConfig):
    kernel = DeltaKernel(np.array(config.coefficients), config.t0)
    report = delta_spectrum(kernel, config.N, config.n_max)
    if config.fmt == "csv":
        rows = list(zip(report.eigenvalues, report.residuals))
        return None, rows
    payload = {
        "schema": SCHEMA, "command": "delta-eigs",
        "input": {"h_coeffs": list(kernel.h_coeffs), "t0": kernel.t0},
        "eigenvalues": [float(v) for v in report.eigenvalues],
        "residual_max": float(np.max(report.residuals)),
        "lambda_plus": [float(v) for v in report.extras["lambda_plus"]],
        "lambda_minus": [float(v) for v in report.extras["lambda_minus"]],
        "grid": {"t0": kernel.t0, "N": config.N},
        "paper_refs": ["reflection-operator-spectrum",
                       "weyl-eigenvalue-asymptotics"],
    }
    if kernel.order == 1 and kernel.h_coeffs[0] == 0.0:
        payload["exact_first_pair"] = list(exact_delta_prime_eigs(kernel.t0, 1))
    if kernel.order >= 1:
        payload["weyl_first_pair"] = list(weyl_prediction(kernel, 1))
    return payload, None


def _cmd_carleman(config: RunConfig) -> dict:
    _require_pow2(config.N)
    p = RealPolynomial(np.array([1.0]))
    grid = LogGrid(L=config.L, N=config.N)
    report = eigen_sym(build_hankel_matrix(QuasiCarlemanKernel(p), grid))
    lam_max = float(report.eigenvalues[-1])
    return {
        "schema": SCHEMA, "command": "carleman",
        "max_eigenvalue": lam_max,
        "min_eigenvalue": float(report.eigenvalues[0]),
        "gap": abs(lam_max - math.pi),
        "residual_max": float(np.max(report.residuals)),
        "grid": {"L": config.L, "N": config.N},
        "paper_refs": ["carleman-multiplier-bound"],
    }


def run(config: RunConfig) -> int:
    """Dispatch one validated configuration; returns the process exit code."""
    try:
        if config.command == "delta-eigs":
            payload, rows = _cmd_delta_eigs(config)
            if rows is not None:
                _emit_csv(rows, "eigenvalue,residual", config)
            else:
                _emit(payload, config)
            return EXIT_OK
        handler = {
            "pq": _cmd_pq, "qp": _cmd_qp, "positivity": _cmd_positivity,
            "spectrum-hankel": _cmd_spectrum_hankel, "spectrum-a": _cmd_spectrum_a,
            "equiv-check": _cmd_equiv_check, "carleman": _cmd_carleman,
        }[config.command]
        _emit(handler(config), config)
        return EXIT_OK
    except ConvergenceError as exc:
        sys.stderr.write(f"convergence failure: {exc}\n")
        return EXIT_CONVERGENCE
    except HankelscopeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hankelscope",
        description="Spectral toolkit for log-polynomial and point-supported "
                    "Hankel kernels")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_grid(sp):
        sp.add_argument("--L", type=float, default=12.0, help="log-grid half-width")
        sp.add_argument("--N", type=int, default=1024, help="sample count (power of two)")

    sp = sub.add_parser("pq", help="map kernel-profile coefficients to the symbol")
    sp.add_argument("--p", required=True, help="comma-separated profile coefficients")
    sp = sub.add_parser("qp", help="map symbol coefficients back to the profile")
    sp.add_argument("--q", required=True, help="comma-separated symbol coefficients")
    sp = sub.add_parser("positivity", help="positivity and essential-spectrum verdicts")
    sp.add_argument("--p", required=True)
    sp = sub.add_parser("spectrum-hankel", help="spectrum of the log-kernel integral model")
    sp.add_argument("--p", required=True)
    add_grid(sp)
    sp = sub.add_parser("spectrum-a", help="spectrum of the weighted differential model")
    sp.add_argument("--q", required=True)
    add_grid(sp)
    sp = sub.add_parser("equiv-check", help="quadratic-form identity check on seeded test functions")
    sp.add_argument("--p", required=True)
    sp.add_argument("--seeds", default="11,12", help="two integer seeds")
    add_grid(sp)
    sp = sub.add_parser("delta-eigs", help="collocation spectrum of a point-supported kernel")
    sp.add_argument("--h", required=True, help="comma-separated delta-derivative weights")
    sp.add_argument("--t0", type=float, default=1.0)
    sp.add_argument("--N", type=int, default=64)
    sp.add_argument("--n-max", type=int, default=10)
    sp = sub.add_parser("carleman", help="reference run for the reciprocal kernel")
    sp.add_argument("--L", type=float, default=14.0)
    sp.add_argument("--N", type=int, default=2048)

    for name, action in sub.choices.items():
        action.add_argument("--output", default=None, help="write to file instead of stdout")
        action.add_argument("--format", dest="fmt", choices=("json", "csv"),
                            default="csv" if name == "delta-eigs" else "json")
    return parser


_VALUE_FLAGS = ("--p", "--q", "--h", "--seeds")


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join '--p -1,2' into '--p=-1,2' so coefficient lists may start with a
    minus sign without confusing the option tokenizer."""
    merged = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            merged.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            merged.append(tok)
    return merged


def parse_args(argv=None) -> RunConfig:
    if argv is None:
        argv = sys.argv[1:]
    args = _build_parser().parse_args(_merge_negative_values(list(argv)))
    coeff_flag = {"pq": "--p", "qp": "--q", "positivity": "--p",
                  "spectrum-hankel": "--p", "spectrum-a": "--q",
                  "equiv-check": "--p", "delta-eigs": "--h"}
    config = RunConfig(command=args.command, output=args.output, fmt=args.fmt)
    if args.command in coeff_flag:
        raw = getattr(args, coeff_flag[args.command].lstrip("-"))
        config.coefficients = _parse_reals(raw, coeff_flag[args.command])
    if hasattr(args, "L"):
        config.L = args.L
    if hasattr(args, "N"):
        config.N = args.N
    if hasattr(args, "t0"):
        config.t0 = args.t0
    if hasattr(args, "n_max"):
        config.n_max = args.n_max
    if hasattr(args, "seeds"):
        s = [int(tok) for tok in args.seeds.split(",")]
        if len(s) != 2:
            raise HankelscopeError("--seeds needs exactly two integers")
        config.seeds = (s[0], s[1])
    return config


def main(argv=None) -> int:
    try:
        config = parse_args(argv)
    except HankelscopeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
