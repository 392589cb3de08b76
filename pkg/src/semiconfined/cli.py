"""Command-line front end: ``semiconfined <command> [options]``.

Exit status is 0 when every gated check passes, 1 when a check fails (the
failing reports are still written) and 2 for usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import algebra, limits, moments, oracle
from .model import ModelKind, OscillatorParams, energy
from .report import CheckReport, reports_to_json, write_csv
from .states import WaveState, eval_state

__all__ = ["build_parser", "run", "main"]


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _n_range(text: str) -> range:
    try:
        lo, hi = (int(v) for v in text.split(".."))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from exc
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return range(lo, hi + 1)


def _global_flags(parser: argparse.ArgumentParser, suppress: bool, with_a: bool = True) -> None:
    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--m0", type=float, default=d(1.0))
    parser.add_argument("--omega", type=float, default=d(1.0))
    parser.add_argument("--hbar", type=float, default=d(1.0))
    if with_a:
        parser.add_argument("--a", type=float, default=d(1.0), help="confinement length")
    parser.add_argument("--format", choices=("csv", "json"), default=d("csv"))
    parser.add_argument("--seed", type=int, default=d(0), help="reserved; the pipeline is deterministic")
    parser.add_argument("--out", default=d(None), help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semiconfined", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    # `limits --a` takes a list; the scalar --a is still accepted before the command
    common_no_a = argparse.ArgumentParser(add_help=False)
    _global_flags(common_no_a, suppress=True, with_a=False)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("params", parents=[common], help="derived constants")

    p = sub.add_parser("eval", parents=[common], help="state value and derivatives")
    p.add_argument("--model", choices=[m.value for m in ModelKind], default=ModelKind.SEMICONFINED.value)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_float_list, required=True)

    p = sub.add_parser("spectrum", parents=[common], help="exact energies")
    p.add_argument("--n-max", type=int, default=5)

    p = sub.add_parser("verify", parents=[common], help="verification suites")
    p.add_argument("suite", choices=("algebra", "identities", "factorization", "commutators", "heisenberg"))
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--alpha", type=_float_list, default=[1.5, 2.0, 8.0, 50.0])

    p = sub.add_parser("uncertainty", parents=[common], help="moment tables")
    p.add_argument("--n-range", type=_n_range, default=range(0, 6))
    p.add_argument("--mode", choices=("closed", "quadrature"), default="closed")

    p = sub.add_parser("limits", parents=[common_no_a], help="large-a convergence tables")
    p.add_argument("--a", "--a-list", dest="a_list", type=_float_list, default=[2.0, 4.0, 8.0, 16.0],
                   help="increasing confinement lengths (comma separated)")
    p.add_argument("--nmax", type=int, default=3)

    p = sub.add_parser("oracle", parents=[common], help="finite-difference spectrum")
    p.add_argument("--points", type=int, default=8000)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--tol", type=float, default=5e-3)
    return parser


# --------------------------------------------------------------------------


def _params(args) -> OscillatorParams:
    return OscillatorParams(m0=args.m0, omega=args.omega, hbar=args.hbar, a=args.a)


def _emit_table(args, columns, rows) -> str:
    if args.format == "json":
        return json.dumps([dict(zip(columns, r)) for r in rows], indent=2) + "\n"
    return write_csv(columns, rows)


def _emit_reports(args, reports: Sequence[CheckReport]) -> str:
    if args.format == "json":
        return reports_to_json(reports) + "\n"
    rows = [(r.name, r.max_abs_error, r.tolerance, str(r.passed).lower()) for r in reports]
    return write_csv(("name", "max_abs_error", "tolerance", "pass"), rows)


def _cmd_params(args):
    p = _params(args)
    rows = [("lambda0", p.lambda0), ("alpha", p.alpha), ("E0", p.e0), ("threshold_a", p.threshold_a)]
    if args.format == "json":
        return json.dumps(dict(rows), indent=2) + "\n", True
    return write_csv(("name", "value"), rows), True


def _cmd_eval(args):
    p = _params(args)
    model = ModelKind(args.model)
    triple = eval_state(WaveState(p, model, args.n), np.asarray(args.x))
    rows = [(x, v, d1, d2) for x, v, d1, d2 in zip(args.x, triple.value, triple.d1, triple.d2)]
    return _emit_table(args, ("x", "value", "d1", "d2"), rows), True


def _cmd_spectrum(args):
    p = _params(args)
    rows = [(n, energy(p, n), n + p.beta + 0.5) for n in range(args.n_max + 1)]
    return _emit_table(args, ("n", "E_n", "K0_eigenvalue"), rows), True


def _suite_reports(args) -> list[CheckReport]:
    p = _params(args)
    S, C = ModelKind.SEMICONFINED, ModelKind.CONSTANT_MASS
    if args.suite == "algebra":
        N = args.nmax or 12
        tol = args.tol or 1e-9
        out = [
            algebra.check_generator_matrices(p, N, tol),
            algebra.check_matrix_relations(p, N, tol),
            algebra.check_su11(p, max(N, 4), tol),
            algebra.check_casimir(p, max(N, 3), tol),
        ]
        out += [algebra.check_ladder(p, n, tol=max(tol, 1e-8)) for n in range(min(N, 8) + 1)]
        out += [algebra.check_ladder_recovery(p, n, tol=max(tol, 1e-8)) for n in range(min(N, 4) + 1)]
        return out
    if args.suite == "identities":
        return [moments.verify_identities(args.nmax if args.nmax is not None else 10, args.alpha, args.tol or 1e-9)]
    tol = args.tol or 1e-7
    nmax = args.nmax if args.nmax is not None else (5 if args.suite == "factorization" else 3)
    if args.suite == "factorization":
        out = []
        for model in (S, C):
            out += [algebra.check_schrodinger(p, model, n, tol=tol) for n in range(nmax + 1)]
            out += [algebra.check_factorization(p, model, n, tol=tol) for n in range(nmax + 1)]
            out.append(algebra.check_ground_annihilation(p, model, tol=min(tol, 1e-9)))
        return out
    if args.suite == "commutators":
        flat, _ = limits.commutator_limit(p)
        return [algebra.check_pdem_commutators(p, tol=tol, states=range(nmax + 1)), flat]
    return [algebra.check_heisenberg_lie(p, model, tol=tol, states=range(nmax + 1)) for model in (C, S)]


def _cmd_verify(args):
    reports = _suite_reports(args)
    return _emit_reports(args, reports), all(r.passed for r in reports)


def _cmd_uncertainty(args):
    p = _params(args)
    rows = [moments.moments_semiconfined(p, n, args.mode).row() for n in args.n_range]
    return _emit_table(args, moments.MomentSet.COLUMNS, rows), True


def _cmd_limits(args):
    p = _params(args)
    tables = {}
    for n in range(args.nmax + 1):
        tables[f"wavefunction n={n}"] = limits.wavefunction_limit(p, n, args.a_list)
        tables[f"generators f=psi_{n}"] = limits.generator_limit(p, args.a_list, test_state=n)
        tables[f"moments n={n}"] = limits.moments_limit(p, n, args.a_list)
    tables["asymptotic relations"] = limits.asymptotic_table(p, args.a_list, args.nmax)
    tables["commutator"] = limits.commutator_limit(p, args.a_list)[1]
    ok = all(t.strictly_decreasing() for t in tables.values())
    if args.format == "json":
        payload = [
            {"table": name, "parameter": t.parameter, "values": t.values, "columns": t.columns,
             "strictly_decreasing": t.strictly_decreasing()}
            for name, t in tables.items()
        ]
        return json.dumps(payload, indent=2) + "\n", ok
    rows = []
    for name, t in tables.items():
        for col, vals in t.columns.items():
            rows += [(name, t.parameter, v, col, r) for v, r in zip(t.values, vals)]
    return write_csv(("table", "parameter", "value", "residual_name", "residual"), rows), ok


def _cmd_oracle(args):
    p = _params(args)
    vals = oracle.oracle_spectrum(p, args.k, oracle.default_grid(p, args.k, args.points))
    rows = [(n, float(e), energy(p, n), abs(e - energy(p, n)) / energy(p, n)) for n, e in enumerate(vals)]
    ok = all(r[3] <= args.tol for r in rows)
    return _emit_table(args, ("n", "E_numeric", "E_exact", "rel_error"), rows), ok


_COMMANDS = {
    "params": _cmd_params,
    "eval": _cmd_eval,
    "spectrum": _cmd_spectrum,
    "verify": _cmd_verify,
    "uncertainty": _cmd_uncertainty,
    "limits": _cmd_limits,
    "oracle": _cmd_oracle,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, ok = _COMMANDS[args.command](args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"semiconfined: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())
