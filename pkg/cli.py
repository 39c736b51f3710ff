from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from dotenv import load_dotenv
from pydantic import ValidationError

from checks.registry import UnknownCheckError
from qmatrices.algebra import AlgebraError
from qmatrices.config import Settings
from qmatrices.coefficients import EvaluationError
from qmatrices.exprio import ParseError, eval_expr, evaluate_text, parse
from qmatrices.health import run_doctor_checks
from qmatrices.identities import basis_polynomial, newton_residual, power_trace
from qmatrices.logging_utils import setup_logging
from qmatrices.minors import qminor, sigma
from qmatrices.models import RunConfig
from qmatrices.poisson import pbracket
from qmatrices.report_store import render_json, write_report
from qmatrices.runner import run_verify
from qmatrices.validator import SchemaValidationError, validate_report

USAGE_ERRORS = (ValidationError, ParseError, AlgebraError, EvaluationError, UnknownCheckError)


def _emit(args: argparse.Namespace, kind: str, text: str) -> int:
    if args.format == "json":
        print(json.dumps({"n": args.n, "kind": kind, "result": text}, ensure_ascii=False))
    else:
        print(text)
    return 0


def _index_list(raw: str) -> list[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}") from None


def cmd_verify(args: argparse.Namespace) -> int:
    settings: Settings = args.settings
    config = RunConfig(
        n=args.n,
        max_power=args.max_power,
        checks=args.checks,
        format=args.format,
        seed=args.seed if args.seed is not None else settings.seed,
        budget_ms=args.budget_ms if args.budget_ms is not None else settings.budget_ms,
        samples=args.samples if args.samples is not None else settings.samples,
        workers=args.workers if args.workers is not None else settings.workers,
        output=args.output,
    )
    report, code = run_verify(config, settings)
    payload = report.to_payload()
    validate_report(payload)

    if config.output:
        target = write_report(config.output, payload)
        print(f"report written to {target}", file=sys.stderr)

    if config.format == "json":
        sys.stdout.write(render_json(payload))
    else:
        for item in report.checks:
            print(item.to_line())
        print(report.summary_line())
    return code


def cmd_expand(args: argparse.Namespace) -> int:
    value = evaluate_text(args.expr, args.n, args.mode)
    return _emit(args, "expand", value.to_text())


def cmd_sigma(args: argparse.Namespace) -> int:
    return _emit(args, "sigma", sigma(args.k, args.n).to_text())


def cmd_trace_power(args: argparse.Namespace) -> int:
    return _emit(args, "trace_power", power_trace(args.n, args.k).to_text())


def cmd_minor(args: argparse.Namespace) -> int:
    return _emit(args, "minor", qminor(args.rows, args.cols, args.n).to_text())


def cmd_newton(args: argparse.Namespace) -> int:
    return _emit(args, "newton", newton_residual(args.n, args.k).to_text())


def cmd_pbracket(args: argparse.Namespace) -> int:
    f = eval_expr(parse(args.f, args.n, "classical"))
    g = eval_expr(parse(args.g, args.n, "classical"))
    return _emit(args, "pbracket", pbracket(f, g).to_text())


def cmd_t_basis(args: argparse.Namespace) -> int:
    return _emit(args, "t_basis", basis_polynomial(args.n, args.k, args.basis).to_text())


def cmd_doctor(args: argparse.Namespace) -> int:
    checks = run_doctor_checks(args.settings)
    has_fail = False
    for check in checks:
        if check.status == "FAIL":
            has_fail = True
        print(f"[{check.status}] {check.title}: {check.detail}")
    return 1 if has_fail else 0


def _run(func: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    try:
        return int(func(args))
    except SchemaValidationError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 1
    except USAGE_ERRORS as e:
        if isinstance(e, ValidationError):
            message = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        else:
            message = str(e)
        print(f"ERROR: {message}", file=sys.stderr)
        return 2


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmatrices", description="Exact computations and identity checks in quantum matrix algebras")
    sub = parser.add_subparsers(dest="cmd", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=settings.default_n, help="Matrix size (default from QMAT_DEFAULT_N)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p_verify = sub.add_parser("verify", parents=[common], help="Run verification checks and report residuals")
    p_verify.add_argument("--checks", action="append", default=None, help="Comma-separated check names or 'all'")
    p_verify.add_argument("--max-power", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--budget-ms", type=int, default=None)
    p_verify.add_argument("--samples", type=int, default=None)
    p_verify.add_argument("--workers", type=int, default=None)
    p_verify.add_argument("--output", default=None, help="Also write the JSON report to this path")
    p_verify.set_defaults(func=cmd_verify)

    p_expand = sub.add_parser("expand", parents=[common], help="Print the normal form of an expression")
    p_expand.add_argument("expr")
    p_expand.add_argument("--mode", choices=("quantum", "classical"), default="quantum")
    p_expand.set_defaults(func=cmd_expand)

    p_sigma = sub.add_parser("sigma", parents=[common], help="Sum of principal k x k quantum minors")
    p_sigma.add_argument("--k", type=int, required=True)
    p_sigma.set_defaults(func=cmd_sigma)

    p_trace = sub.add_parser("trace-power", parents=[common], help="Trace of the k-th quantum power")
    p_trace.add_argument("--k", type=int, required=True)
    p_trace.set_defaults(func=cmd_trace_power)

    p_minor = sub.add_parser("minor", parents=[common], help="Quantum minor [rows|cols]")
    p_minor.add_argument("--rows", type=_index_list, required=True)
    p_minor.add_argument("--cols", type=_index_list, required=True)
    p_minor.set_defaults(func=cmd_minor)

    p_newton = sub.add_parser("newton", parents=[common], help="Residual of Newton's formula at k")
    p_newton.add_argument("--k", type=int, required=True)
    p_newton.set_defaults(func=cmd_newton)

    p_bracket = sub.add_parser("pbracket", parents=[common], help="Poisson bracket of two classical polynomials")
    p_bracket.add_argument("f")
    p_bracket.add_argument("g")
    p_bracket.set_defaults(func=cmd_pbracket)

    p_basis = sub.add_parser("t-basis", parents=[common], help="t_k as a polynomial in a generating set of traces/minors")
    p_basis.add_argument("--k", type=int, required=True)
    p_basis.add_argument("--basis", choices=("t", "sigma", "mixed"), default="t")
    p_basis.set_defaults(func=cmd_t_basis)

    p_doctor = sub.add_parser("doctor", help="Check local environment and installed requirements")
    p_doctor.set_defaults(func=cmd_doctor)

    return parser


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    settings = Settings.load()
    setup_logging(settings.log_level, json_output=settings.log_json)

    parser = build_parser(settings)
    args = parser.parse_args(argv)
    args.settings = settings
    if getattr(args, "checks", "unset") is None:
        args.checks = ["all"]
    return _run(args.func, args)


if __name__ == "__main__":
    raise SystemExit(main())
