"""Command-line front end.

Every subcommand prints JSON on stdout: one object for build, pieri, branch and
list-partitions, one object per line for verify. Logs go to stderr.

Exit codes: 0 success or all checks passed, 1 a check failed, 2 usage error,
3 a check ran out of retries at non-generic parameter points.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from . import __version__
from .branching import branch_coeffs, branch_poly, build, build_regularized
from .config import HyperbranchConfig, load_config
from .degeneration import parse_chain
from .errors import ErrorType, HyperbranchError, create_error
from .hermite_limit import HermiteBuildPlan, build_hermite_exact, pieri_routed
from .logging import with_component
from .params import Family, ParamPoint, make_params, parse_family
from .partitions import Partition, enumerate_subpartitions, make_partition
from .pieri import PieriRequest
from .scalars import GaussRational
from .verify import (
    ERROR,
    FAIL,
    SUITES,
    CheckReport,
    SuiteFilter,
    run_suite,
    run_suite_async,
)

logger = with_component("cli")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NON_GENERIC = 3

_USAGE_ERRORS = frozenset(
    {
        ErrorType.VALIDATION,
        ErrorType.INVALID_PARTITION,
        ErrorType.UNSUPPORTED_FAMILY,
        ErrorType.UNSUPPORTED_PARAMETERS,
    }
)


def parse_partition(text: str) -> Partition:
    """Comma-separated parts; "-" is the empty partition."""
    text = text.strip()
    if text in ("-", ""):
        return ()
    try:
        parts = [int(part) for part in text.split(",")]
    except ValueError as e:
        raise create_error(
            ErrorType.INVALID_PARTITION, f"not a partition: {text!r}", e
        ) from e
    return make_partition(parts)


def load_params(family: Family, source: str) -> ParamPoint:
    """Parameters from inline JSON or from a JSON file."""
    text = source
    if not source.lstrip().startswith("{"):
        path = Path(source)
        if not path.is_file():
            raise create_error(
                ErrorType.VALIDATION, f"parameter file not found: {source}"
            )
        text = path.read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise create_error(
            ErrorType.VALIDATION, f"invalid parameter JSON: {e}", e
        ) from e
    if not isinstance(raw, dict):
        raise create_error(ErrorType.VALIDATION, "parameters must be a JSON object")
    return make_params(family, raw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperbranch",
        description="Symmetric hypergeometric orthogonal polynomials, built exactly.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--output", type=Path, help="write JSON here, not stdout")
    commands = parser.add_subparsers(dest="command", required=True)

    families = [family.value for family in Family]

    build_cmd = commands.add_parser("build", help="construct P_lambda")
    build_cmd.add_argument("--family", required=True, choices=families)
    build_cmd.add_argument("--lambda", dest="lam", required=True)
    build_cmd.add_argument("--n", type=int, required=True)
    build_cmd.add_argument("--params", required=True)
    build_cmd.add_argument(
        "--regularize",
        action="store_true",
        help="take coefficient-wise limits when the point is non-generic",
    )
    build_cmd.add_argument(
        "--hermite-limit",
        action="store_true",
        help="build a hermite polynomial as the exact continuous Hahn limit",
    )

    pieri_cmd = commands.add_parser("pieri", help="one Pieri coefficient")
    pieri_cmd.add_argument("--family", required=True, choices=families)
    pieri_cmd.add_argument("--lambda", dest="lam", required=True)
    pieri_cmd.add_argument("--mu", required=True)
    pieri_cmd.add_argument("--n", type=int, required=True)
    pieri_cmd.add_argument("--r", type=int, required=True)
    pieri_cmd.add_argument("--params", required=True)

    branch_cmd = commands.add_parser("branch", help="branching coefficients")
    branch_cmd.add_argument("--family", required=True, choices=families)
    branch_cmd.add_argument("--lambda", dest="lam", required=True)
    branch_cmd.add_argument("--mu", required=True)
    branch_cmd.add_argument("--n", type=int, required=True)
    branch_cmd.add_argument("--params", required=True)

    verify_cmd = commands.add_parser("verify", help="run a verification suite")
    verify_cmd.add_argument("check", choices=[*SUITES, "all"])
    verify_cmd.add_argument("--family", choices=families)
    verify_cmd.add_argument("--m", type=int)
    verify_cmd.add_argument("--n", type=int)
    verify_cmd.add_argument("--lambda", dest="lam")
    verify_cmd.add_argument("--r", type=int)
    verify_cmd.add_argument("--chain")
    verify_cmd.add_argument("--seed", type=int)
    verify_cmd.add_argument("--workers", type=int)
    verify_cmd.add_argument(
        "--perturb",
        action="store_true",
        help="flip one contribution in every check; every check must then fail",
    )
    verify_cmd.add_argument(
        "--timings", action="store_true", help="include elapsed seconds per report"
    )

    list_cmd = commands.add_parser(
        "list-partitions", help="partitions inside the m x n box"
    )
    list_cmd.add_argument("--m", type=int, required=True)
    list_cmd.add_argument("--n", type=int, required=True)
    return parser


def _dumps(payload: Any) -> str:
    return json.dumps(payload, separators=(",", ":"))


def _scalar(value: Any) -> dict[str, str]:
    return GaussRational.parse(value).to_json()


def _run_build(args: argparse.Namespace) -> dict[str, Any]:
    family = parse_family(args.family)
    params = load_params(family, args.params)
    lam = parse_partition(args.lam)
    if args.hermite_limit:
        if family is not Family.HERMITE:
            raise create_error(
                ErrorType.VALIDATION, "--hermite-limit applies to the hermite family"
            )
        plan = HermiteBuildPlan.create(lam, args.n, params["g"], params["omega"])
        return build_hermite_exact(plan).to_json()
    if args.regularize:
        return build_regularized(lam, args.n, params).to_json()
    return build(family, lam, args.n, params).to_json()


def _run_pieri(args: argparse.Namespace) -> dict[str, Any]:
    family = parse_family(args.family)
    params = load_params(family, args.params)
    lam, mu = parse_partition(args.lam), parse_partition(args.mu)
    coeff = pieri_routed(PieriRequest(family, lam, mu, args.n, args.r, params))
    return {
        "family": family.value,
        "lambda": list(lam),
        "mu": list(mu),
        "n": args.n,
        "r": args.r,
        "coeff": _scalar(coeff),
    }


def _run_branch(args: argparse.Namespace) -> dict[str, Any]:
    family = parse_family(args.family)
    params = load_params(family, args.params)
    lam, mu = parse_partition(args.lam), parse_partition(args.mu)
    coeffs = branch_coeffs(lam, mu, args.n, params)
    return {
        "family": family.value,
        "lambda": list(lam),
        "mu": list(mu),
        "n": args.n,
        "coeffs": [_scalar(coeff) for coeff in coeffs],
        "poly": branch_poly(lam, mu, args.n, params).to_json(),
    }


def _run_list(args: argparse.Namespace) -> dict[str, Any]:
    if args.m < 0 or args.n < 0:
        raise create_error(ErrorType.VALIDATION, "box sides must be non-negative")
    return {
        "m": args.m,
        "n": args.n,
        "partitions": [list(lam) for lam in enumerate_subpartitions(args.m, args.n)],
    }


def _run_verify(
    args: argparse.Namespace, config: HyperbranchConfig
) -> tuple[list[CheckReport], int]:
    if args.seed is not None:
        config.seed = args.seed
    if args.workers is not None:
        if args.workers < 1:
            raise create_error(ErrorType.VALIDATION, "--workers must be at least 1")
        config.workers = args.workers
    selection = SuiteFilter(
        family=parse_family(args.family) if args.family else None,
        m=args.m,
        n=args.n,
        lam=parse_partition(args.lam) if args.lam is not None else None,
        r=args.r,
        chain=parse_chain(args.chain) if args.chain else None,
        perturb=args.perturb,
    )
    if config.workers > 1:
        reports = asyncio.run(run_suite_async(args.check, config, selection))
    else:
        reports = run_suite(args.check, config, selection)
    if not reports:
        raise create_error(ErrorType.VALIDATION, "no checks match the given filters")
    statuses = {report.status for report in reports}
    if FAIL in statuses:
        code = EXIT_CHECK_FAILED
    elif ERROR in statuses:
        code = EXIT_NON_GENERIC
    else:
        code = EXIT_OK
    return reports, code


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        output.write_text(text)


def _exit_code(error: HyperbranchError) -> int:
    if error.error_type is ErrorType.NON_GENERIC:
        return EXIT_NON_GENERIC
    if error.error_type in _USAGE_ERRORS:
        return EXIT_USAGE
    return EXIT_CHECK_FAILED


def main(
    argv: Sequence[str] | None = None, config: HyperbranchConfig | None = None
) -> int:
    """Parse argv, run one subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    config = config or load_config()
    logger.debug("Dispatching", command=args.command)
    try:
        if args.command == "verify":
            reports, code = _run_verify(args, config)
            lines = [
                _dumps(report.to_json(timings=args.timings)) for report in reports
            ]
            _emit("\n".join(lines) + "\n", args.output)
            return code
        handlers = {
            "build": _run_build,
            "pieri": _run_pieri,
            "branch": _run_branch,
            "list-partitions": _run_list,
        }
        payload = handlers[args.command](args)
    except HyperbranchError as e:
        logger.error("Command failed", command=args.command, error=e.error_type.value)
        error = {"error": e.error_type.value, "message": e.message}
        sys.stderr.write(_dumps(error) + "\n")
        return _exit_code(e)
    _emit(_dumps(payload) + "\n", args.output)
    return EXIT_OK
