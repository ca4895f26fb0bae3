"""Command-line front end for the GL_n(F_q) evaluation-code toolkit.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 the request is too large to enumerate.
"""

from __future__ import annotations

import argparse
import logging
import sys

from src.errors import GLCodeError, Infeasible, VerificationError
from src.linalg import parse_matrix
from src.services import bruhat, evaluation_code, formulas, reports, sections, verification
from src.services.settings import LOG_LEVELS, OUTPUT_FORMATS, VERIFY_LEVELS, RunConfig, log_level

logger = logging.getLogger("glcode")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3
DEFAULT_FORMATS = {
    "params": "json",
    "verify": "text",
    "table": "csv",
    "gen-matrix": "text",
    "weights": "csv",
    "sections": "csv",
    "bruhat": "json",
}


def _parse_orders(text: str) -> list[int]:
    try:
        orders = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of field orders") from None
    if not orders:
        raise argparse.ArgumentTypeError("at least one field order is required")
    return orders


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, help="Output format; each command has its own default.")
    common.add_argument("--out", help="Write output to this path instead of stdout.")
    common.add_argument("--workers", type=int, help="Worker threads for enumeration (default GLCODE_WORKERS or 1).")
    common.add_argument("--budget", type=int, help="Column budget for building codes (default GLCODE_BUDGET or 10^7).")
    common.add_argument("--poly", help="Comma-separated modulus coefficients, lowest degree first.")
    common.add_argument("--log-level", choices=LOG_LEVELS, help="Logging level (default GLCODE_LOG_LEVEL or WARNING).")

    parser = argparse.ArgumentParser(prog="glcode", description="Evaluation codes on GL_n(F_q).")
    commands = parser.add_subparsers(dest="command", required=True)

    def with_nq(name, help_text):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--n", type=int, required=True, help="Matrix dimension.")
        sub.add_argument("--q", type=int, required=True, help="Field order, a prime power.")
        return sub

    with_nq("params", "Closed-form code parameters and defects.")
    verify = with_nq("verify", "Run the invariant suites and print a report.")
    verify.add_argument("--level", choices=VERIFY_LEVELS, default="fast")
    table = commands.add_parser("table", parents=[common], help="Parameter table over several (n, q).")
    table.add_argument("--n-max", type=int, required=True)
    table.add_argument("--q", dest="orders", type=_parse_orders, required=True, help="e.g. 2,3,4")
    with_nq("gen-matrix", "Print the generator matrix.")
    with_nq("weights", "Exact weight distribution.")
    sec = with_nq("sections", "Partial-trace section counts against the closed form.")
    sec.add_argument("--census", action="store_true", help="One row per (B, c) instead of one per rank.")
    sec.add_argument("--full-c", action="store_true", help="Sweep every level c in the census.")
    bru = commands.add_parser("bruhat", parents=[common], help="LPU factorization of one matrix.")
    bru.add_argument("--matrix", required=True, help='Rows split by ";", entries by ",", e.g. "0,1;1,0".')
    bru.add_argument("--q", type=int, required=True)
    return parser


def run(config: RunConfig, args) -> tuple[str, int]:
    """Execute one command; returns (rendered output, exit code)."""
    fmt = config.format
    if config.command == "params":
        return reports.render(reports.params_payload(formulas.code_params(config.n, config.q)), fmt), EXIT_OK
    if config.command == "table":
        return reports.render(formulas.params_table(args.n_max, args.orders), fmt), EXIT_OK
    if config.command == "bruhat":
        result = bruhat.bruhat_decompose(parse_matrix(args.matrix, config.field()))
        return reports.render(reports.factorization_payload(result), fmt), EXIT_OK

    ctx = config.field()
    if config.command == "sections":
        if args.census:
            census = sections.section_census(config.n, ctx, full_c=config.full_c, workers=config.workers)
            return reports.render(census, fmt), EXIT_OK if census["match"].all() else EXIT_MISMATCH
        return reports.render(sections.stanley_table(config.n, ctx), fmt), EXIT_OK
    if config.command == "verify":
        report = verification.verify(config.n, ctx, level=config.level, workers=config.workers, budget=config.budget)
        return reports.render(report.frame(), fmt), EXIT_OK if report.passed else EXIT_MISMATCH

    code = evaluation_code.build_code(config.n, ctx, budget=config.budget)
    if config.command == "gen-matrix":
        return reports.genmat_text(code.genmat), EXIT_OK
    if config.command == "weights":
        distribution = evaluation_code.weight_distribution(code, workers=config.workers)
        return reports.render(distribution.to_frame(), fmt), EXIT_OK
    raise ValueError(f"unknown command {config.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        level = args.log_level or log_level()
    except ValueError as exc:
        parser.error(str(exc))
    logging.basicConfig(level=level, format='[%(asctime)s] %(levelname)s %(name)s: %(message)s', stream=sys.stderr)

    if args.format is None:
        args.format = DEFAULT_FORMATS[args.command]
    try:
        config = RunConfig.from_args(args)
        text, code = run(config, args)
    except Infeasible as exc:
        print(f"glcode: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except VerificationError as exc:
        print(f"glcode: check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (GLCodeError, ValueError) as exc:
        print(f"glcode: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    reports.write_output(text, config.out)
    logger.debug("%s finished with exit code %s", config.command, code)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
