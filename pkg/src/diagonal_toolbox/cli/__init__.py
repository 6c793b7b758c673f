"""Command line: ``diagonal-toolbox {check,explain,build,oracle}``.

check and explain exit with the verdict: 0 Diagonal, 1 NotDiagonal,
2 KernelInconclusive, 3 PrecisionUnknown. Malformed input exits with 64,
build exits with 5 when no construction applies.
"""
import argparse
import logging

from ..settings import MAX_PRECISION_LEVEL
from ..util import EXIT_INPUT_ERROR
from .commands import BUILDERS, cmd_build, cmd_check, cmd_explain, cmd_oracle
from .oracles import TRANSFORMER_KINDS
from .problem import (ProblemSpec, ProblemSpecError, dumps_problem, load_problem, loads_problem,
                      settings_from_options)

logger = logging.getLogger(__name__)

__all__ = ["main", "build_parser", "ProblemSpec", "ProblemSpecError", "load_problem", "loads_problem",
           "dumps_problem"]

ORACLE_KINDS = ("lr-equivalence", "schur-horn-roundtrip", "transformer-postconditions")


def _add_run_options(parser):
    parser.add_argument("--precision", type=int, choices=range(1, MAX_PRECISION_LEVEL + 1),
                        help="precision level; 1, 2, 3 scan 10^4, 10^5, 10^6 terms")
    parser.add_argument("--truncation", type=int, metavar="N", help="number of terms a construction builds")
    parser.add_argument("--format", choices=("json", "text"), help="report format")
    parser.add_argument("--out", metavar="PATH", help="write the report (build: the matrix) to PATH")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log every decision step")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log errors only")


def build_parser():
    parser = argparse.ArgumentParser(prog="diagonal-toolbox",
                                     description="Decide and construct diagonals of compact self-adjoint "
                                                 "operators with prescribed eigenvalues.")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="decide whether d is a diagonal for lambda")
    check.add_argument("problem", help="problem file (JSON with \"lambda\", \"d\" and optional \"options\")")
    _add_run_options(check)

    explain = commands.add_parser("explain", help="the verdict with every condition, splitting and delta knot")
    explain.add_argument("problem")
    explain.add_argument("--depth", type=int, default=8, help="knots of delta listed per sign")
    _add_run_options(explain)

    build = commands.add_parser("build", help="construct a matrix realizing a diagonal instance")
    build.add_argument("problem")
    build.add_argument("--builder", choices=BUILDERS, default="auto")
    build.add_argument("--epsilon", default="1/2", help="epsilon of the infmove builder, a \"p/q\" rational")
    _add_run_options(build)

    oracle = commands.add_parser("oracle", help="run a randomized property suite")
    oracle.add_argument("kind", help="one of %s" % ", ".join(ORACLE_KINDS))
    oracle.add_argument("--seed", type=int, default=1)
    oracle.add_argument("--n", type=int, help="lr-equivalence: number of pairs")
    oracle.add_argument("--dim", type=int, help="schur-horn-roundtrip: dimension")
    oracle.add_argument("--trials", type=int, help="number of trials")
    oracle.add_argument("--transform", choices=TRANSFORMER_KINDS,
                        help="transformer-postconditions: the transformer to test")
    _add_run_options(oracle)
    return parser


def _configure_logging(args):
    level = logging.WARNING
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _oracle_params(args):
    params = {"seed": args.seed}
    for name in ("n", "dim", "trials"):
        if getattr(args, name) is not None:
            params[name] = getattr(args, name)
    if args.transform is not None:
        params["kind"] = args.transform
    return params


def main(argv=None):
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    overrides = {"precision": args.precision, "truncation": args.truncation, "format": args.format}

    if args.command == "oracle":
        settings = settings_from_options({}, **overrides)
        return cmd_oracle(args.kind, _oracle_params(args), settings)
    try:
        spec = load_problem(args.problem)
        settings = spec.settings(**overrides)
    except (ProblemSpecError, ValueError) as e:
        logger.error("%s: %s", args.problem, e)
        return EXIT_INPUT_ERROR
    logger.debug("problem %s", dumps_problem(spec))
    if args.command == "check":
        return cmd_check(spec, settings, args.out)
    if args.command == "explain":
        return cmd_explain(spec, settings, args.out, args.depth)
    return cmd_build(spec, settings, args.out, args.builder, args.epsilon)
