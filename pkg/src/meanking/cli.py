# Copyright (c) 2026 The meanking developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""Command line interface.

Exit codes: 0 on success, 1 when a verification fails or a loaded strategy
violates a physical invariant, 2 for usage errors (bad flags, malformed or
missing files, unsupported dimensions).
"""
import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, List, Optional, Tuple

from . import __version__
from .bounds import (
    CERTIFICATE_TOLERANCE,
    GELFAND_TERMS,
    certify_lemma,
    theorem_bound,
)
from .fixtures import FIXTURES, UnknownFixtureError, fixture, match_convention
from .game import (
    DensityOperator,
    GameReport,
    aravind_bound,
    non_injective_bases,
    optimal_decision,
    success_probability,
)
from .linalg import ConfigurationError, DimensionError, MeanKingError
from .mub import MUB_TOLERANCE, MubFamily, UnsupportedDimensionError, \
    mub_family, verify_mub
from .search import (
    DEFAULT_TRIALS,
    HillClimbConfig,
    ScanConfig,
    dump_scan_csv,
    improve_best,
    scan,
    summary_path,
)
from .serialization import (
    StrategyFormatError,
    dump_strategy,
    load_family,
    load_strategy,
    load_vector_set,
    read_json,
    report_to_json,
    write_json,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

USAGE_ERRORS = (StrategyFormatError, UnsupportedDimensionError,
                UnknownFixtureError, DimensionError, ConfigurationError,
                OSError)


def _emit(args: argparse.Namespace, data: Any, text: str):
    """Print ``text``, or ``data`` as JSON with ``--format json``.

    ``--out`` sends the JSON to a file instead of stdout.
    """
    if args.out is not None:
        write_json(data, args.out)
    if args.format == "json":
        if args.out is None:
            print(json.dumps(data, indent=2))
    else:
        print(text)


def _verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def cmd_bound(args: argparse.Namespace) -> int:
    if args.d < 2:
        raise DimensionError(f"Dimension must be at least 2, got {args.d}.")
    aravind = aravind_bound(args.d)
    theorem = theorem_bound(args.d)
    text = (f"aravind_bound({args.d}) = {aravind:.6f}\n"
            f"theorem_bound({args.d}) = {theorem:.6f}")
    _emit(args, {"d": args.d, "aravind_bound": aravind,
                 "theorem_bound": theorem}, text)
    return EXIT_OK


def cmd_verify_mub(args: argparse.Namespace) -> int:
    if args.file is not None:
        family = load_family(read_json(args.file))
    else:
        family = mub_family(args.d)
    tol = MUB_TOLERANCE if args.tol is None else args.tol
    certificate = verify_mub(family, tol)
    (mu, j), (nu, i) = certificate.worst_pair
    text = (f"{_verdict(certificate.passed)}: d={family.dim}, maximum "
            f"deviation {certificate.max_deviation:.3e} (tolerance {tol:g}) "
            f"between Psi^{mu}_{j} and Psi^{nu}_{i}")
    _emit(args, report_to_json(certificate), text)
    return EXIT_OK if certificate.passed else EXIT_FAILED


def _reproduce_case(name: str, tol: Optional[float]) -> Tuple[dict, str]:
    fx = fixture(name)
    probability = fx.evaluate()
    bound = aravind_bound(fx.d)
    tolerance = fx.tolerance if tol is None else tol
    matches = abs(probability - fx.expected) <= tolerance
    passed = probability > bound and matches
    if not matches:
        for variant in match_convention(fx):
            logger.info(f"{name}: convention {variant.label} gives "
                        f"{variant.probability!r}, match={variant.matches}.")
    row = {"case": name, "d": fx.d, "probability": probability,
           "expected": fx.expected, "tolerance": tolerance, "bound": bound,
           "passed": passed}
    text = (f"{name}: P = {probability:.6f}, expected {fx.expected:.6f} "
            f"(tolerance {tolerance:g}), bound {bound:.6f}, {_verdict(passed)}")
    return row, text


def cmd_reproduce(args: argparse.Namespace) -> int:
    names = sorted(FIXTURES) if args.case == "all" else [args.case]
    rows, lines = [], []
    for name in names:
        row, text = _reproduce_case(name, args.tol)
        rows.append(row)
        lines.append(text)
    _emit(args, rows, "\n".join(lines))
    return EXIT_OK if all(row["passed"] for row in rows) else EXIT_FAILED


def cmd_export(args: argparse.Namespace) -> int:
    strategy = fixture(args.case).to_strategy(with_decision=args.with_decision)
    data = dump_strategy(strategy)
    if args.out is not None:
        write_json(data, args.out)
    else:
        print(json.dumps(data, indent=2))
    return EXIT_OK


def _game_json(report: GameReport) -> dict:
    data = report_to_json(report)
    data["non_injective_bases"] = non_injective_bases(report.decision)
    return data


def cmd_eval(args: argparse.Namespace) -> int:
    strategy = load_strategy(read_json(args.strategy))
    decision = strategy.decision
    if args.optimal or decision is None:
        decision = optimal_decision(strategy.rho, strategy.chi, strategy.mubs)
    report = success_probability(strategy.rho, strategy.chi, decision,
                                 strategy.mubs)
    data = _game_json(report)
    if args.out is not None:
        write_json(data, args.out)
    else:
        print(json.dumps(data, indent=2))
    return EXIT_OK


def _scan_input(spec: str, d: int) -> Tuple[DensityOperator, MubFamily]:
    """``fixture:NAME`` or the path of a strategy file."""
    if spec.startswith("fixture:"):
        fx = fixture(spec[len("fixture:"):])
        if fx.d != d:
            raise DimensionError(
                f"Fixture {fx.name} is for d={fx.d}, the scan is for d={d}.")
        return fx.state(), fx.mubs()
    strategy = load_strategy(read_json(spec))
    if strategy.rho.dim != d:
        raise DimensionError(
            f"Strategy {spec} is for d={strategy.rho.dim}, the scan is for "
            f"d={d}.")
    return strategy.rho, strategy.mubs


def cmd_scan(args: argparse.Namespace) -> int:
    source = args.input if args.input is not None else f"fixture:d{args.d}"
    state, mubs = _scan_input(source, args.d)
    out = None if args.out is None else Path(args.out)
    cfg = ScanConfig(args.d, state, args.trials, args.seed, out, args.workers)
    records, summary = scan(cfg, mubs)
    data = report_to_json(summary)
    if args.hill_climb:
        climbed = improve_best(records, state, mubs,
                               HillClimbConfig(seed=args.seed))
        data["hill_climb_probability"] = climbed.probability
        if out is not None:
            write_json(data, summary_path(out))
    if args.format == "csv" and out is None:
        dump_scan_csv(records, sys.stdout)
    elif args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        lines = [f"{key}: {value}" for key, value in data.items()]
        print("\n".join(lines))
    return EXIT_OK if summary.theorem_violations == 0 else EXIT_FAILED


def cmd_lemma(args: argparse.Namespace) -> int:
    vs = load_vector_set(read_json(args.vectors))
    tol = CERTIFICATE_TOLERANCE if args.tol is None else args.tol
    certificate = certify_lemma(vs, n_max=args.n_terms, tol=tol)
    text = (f"lemma_bound = {certificate.bound:.10f}\n"
            f"gelfand_tail (n={args.n_terms}) = {certificate.gelfand_tail:.10f}\n"
            f"dyadic witness = {certificate.witness:.10f}\n"
            f"operator_norm = {certificate.operator_norm:.10f}\n"
            f"norm <= bound: {_verdict(certificate.passed)}")
    _emit(args, report_to_json(certificate), text)
    return EXIT_OK if certificate.passed else EXIT_FAILED


def _positive_float(value: str) -> float:
    number = float(value)
    # NaN fails every comparison, so test for the allowed range.
    if not 0.0 < number < math.inf:
        raise argparse.ArgumentTypeError(
            f"expected a positive finite number, got {value}")
    return number


def _int_at_least(minimum: int):
    def parse(value: str) -> int:
        number = int(value)
        if number < minimum:
            raise argparse.ArgumentTypeError(
                f"expected an integer >= {minimum}, got {value}")
        return number
    return parse


def argument_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float,
                        help="Tolerance of the check. Every subcommand has its "
                             "own default.")
    common.add_argument("--seed", type=int, default=0,
                        help="Master seed for random trials (default: "
                             "%(default)s).")
    common.add_argument("--format", choices=("text", "json", "csv"),
                        default="text",
                        help="Output format on stdout (default: %(default)s).")
    common.add_argument("--out",
                        help="Write the machine-readable result to this file.")

    parser = argparse.ArgumentParser(
        prog="meanking",
        description="Simulate the Mean King's problem with conventional "
                    "strategies.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="Log more; repeat for debug output.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    bound = subparsers.add_parser(
        "bound", parents=[common],
        help="Print the conventional bound for dimension d.")
    bound.add_argument("--d", type=int, required=True)
    bound.set_defaults(func=cmd_bound)

    verify = subparsers.add_parser(
        "verify-mub", parents=[common],
        help="Certify that a family of bases is mutually unbiased.")
    source = verify.add_mutually_exclusive_group(required=True)
    source.add_argument("--d", type=int, help="Check the built-in family.")
    source.add_argument("--file", help="Check a family JSON file.")
    verify.set_defaults(func=cmd_verify_mub)

    reproduce = subparsers.add_parser(
        "reproduce", parents=[common],
        help="Evaluate the published counterexamples.")
    reproduce.add_argument("--case", choices=sorted(FIXTURES) + ["all"],
                           default="all")
    reproduce.set_defaults(func=cmd_reproduce)

    export = subparsers.add_parser(
        "export", parents=[common],
        help="Write a counterexample as a strategy JSON file.")
    export.add_argument("--case", choices=sorted(FIXTURES), required=True)
    export.add_argument("--with-decision", action="store_true",
                        help="Include the optimal decision table.")
    export.set_defaults(func=cmd_export)

    evaluate = subparsers.add_parser(
        "eval", parents=[common],
        help="Evaluate a strategy JSON file.")
    evaluate.add_argument("strategy", help="Strategy JSON file.")
    evaluate.add_argument("--optimal", action="store_true",
                          help="Use the optimal decision table even if the "
                               "file gives one.")
    evaluate.set_defaults(func=cmd_eval)

    scan_parser = subparsers.add_parser(
        "scan", parents=[common],
        help="Evaluate Haar-random measurement bases.")
    scan_parser.add_argument("--d", type=int, required=True)
    scan_parser.add_argument("--trials", type=_int_at_least(1),
                             default=DEFAULT_TRIALS,
                             help="Number of random bases (default: "
                                  "%(default)s).")
    scan_parser.add_argument("--input",
                             help="fixture:d3, fixture:d4 or a strategy JSON "
                                  "file (default: fixture:d<d>).")
    scan_parser.add_argument("--workers", type=_int_at_least(1), default=1,
                             help="Worker processes (default: %(default)s).")
    scan_parser.add_argument("--hill-climb", action="store_true",
                             help="Hill-climb from the best trial afterwards.")
    scan_parser.set_defaults(func=cmd_scan)

    lemma = subparsers.add_parser(
        "lemma", parents=[common],
        help="Bound the norm of a sum of rank-one projectors.")
    lemma.add_argument("vectors", help="Vector set JSON file.")
    lemma.add_argument("--n-terms", type=_int_at_least(2), default=GELFAND_TERMS,
                       help="Length of the Gelfand sequence (default: "
                            "%(default)s).")
    lemma.set_defaults(func=cmd_lemma)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = argument_parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except USAGE_ERRORS as error:
        print(f"meanking {args.command}: error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except MeanKingError as error:
        print(f"meanking {args.command}: {type(error).__name__}: {error}",
              file=sys.stderr)
        return EXIT_FAILED
