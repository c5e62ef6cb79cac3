"""Command line interface."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from typing import Any, TextIO

from . import __version__
from .checks import CheckReport, run_check
from .config import EngineConfig
from .const import (
    CONF_CACHE_SIZE,
    CHECK_CLASSICAL_LIMIT,
    CHECK_CONDITION10,
    CHECK_CONFLUENCE,
    CHECK_COVARIANCE,
    CHECK_DERIVATIVE_RULES,
    CHECK_NUMERIC,
    CHECK_RELATIONS,
    CHECKS,
    CONF_LEVEL_BOUND,
    CONF_SERIES_READING,
    CONF_STEP_BUDGET,
    CONF_STRATEGY,
    DOMAIN,
    EXIT_BUDGET_EXHAUSTED,
    EXIT_CHECK_FAILED,
    EXIT_DOMAIN_ERROR,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    FORMAT_JSON,
    FORMAT_TEXT,
    FORMATS,
    LOG_DATE_FORMAT,
    LOG_FORMAT,
    MODE_QGROUP,
    SERIES_READINGS,
    STRATEGIES,
)
from .engine import Engine
from .exceptions import (
    ConfigurationError,
    DomainError,
    EvaluationError,
    Ndc2Error,
    ParseError,
    ResourceBudgetError,
)
from .parser import parse, parse_generator
from .render import render

_LOGGER = logging.getLogger(__name__)

# CLI options forwarded to each check
CHECK_OPTIONS: dict[str, dict[str, str]] = {
    CHECK_RELATIONS: {"max_level": "max_level"},
    CHECK_CONFLUENCE: {
        "max_level": "max_level",
        "max_len": "word_len",
        "samples": "samples",
        "seed": "seed",
    },
    CHECK_COVARIANCE: {"max_level": "max_level"},
    CHECK_CONDITION10: {},
    CHECK_DERIVATIVE_RULES: {"max_len": "max_len", "max_level": "max_level"},
    CHECK_CLASSICAL_LIMIT: {"samples": "samples", "seed": "seed"},
    CHECK_NUMERIC: {"samples": "samples", "seed": "seed"},
}


def _shared_options(defaults: bool) -> argparse.ArgumentParser:
    """Return the options every command accepts.

    With ``defaults`` false every default is suppressed, leaving a value given
    before the subcommand in place.
    """
    shared = argparse.ArgumentParser(add_help=False)

    def default(value: Any) -> Any:
        return value if defaults else argparse.SUPPRESS

    shared.add_argument(
        "--format", choices=FORMATS, default=default(FORMAT_TEXT), help="output format"
    )
    shared.add_argument(
        "--step-budget", type=int, default=default(None),
        help="rule applications per normalization",
    )
    shared.add_argument(
        "--level-bound", type=int, default=default(None), help="largest generator level accepted"
    )
    shared.add_argument(
        "--strategy", choices=STRATEGIES, default=default(None), help="redex selection strategy"
    )
    shared.add_argument(
        "--reading", choices=SERIES_READINGS, default=default(None), help="eta-series reading"
    )
    shared.add_argument(
        "--cache-size", type=int, default=default(None), help="memoized entries per rewrite system"
    )
    shared.add_argument("--max-level", type=int, default=default(None), help="check bound")
    shared.add_argument("--max-len", type=int, default=default(None), help="check word length")
    shared.add_argument("--samples", type=int, default=default(None), help="random samples")
    shared.add_argument("--seed", type=int, default=default(None), help="random seed")
    return shared


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser."""
    parser = argparse.ArgumentParser(
        prog=DOMAIN,
        description=(
            "Exact rewriting and differentiation in the bosonic calculus on the quantum plane."
        ),
        parents=[_shared_options(True)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging")
    commands = parser.add_subparsers(dest="command", required=True)
    shared = [_shared_options(False)]

    normalize = commands.add_parser("normalize", parents=shared, help="normal-order an expression")
    normalize.add_argument("expr")
    normalize.set_defaults(func=cmd_normalize)

    d = commands.add_parser("d", parents=shared, help="apply the exterior differential")
    d.add_argument("--times", type=int, default=1, help="number of applications")
    d.add_argument("expr")
    d.set_defaults(func=cmd_d)

    diff = commands.add_parser("diff", parents=shared, help="take partial derivatives")
    diff.add_argument(
        "--wrt", action="append", required=True, help="generator such as xi[0]; repeatable"
    )
    diff.add_argument("expr")
    diff.set_defaults(func=cmd_diff)

    qnormalize = commands.add_parser(
        "qnormalize", parents=shared, help="normal-order matrix entries A, B, C, D"
    )
    qnormalize.add_argument("expr")
    qnormalize.set_defaults(func=cmd_qnormalize)

    check = commands.add_parser("check", parents=shared, help="run a verification check")
    check.add_argument("name", choices=CHECKS)
    check.add_argument(
        "--conformance-report", action="store_true", help="print the per-rule record"
    )
    check.set_defaults(func=cmd_check)
    return parser


def _engine(args: argparse.Namespace) -> Engine:
    config = EngineConfig.from_options(
        {
            CONF_LEVEL_BOUND: args.level_bound,
            CONF_STEP_BUDGET: args.step_budget,
            CONF_STRATEGY: args.strategy,
            CONF_SERIES_READING: args.reading,
            CONF_CACHE_SIZE: args.cache_size,
        }
    )
    return Engine(config)


def _parse(args: argparse.Namespace, engine: Engine, mode: str | None = None) -> Any:
    options: dict[str, Any] = {"level_bound": engine.config.level_bound}
    if mode is not None:
        options["mode"] = mode
    return parse(args.expr, engine.ctx, **options)


def cmd_normalize(args: argparse.Namespace, engine: Engine, out: TextIO) -> int:
    """Print the normal form of the expression."""
    print(render(engine.plane.normalize(_parse(args, engine)), args.format), file=out)
    return EXIT_OK


def cmd_d(args: argparse.Namespace, engine: Engine, out: TextIO) -> int:
    """Print d applied ``--times`` times."""
    result = engine.calculus.d_power(_parse(args, engine), args.times)
    print(render(result, args.format), file=out)
    return EXIT_OK


def cmd_diff(args: argparse.Namespace, engine: Engine, out: TextIO) -> int:
    """Print the derivatives with respect to each ``--wrt`` in turn."""
    wrts = [parse_generator(text, engine.config.level_bound) for text in args.wrt]
    result = engine.calculus.diff_sequence(wrts, _parse(args, engine))
    print(render(result, args.format), file=out)
    return EXIT_OK


def cmd_qnormalize(args: argparse.Namespace, engine: Engine, out: TextIO) -> int:
    """Print the normal form of a matrix-entry expression."""
    result = engine.qsystem.normalize(_parse(args, engine, MODE_QGROUP))
    print(render(result, args.format), file=out)
    return EXIT_OK


def _print_report(report: CheckReport, args: argparse.Namespace, out: TextIO) -> None:
    if args.format == FORMAT_JSON:
        print(json.dumps(report.as_dict()), file=out)
        return
    print(f"{report.name}: {'ok' if report.passed else 'FAILED'}: {report.summary}", file=out)
    for line in report.details:
        print(f"  {line}", file=out)
    if args.conformance_report:
        for record in report.data.get("records", []):
            note = f"; {record['note']}" if record["note"] else ""
            print(
                f"  ({record['equation']}) {record['condition']}: {record['status']}{note}",
                file=out,
            )


def cmd_check(args: argparse.Namespace, engine: Engine, out: TextIO) -> int:
    """Run a check and print its report."""
    options = {
        target: getattr(args, source) for source, target in CHECK_OPTIONS[args.name].items()
    }
    report = run_check(args.name, engine, **options)
    _print_report(report, args, out)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def setup_logging(verbosity: int) -> None:
    """Configure the root logger for the given ``-v`` count."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Run the command line and return the exit code."""
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    out = out or sys.stdout
    try:
        return args.func(args, _engine(args), out)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except ResourceBudgetError as err:
        print(f"resource budget exhausted: {err}", file=sys.stderr)
        return EXIT_BUDGET_EXHAUSTED
    except (DomainError, EvaluationError, ConfigurationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except Ndc2Error as err:
        _LOGGER.exception("Unexpected engine error")
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
