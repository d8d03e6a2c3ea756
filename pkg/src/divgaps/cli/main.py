"""divgaps command line.

# AICODE-NOTE: run() never raises for user mistakes. argparse errors, invalid
# configs and domain errors (bad q, m, n; unknown kinds; exceeded budgets) all
# end in a message on stderr and exit code 2. Exit code 1 is reserved for a
# verification campaign that ran and failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

import yaml
from pydantic import ValidationError

from divgaps.cli.commands import (
    EXIT_USAGE,
    cmd_buchstab,
    cmd_census,
    cmd_constants,
    cmd_count,
    cmd_dfunc,
    cmd_estimate,
    cmd_table,
    cmd_verify,
    parse_q,
)
from divgaps.config import load_config
from divgaps.errors import (
    InvalidFieldError,
    InvalidParameterError,
    ResourceLimitExceededError,
    UnknownKindError,
)
from divgaps.utils.logging import set_log_level
from divgaps.verify.checks import SUITES

KINDS = ("r", "p", "f", "g")


def _add_mode(parser: argparse.ArgumentParser) -> None:
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="Exact rationals (default up to the exact threshold)")
    mode.add_argument("--numeric", action="store_true", help="float64 recurrences")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divgaps",
        description="Gap-free divisor degrees over F_q and cycle sums of permutations.",
    )
    parser.add_argument("--config", type=Path, help="YAML file with engine settings")
    parser.add_argument("--output-dir", type=Path, dest="output_dir", help="Artifact directory")
    parser.add_argument("--no-cache", action="store_true", dest="no_cache", help="Bypass the table cache")
    parser.add_argument(
        "--log-level",
        dest="log_level",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        type=str.upper,
        help="Logging level (default: DIVGAPS_LOG_LEVEL or INFO)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="One value of r, p, f or g")
    count.add_argument("kind", choices=KINDS)
    count.add_argument("--q", type=parse_q, default=None, help="Field size, '-' for p and g")
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--m", type=int, required=True)
    _add_mode(count)
    count.set_defaults(handler=cmd_count)

    table = sub.add_parser("table", help="A column n = 0..n_max")
    table.add_argument("kind", choices=KINDS)
    table.add_argument("--q", type=parse_q, default=None, help="Field size, '-' for p and g")
    table.add_argument("--m", type=int, required=True)
    table.add_argument("--n-max", type=int, required=True, dest="n_max")
    table.add_argument("--format", choices=("csv", "json"), default="csv")
    table.add_argument("--output", type=Path, help="Write to a file instead of stdout")
    _add_mode(table)
    table.set_defaults(handler=cmd_table)

    for name, handler, help_text in (
        ("buchstab", cmd_buchstab, "Buchstab's ω"),
        ("dfunc", cmd_dfunc, "The density d(u)"),
    ):
        grid = sub.add_parser(name, help=help_text)
        target = grid.add_mutually_exclusive_group(required=True)
        target.add_argument("--u", type=float, help="Evaluate at u")
        target.add_argument("--dump", nargs="?", const="", help="Write the grid as CSV")
        grid.set_defaults(handler=handler)

    constants = sub.add_parser("constants", help="C, κ and τ")
    constants.add_argument("--precision", type=int, help="Mantissa bits of the constants")
    constants.set_defaults(handler=cmd_constants)

    census = sub.add_parser("census", help="Exhaustive census")
    census.add_argument("kind", choices=("poly", "perm"))
    census.add_argument("--q", type=parse_q, default=None)
    census.add_argument("--n", type=int, required=True)
    census.set_defaults(handler=cmd_census)

    verify = sub.add_parser("verify", help="Run a verification suite")
    verify.add_argument(
        "--suite", default="all", help=f"One of {', '.join(SUITES)} or a single check id"
    )
    verify.add_argument("--report", type=Path, help="Path of report.json")
    verify.set_defaults(handler=cmd_verify)

    estimate = sub.add_parser("estimate", help="ĉ_q or η̂_q(m) with stability")
    estimate.add_argument("kind", choices=("cq", "eta"))
    estimate.add_argument("--q", type=parse_q, default=None, help="Field size, '-' for permutations")
    estimate.add_argument("--m", type=int, default=1)
    estimate.add_argument("--n", type=int, default=None)
    estimate.add_argument(
        "--balanced", action="store_true", help="Use n = m q^{(m+1)τ} instead of 1000 m"
    )
    estimate.set_defaults(handler=cmd_estimate)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """
    Parse argv and dispatch.

    Returns:
        0 on success, 1 if a verification suite failed, 2 on usage errors

    Example:
        >>> run(["count", "f", "--q", "2", "--n", "2", "--m", "1", "--exact"])
        3/4
        0
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.log_level:
        set_log_level(args.log_level)

    try:
        config = load_config(
            args.config,
            output_dir=args.output_dir,
            cache_enabled=False if args.no_cache else None,
        )
    except (OSError, ValueError, ValidationError, yaml.YAMLError) as exc:
        print(f"divgaps: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return int(args.handler(args, config))
    except (
        InvalidParameterError,
        InvalidFieldError,
        UnknownKindError,
        ResourceLimitExceededError,
    ) as exc:
        print(f"divgaps: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
