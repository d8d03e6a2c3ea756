"""Subcommand handlers. Each takes the parsed arguments and the effective config and returns an exit code."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from divgaps.asymptotics.buchstab import omega_closed_form
from divgaps.asymptotics.context import get_context
from divgaps.asymptotics.grid import dump_grid
from divgaps.config import EngineConfig
from divgaps.errors import InvalidParameterError
from divgaps.exact.estimates import (
    cq_estimate,
    eta_at_balanced_degree,
    eta_estimate,
    perm_eta_estimate,
)
from divgaps.exact.gaps import f_table, f_value, g_table, g_value
from divgaps.exact.models import require_field_size
from divgaps.exact.numeric import numeric_tables
from divgaps.exact.rough import perm_rough, perm_rough_column, r_ratio, rough_counts
from divgaps.oracle.census import census_perm, census_poly
from divgaps.oracle.field import field_of_size
from divgaps.utils.cache import TableCache, cache_key
from divgaps.utils.serialization import (
    dumps_json,
    format_float,
    format_ratio,
    ratio_to_float,
    render_csv,
    write_json,
)
from divgaps.verify.campaign import engine_version, run_campaign

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

TABLE_HEADER = ("kind", "q", "n", "m", "value_exact", "value_float")
FIELD_KINDS = ("r", "f")


def parse_q(text: str) -> int | None:
    """--q value: a field size, or "-" for the permutation kinds."""
    if text == "-":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--q must be an integer or '-', got {text!r}") from None


def _check_q(kind: str, q: int | None) -> None:
    if kind in FIELD_KINDS and q is None:
        raise InvalidParameterError("q", "-", f"a field size for kind '{kind}'")
    if kind not in FIELD_KINDS and q is not None:
        raise InvalidParameterError("q", q, f"'-' for permutation kind '{kind}'")


def _use_exact(args: argparse.Namespace, n: int, config: EngineConfig) -> bool:
    if args.exact:
        return True
    if args.numeric:
        return False
    return n <= config.exact_threshold


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8", newline="")


def exact_value(kind: str, q: int | None, n: int, m: int) -> Fraction:
    if kind == "r":
        return r_ratio(require_field_size(q, kind), n, m)
    if kind == "p":
        return perm_rough(n, m)
    if kind == "f":
        return f_value(require_field_size(q, kind), n, m)
    return g_value(n, m)


def cmd_count(args: argparse.Namespace, config: EngineConfig) -> int:
    """One value of r, p, f or g; exact rationals print as num/den (integers bare)."""
    _check_q(args.kind, args.q)
    if _use_exact(args, args.n, config):
        print(str(exact_value(args.kind, args.q, args.n, args.m)))
    else:
        table = numeric_tables(args.kind, args.q, args.m, args.n, config)
        print(format_float(table[args.n]))
    return EXIT_OK


def exact_column(kind: str, q: int | None, m: int, n_max: int) -> list[Fraction]:
    if kind == "r":
        field_size = require_field_size(q, kind)
        counts = rough_counts(field_size, m, n_max)
        return [Fraction(count, field_size**n) for n, count in enumerate(counts)]
    if kind == "p":
        return list(perm_rough_column(m, n_max))
    if kind == "f":
        return list(f_table(require_field_size(q, kind), m, n_max))
    return list(g_table(m, n_max))


def table_rows(
    kind: str, q: int | None, m: int, n_max: int, exact: bool, config: EngineConfig
) -> list[list[Any]]:
    """Rows (n, value_exact, value_float) as strings, exact or numeric."""
    if exact:
        column = exact_column(kind, q, m, n_max)
        return [[n, format_ratio(v), format_float(ratio_to_float(v))] for n, v in enumerate(column)]
    table = numeric_tables(kind, q, m, n_max, config)
    return [[n, "", format_float(float(v))] for n, v in enumerate(table.values)]


def cmd_table(args: argparse.Namespace, config: EngineConfig) -> int:
    """A whole column n = 0..n_max as CSV or JSON, through the on-disk cache."""
    _check_q(args.kind, args.q)
    exact = _use_exact(args, args.n_max, config)
    mode = "exact" if exact else "numeric"
    cache = TableCache(config.cache_path, engine_version()) if config.cache_enabled else None
    key = cache_key(f"{args.kind}-{mode}", args.q, args.m, args.n_max, engine_version())

    rows = cache.get(key) if cache is not None else None
    if rows is None:
        rows = table_rows(args.kind, args.q, args.m, args.n_max, exact, config)
        if cache is not None:
            cache.set(key, rows)

    q_text = "-" if args.q is None else str(args.q)
    full = [[args.kind, q_text, n, args.m, value_exact, value_float] for n, value_exact, value_float in rows]
    if args.format == "json":
        records = [dict(zip(TABLE_HEADER, row)) for row in full]
        _emit(dumps_json(records).decode("utf-8"), args.output)
    else:
        _emit(render_csv(TABLE_HEADER, full), args.output)
    return EXIT_OK


def cmd_buchstab(args: argparse.Namespace, config: EngineConfig) -> int:
    """ω(u) at one point, or the whole grid as CSV (closed form on [1, 3] for comparison)."""
    grid = get_context(config).omega
    if args.dump is not None:
        path = Path(args.dump) if args.dump else config.output_dir / "omega.csv"
        dump_grid(grid, path, omega_closed_form, "closed_form")
        print(path)
        return EXIT_OK
    print(f"{format_float(float(grid(args.u)))} +- {format_float(grid.error_at(args.u))}")
    return EXIT_OK


def cmd_dfunc(args: argparse.Namespace, config: EngineConfig) -> int:
    """d(u) at one point, or the grid as CSV with the C/(u+1) asymptote."""
    ctx = get_context(config)
    if args.dump is not None:
        grid = ctx.d
        path = Path(args.dump) if args.dump else config.output_dir / "dfunc.csv"
        big_c = ctx.big_c
        dump_grid(grid, path, lambda u: big_c / (u + 1.0), "asymptote")
        print(path)
        return EXIT_OK
    error = ctx.d.error_at(args.u) if 1.0 < args.u < ctx.d_end else 0.0
    print(f"{format_float(ctx.d_value(args.u))} +- {format_float(error)}")
    return EXIT_OK


def cmd_constants(args: argparse.Namespace, config: EngineConfig) -> int:
    """C, κ, τ to six decimals on stdout; all digits to constants.json."""
    if args.precision is not None:
        config = config.model_copy(update={"precision_bits": args.precision})
    bundle = get_context(config).constants
    print(f"C={float(bundle.C):.6f}")
    print(f"kappa={float(bundle.kappa):.6f}")
    print(f"tau={float(bundle.tau):.6f}")
    write_json(config.output_dir / "constants.json", bundle.as_dict())
    return EXIT_OK


def cmd_census(args: argparse.Namespace, config: EngineConfig) -> int:
    """Exhaustive census; prints one CSV row per m."""
    if args.kind == "poly":
        if args.q is None:
            raise InvalidParameterError("q", "-", "a field size for the polynomial census")
        gf = field_of_size(args.q, config.enumeration_budget)
        poly = census_poly(gf, args.n, config.enumeration_budget)
        rows = [[m, poly.f_counts[m], poly.r_counts[m]] for m in sorted(poly.f_counts)]
        sys.stdout.write(render_csv(("m", "f_count", "r_count"), rows))
        print(f"# total={poly.total} criterion_agrees={str(poly.criterion_agrees).lower()}")
        return EXIT_OK
    perm = census_perm(args.n, config.perm_census_max_n)
    perm_rows = [[m, format_ratio(perm.g[m]), format_ratio(perm.p[m])] for m in sorted(perm.g)]
    sys.stdout.write(render_csv(("m", "g", "p"), perm_rows))
    print(f"# types={perm.types} criterion_agrees={str(perm.criterion_agrees).lower()}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: EngineConfig) -> int:
    """Run a suite; exit 1 when any check fails."""
    campaign = run_campaign(args.suite, config, args.report)
    for check in campaign.checks:
        print(check.summary())
    return EXIT_OK if campaign.passed else EXIT_FAILED


def cmd_estimate(args: argparse.Namespace, config: EngineConfig) -> int:
    """ĉ_q or η̂_q(m) with its stability indicator, as JSON."""
    if args.kind == "cq":
        if args.q is None:
            raise InvalidParameterError("q", "-", "a field size for c_q")
        estimate = cq_estimate(args.q, args.n or 1000, config)
    elif args.q is None:
        estimate = perm_eta_estimate(args.m, args.n, config)
    elif args.balanced:
        estimate = eta_at_balanced_degree(args.q, args.m, config)
    else:
        estimate = eta_estimate(args.q, args.m, args.n, config)
    sys.stdout.write(dumps_json(estimate.as_dict()).decode("utf-8"))
    return EXIT_OK
