"""Verification checks tying exact tables, censuses and asymptotic predictors together.

# AICODE-NOTE: The O-constants of the asymptotic statements are unknown. A
# fitted check measures error/shape on a training range, fits B as the maximum,
# and reports the growth of that maximum once the extension range is added;
# the statement's shape is confirmed when the growth stays <= 2. Exact checks
# (oracle, dual, identities) report a mismatch count against threshold 0.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

import mpmath
import numpy as np
from scipy.special import rgamma

from divgaps.asymptotics.buchstab import omega_grid_error
from divgaps.asymptotics.context import AsymptoticContext, get_context
from divgaps.asymptotics.dfunc import asymptote_deviation, solve_d
from divgaps.asymptotics.predictors import predict
from divgaps.config import EngineConfig
from divgaps.errors import InvalidParameterError, UnknownKindError
from divgaps.exact.estimates import cq_estimate
from divgaps.exact.gaps import f_counts, g_counts
from divgaps.exact.irreducibles import irr_count
from divgaps.exact.models import require_field_size
from divgaps.exact.numeric import numeric_tables
from divgaps.exact.products import exp_neg_harmonic, lambda_q
from divgaps.exact.rough import (
    perm_rough_column,
    perm_rough_gf,
    rough_counts,
    rough_recurrence_residual,
    rough_table_gf,
    rough_table_rec,
)
from divgaps.oracle.census import census_perm, census_poly_range
from divgaps.oracle.field import field_of_size
from divgaps.utils.logging import get_logger, log_operation
from divgaps.utils.serialization import ratio_to_float
from divgaps.verify.report import CheckReport, ConvergenceRow

logger = get_logger(__name__)

FIT_GROWTH = 2.0
# Smallest training shape over smallest overall shape. A constant-factor error
# that dominates the true error grows by about this span over the fit.
MIN_SHAPE_SPAN = 4.0
REFERENCE_CONSTANTS = {"C": 2.280291, "kappa": 0.433489, "tau": 0.205466}
MISMATCH_SAMPLE = 20


@dataclass
class Outcome:
    """What a check function measured; the runner turns it into a CheckReport."""

    worst: float
    threshold: float
    parameter_range: dict[str, Any]
    details: dict[str, Any] = field(default_factory=dict)
    rows: list[ConvergenceRow] = field(default_factory=list)


@dataclass(frozen=True)
class Sample:
    """One measured point of a fitted check: error against the statement's shape."""

    q: int | None
    n: int
    m: int
    computed: float
    predicted: float
    error: float
    shape: float

    def row(self, kind: str) -> ConvergenceRow:
        return ConvergenceRow(
            kind=kind,
            q=self.q,
            n=self.n,
            m=self.m,
            computed=self.computed,
            predicted=self.predicted,
        )


def relative_sample(
    q: int | None, n: int, m: int, computed: float, predicted: float, shape: float
) -> Sample:
    error = abs(computed / predicted - 1.0) if predicted else abs(computed)
    return Sample(q, n, m, computed, predicted, error, shape)


def fitted_outcome(
    kind: str,
    train: list[Sample],
    extension: list[Sample],
    parameter_range: dict[str, Any],
    resolution: float = 0.0,
    min_span: float = MIN_SHAPE_SPAN,
) -> Outcome:
    """
    Fit B = max error/shape on the training samples; worst = B over all samples / B.

    Samples whose shape is at or below `resolution` cannot be measured at the
    working precision and are skipped (their count is reported).

    A predictor off by a constant factor c has error/shape growing like
    (c - 1)/shape, so it exceeds FIT_GROWTH only when the smallest shape
    reached overall is at least min_span times below the smallest training
    shape. Narrower ranges are rejected.

    Raises:
        InvalidParameterError: If no training sample is measurable, or the
            shapes shrink by less than min_span beyond the training range
    """
    usable_train = [s for s in train if s.shape > resolution]
    usable_extension = [s for s in extension if s.shape > resolution]
    if not usable_train:
        raise InvalidParameterError("train", len(train), "at least one measurable sample")
    train_floor = min(s.shape for s in usable_train)
    overall_floor = min([train_floor] + [s.shape for s in usable_extension])
    span = train_floor / overall_floor
    if span < min_span:
        raise InvalidParameterError(
            "extension",
            parameter_range,
            f"shapes reaching {min_span:g}x below the training range (got {span:.3g}x)",
        )
    peak = max(usable_train, key=lambda s: s.error / s.shape)
    fitted = peak.error / peak.shape
    overall = max([fitted] + [s.error / s.shape for s in usable_extension])
    if overall == 0.0:
        growth = 0.0
    elif fitted == 0.0:
        growth = math.inf
    else:
        growth = overall / fitted
    return Outcome(
        worst=growth,
        threshold=FIT_GROWTH,
        parameter_range=parameter_range,
        details={
            "fitted_constant": fitted,
            "extended_constant": overall,
            "fitted_at": {
                "q": peak.q,
                "n": peak.n,
                "m": peak.m,
                "computed": peak.computed,
                "predicted": peak.predicted,
            },
            "shape_span": span,
            "training_samples": len(usable_train),
            "extension_samples": len(usable_extension),
            "skipped_below_resolution": len(train) + len(extension)
            - len(usable_train)
            - len(usable_extension),
        },
        rows=[s.row(kind) for s in train + extension],
    )


def _mp(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


def _tau(ctx: AsymptoticContext) -> float:
    return float(ctx.constants.tau)


# ---------------------------------------------------------------------------
# exact equalities


def _check_oracle(
    config: EngineConfig,
    ctx: AsymptoticContext,
    q_list: Iterable[int] = (2, 3, 4, 5),
    n_max_poly: int | dict[int, int] | None = None,
    n_max_perm: int = 40,
) -> Outcome:
    q_values = list(q_list)
    if n_max_poly is None:
        degrees = {q: config.census_degrees[q] for q in q_values}
    elif isinstance(n_max_poly, int):
        degrees = {q: n_max_poly for q in q_values}
    else:
        degrees = {q: n_max_poly[q] for q in q_values}

    mismatches: list[dict[str, Any]] = []
    cells = 0
    for q in q_values:
        n_max = degrees[q]
        gf = field_of_size(q, config.enumeration_budget)
        censuses = census_poly_range(gf, n_max, config.enumeration_budget)
        for d, count in enumerate(censuses[-1].irreducible_counts, start=1):
            if count != irr_count(q, d):
                mismatches.append({"q": q, "n": d, "kind": "irr", "census": count})
        for census in censuses:
            n = census.n
            if not census.criterion_agrees:
                mismatches.append({"q": q, "n": n, "kind": "prefix_criterion"})
            for m in range(1, n + 1):
                cells += 1
                f_exact = f_counts(q, m, n_max)[n]
                r_exact = rough_counts(q, m, n_max)[n]
                if census.f_counts[m] != f_exact:
                    mismatches.append(
                        {"q": q, "n": n, "m": m, "kind": "f", "census": census.f_counts[m], "exact": f_exact}
                    )
                if census.r_counts[m] != r_exact:
                    mismatches.append(
                        {"q": q, "n": n, "m": m, "kind": "r", "census": census.r_counts[m], "exact": r_exact}
                    )

    for n in range(0, n_max_perm + 1):
        census = census_perm(n, config.perm_census_max_n)
        if not census.criterion_agrees:
            mismatches.append({"q": None, "n": n, "kind": "prefix_criterion"})
        for m in sorted(census.g):
            g_census, p_census = census[m]
            cells += 1
            g_exact = Fraction(g_counts(m, n_max_perm)[n], math.factorial(n))
            p_exact = perm_rough_column(m, n_max_perm)[n]
            if g_census != g_exact:
                mismatches.append(
                    {"q": None, "n": n, "m": m, "kind": "g", "census": str(g_census), "exact": str(g_exact)}
                )
            if p_census != p_exact:
                mismatches.append(
                    {"q": None, "n": n, "m": m, "kind": "p", "census": str(p_census), "exact": str(p_exact)}
                )

    return Outcome(
        worst=float(len(mismatches)),
        threshold=0.0,
        parameter_range={
            "q": q_values,
            "n_max_poly": {str(q): n for q, n in degrees.items()},
            "n_max_perm": n_max_perm,
        },
        details={
            "cells": cells,
            "mismatch_count": len(mismatches),
            "mismatches": mismatches[:MISMATCH_SAMPLE],
        },
    )


def _check_dual(
    config: EngineConfig,
    ctx: AsymptoticContext,
    q_list: Iterable[int] = (2, 3, 5),
    n_max: int = 200,
    m_max: int = 20,
) -> Outcome:
    q_values = list(q_list)
    mismatches: list[dict[str, Any]] = []
    cells = 0
    for q in q_values:
        for m in range(1, m_max + 1):
            by_gf = rough_table_gf(q, m, n_max, config.coefficient_bit_cap).counts
            by_rec = rough_table_rec(q, m, n_max).counts
            for n, (a, b) in enumerate(zip(by_gf, by_rec)):
                cells += 1
                if a != b:
                    mismatches.append({"q": q, "n": n, "m": m, "kind": "r"})
    for m in range(1, m_max + 1):
        by_gf_p = perm_rough_gf(m, n_max)
        by_rec_p = perm_rough_column(m, n_max)
        for n, (a, b) in enumerate(zip(by_gf_p, by_rec_p)):
            cells += 1
            if a != b:
                mismatches.append({"q": None, "n": n, "m": m, "kind": "p"})
    return Outcome(
        worst=float(len(mismatches)),
        threshold=0.0,
        parameter_range={"q": q_values, "n_max": n_max, "m_max": m_max},
        details={
            "cells": cells,
            "mismatch_count": len(mismatches),
            "mismatches": mismatches[:MISMATCH_SAMPLE],
        },
    )


def check_identity_sums(
    config: EngineConfig,
    ctx: AsymptoticContext,
    q: int = 2,
    m_values: Iterable[int] = (1,),
    k_values: Iterable[int] = (50, 100, 200),
    lb_n_max: int = 30,
) -> Outcome:
    """
    Partial sums of Σ_k f(k,m) λ_q(k+m) and Σ_k g(k,m) e^{-H_{k+m}} at each K,
    plus f(n, m+1) <= q f(n+1, m) on every cell with n, m <= lb_n_max.

    worst counts violations: a sum at or above 1, a final (largest K) sum at or
    below 0.98, a non-increasing step in K, or a failing cell.
    """
    cutoffs = sorted(k_values)
    top = cutoffs[-1]
    precision = config.precision_bits
    rows: list[ConvergenceRow] = []
    violations: list[dict[str, Any]] = []
    sums: dict[str, dict[str, float]] = {}

    for m in m_values:
        f_exact = f_counts(q, m, top)
        g_exact = g_counts(m, top)
        with mpmath.workprec(precision):
            poly_terms = [
                _mp(Fraction(f_exact[k], q**k)) * lambda_q(q, k + m, precision).value
                for k in range(top + 1)
            ]
            perm_terms = [
                _mp(Fraction(g_exact[k], math.factorial(k))) * exp_neg_harmonic(k + m, precision).value
                for k in range(top + 1)
            ]
            for label, terms, field_size in (("se", poly_terms, q), ("sep", perm_terms, None)):
                previous = -math.inf
                key = f"{label}_m{m}"
                sums[key] = {}
                for cutoff in cutoffs:
                    partial = float(mpmath.fsum(terms[: cutoff + 1]))
                    sums[key][str(cutoff)] = partial
                    rows.append(
                        ConvergenceRow(kind=label, q=field_size, n=cutoff, m=m, computed=partial, predicted=1.0)
                    )
                    if partial >= 1.0 or (cutoff == top and partial <= 0.98):
                        violations.append({"identity": label, "m": m, "K": cutoff, "sum": partial})
                    if partial <= previous:
                        violations.append({"identity": label, "m": m, "K": cutoff, "monotone": False})
                    previous = partial

    lb_cells = 0
    for m in range(1, lb_n_max + 1):
        upper = f_counts(q, m, lb_n_max + 1)
        lower = f_counts(q, m + 1, lb_n_max)
        for n in range(lb_n_max + 1):
            lb_cells += 1
            # f(n, m+1) <= q f(n+1, m)  <=>  q^n f(n, m+1) <= q^{n+1} f(n+1, m)
            if lower[n] > upper[n + 1]:
                violations.append({"identity": "lb", "q": q, "n": n, "m": m})

    return Outcome(
        worst=float(len(violations)),
        threshold=0.0,
        parameter_range={"q": q, "m": list(m_values), "K": cutoffs, "lb_n_max": lb_n_max},
        details={"partial_sums": sums, "lb_cells": lb_cells, "violations": violations[:MISMATCH_SAMPLE]},
        rows=rows,
    )


# ---------------------------------------------------------------------------
# constants and grids


def _check_constants(config: EngineConfig, ctx: AsymptoticContext) -> Outcome:
    bundle = ctx.constants
    computed = {"C": float(bundle.C), "kappa": float(bundle.kappa), "tau": float(bundle.tau)}
    deviations = {key: abs(computed[key] - ref) for key, ref in REFERENCE_CONSTANTS.items()}
    return Outcome(
        worst=max(deviations.values()),
        threshold=5e-7,
        parameter_range={"grid_step": config.grid_step, "precision_bits": config.precision_bits},
        details={"constants": bundle.as_dict(), "deviations": deviations},
    )


def _check_buchstab(config: EngineConfig, ctx: AsymptoticContext) -> Outcome:
    h = config.grid_step
    errors = omega_grid_error(ctx.omega)
    return Outcome(
        worst=max(errors.values()),
        threshold=10.0 * h**4,
        parameter_range={"u": [1.0, 3.0], "grid_step": h},
        details=errors,
    )


def _check_buchstab_gamma(
    config: EngineConfig, ctx: AsymptoticContext, u_from: float = 10.0
) -> Outcome:
    grid = ctx.omega
    u = grid.points()
    mask = u >= u_from
    deviation = np.abs(grid.values[mask] - grid.tail_value)
    ratios = deviation / rgamma(u[mask] + 1.0)
    worst_at = float(u[mask][int(np.argmax(ratios))]) if ratios.size else u_from
    return Outcome(
        worst=float(ratios.max()) if ratios.size else 0.0,
        threshold=1.0,
        parameter_range={"u": [u_from, grid.end]},
        details={"worst_u": worst_at, "points": int(mask.sum())},
    )


def _d_rows(ctx: AsymptoticContext, u_values: Iterable[int]) -> list[ConvergenceRow]:
    grid = ctx.d
    return [
        ConvergenceRow(
            kind="idd3",
            n=u,
            m=1,
            computed=float(grid(float(u))),
            predicted=ctx.big_c / (u + 1.0),
        )
        for u in u_values
    ]


def _check_idd3(
    config: EngineConfig, ctx: AsymptoticContext, u: float = 20.0, tolerance: float = 0.05
) -> Outcome:
    deviation = asymptote_deviation(ctx.d, u)
    return Outcome(
        worst=deviation,
        threshold=tolerance,
        parameter_range={"u": u},
        rows=_d_rows(ctx, range(2, int(u) + 1)),
    )


def _check_idd3_trend(
    config: EngineConfig, ctx: AsymptoticContext, u: float = 20.0, base: float = 5.0
) -> Outcome:
    at_u = asymptote_deviation(ctx.d, u)
    at_base = asymptote_deviation(ctx.d, base)
    return Outcome(
        worst=at_u / at_base if at_base else math.inf,
        threshold=1.0,
        parameter_range={"u": [base, u]},
        details={"deviation_u": at_u, "deviation_base": at_base},
    )


def _check_dfunc_halving(
    config: EngineConfig, ctx: AsymptoticContext, u_max: float = 10.0, factor: float = 16.0
) -> Outcome:
    fine = ctx.d
    coarse = solve_d(u_max, 2.0 * config.grid_step, ctx.omega, ctx.big_c)
    points = coarse.points()
    fine_values = fine(points)
    budget = np.array([fine.error_at(float(u)) for u in points])
    difference = np.abs(fine_values - coarse.values)
    ratios = np.divide(difference, factor * budget, out=np.zeros_like(difference), where=budget > 0)
    return Outcome(
        worst=float(ratios.max()),
        threshold=1.0,
        parameter_range={"u": [0.0, coarse.end], "grid_step": config.grid_step},
        details={"max_difference": float(difference.max()), "factor": factor},
    )


# ---------------------------------------------------------------------------
# asymptotic statements at desk scale


def _check_thm1(
    config: EngineConfig, ctx: AsymptoticContext, q: int = 2, n: int = 2000
) -> Outcome:
    estimate = cq_estimate(q, n, config, ctx)
    table = numeric_tables("f", q, 1, n, config)
    rows = [
        ConvergenceRow(
            kind="thm1",
            q=q,
            n=k,
            m=1,
            computed=ctx.big_c * table[k] / ctx.d_value(float(k)),
            predicted=ctx.big_c,
        )
        for k in (n // 8, n // 4, n // 2, n)
    ]
    return Outcome(
        worst=abs(estimate.value / estimate.previous - 1.0),
        threshold=config.cq_stability,
        parameter_range={"q": q, "n": [n // 2, n]},
        details={"estimate": estimate.as_dict()},
        rows=rows,
    )


def _perm_product_rows(ctx: AsymptoticContext, values: np.ndarray, points: Iterable[int]) -> list[ConvergenceRow]:
    return [
        ConvergenceRow(kind="thm4", n=k, m=1, computed=k * float(values[k]), predicted=ctx.big_c)
        for k in points
    ]


def _check_thm4(config: EngineConfig, ctx: AsymptoticContext, n: int = 2000) -> Outcome:
    table = numeric_tables("g", None, 1, n, config)
    value = n * table[n]
    return Outcome(
        worst=abs(value / ctx.big_c - 1.0),
        threshold=config.thm4_tolerance,
        parameter_range={"n": n, "m": 1},
        details={"n_g": value, "C": ctx.big_c},
        rows=_perm_product_rows(ctx, table.values, (n // 16, n // 8, n // 4, n // 2, n)),
    )


def _check_thm4_trend(
    config: EngineConfig, ctx: AsymptoticContext, n: int = 2000, base: int = 500
) -> Outcome:
    table = numeric_tables("g", None, 1, n, config)
    at_n = abs(n * table[n] - ctx.big_c)
    at_base = abs(base * table[base] - ctx.big_c)
    return Outcome(
        worst=at_n / at_base if at_base else math.inf,
        threshold=1.0,
        parameter_range={"n": [base, n], "m": 1},
        details={"deviation_n": at_n, "deviation_base": at_base},
    )


def _gap_samples(
    ctx: AsymptoticContext,
    kind: str,
    q: int | None,
    m: int,
    n_range: range,
    exact: tuple[int, ...],
    shape: Callable[[int, int], float],
) -> list[Sample]:
    samples = []
    for n in n_range:
        scale = q**n if q is not None else math.factorial(n)
        computed = ratio_to_float(Fraction(exact[n], scale))
        predicted = predict(kind, q, n, m, ctx)
        samples.append(relative_sample(q, n, m, computed, predicted, shape(n, m)))
    return samples


def _gap_check(
    config: EngineConfig,
    ctx: AsymptoticContext,
    check_id: str,
    kind: str,
    q_values: tuple[int | None, ...],
    m_values: Iterable[int],
    n_train: int,
    n_max: int,
    shape: Callable[[int | None, int, int], float],
    n_from_m: bool,
    m_extension: Iterable[int] = (),
) -> Outcome:
    """
    Train on the first q and m_values for n <= n_train; every other cell extends.

    Other q values and the m_extension values contribute all their n.
    """
    train: list[Sample] = []
    extension: list[Sample] = []
    m_train = tuple(m_values)
    m_extra = tuple(m_extension)
    for index, q in enumerate(q_values):
        for m in m_train + m_extra:
            exact = f_counts(q, m, n_max) if q is not None else g_counts(m, n_max)
            start = m if n_from_m else 0

            def bound(n: int, m: int, q: int | None = q) -> float:
                return shape(q, n, m)

            if index == 0 and m in m_train:
                train += _gap_samples(ctx, kind, q, m, range(start, n_train + 1), exact, bound)
                extension += _gap_samples(ctx, kind, q, m, range(n_train + 1, n_max + 1), exact, bound)
            else:
                extension += _gap_samples(ctx, kind, q, m, range(start, n_max + 1), exact, bound)
    return fitted_outcome(
        check_id,
        train,
        extension,
        {
            "q": list(q_values),
            "m": list(m_train),
            "m_extension": list(m_extra),
            "n_train": n_train,
            "n_max": n_max,
        },
    )


def _check_thm5(
    config: EngineConfig,
    ctx: AsymptoticContext,
    m_values: Iterable[int] = (1, 2, 3),
    n_train: int = 48,
    n_max: int = 240,
) -> Outcome:
    return _gap_check(
        config, ctx, "thm5", "g_thm5", (None,), tuple(m_values), n_train, n_max,
        lambda q, n, m: 1.0 / (n + m),
        n_from_m=False,
    )


def _check_cor1p(
    config: EngineConfig,
    ctx: AsymptoticContext,
    m_values: Iterable[int] = (1, 2, 3),
    n_train: int = 48,
    n_max: int = 240,
) -> Outcome:
    return _gap_check(
        config, ctx, "cor1P", "g_cor1P", (None,), tuple(m_values), n_train, n_max,
        lambda q, n, m: m * m / (n * n) + 1.0 / n,
        n_from_m=True,
    )


def _eta_term(ctx: AsymptoticContext, q: int | None, m: int) -> float:
    return 1.0 / (m * require_field_size(q, "eta") ** ((m + 1) * _tau(ctx)))


# The η term keeps the f shapes from shrinking along n alone; larger m extends them.
def _check_cor2(
    config: EngineConfig,
    ctx: AsymptoticContext,
    q_list: Iterable[int] = (2, 3),
    m_values: Iterable[int] = (1, 2, 3),
    n_train: int = 48,
    n_max: int = 240,
    m_extension: Iterable[int] = (4, 5, 6),
) -> Outcome:
    return _gap_check(
        config, ctx, "cor2", "f_cor2", tuple(q_list), tuple(m_values), n_train, n_max,
        lambda q, n, m: m * m / (n * n) + 1.0 / n + _eta_term(ctx, q, m),
        n_from_m=True,
        m_extension=tuple(m_extension),
    )


def _check_cor3(
    config: EngineConfig,
    ctx: AsymptoticContext,
    q_list: Iterable[int] = (2, 3),
    m_values: Iterable[int] = (1, 2, 3),
    n_train: int = 48,
    n_max: int = 240,
    m_extension: Iterable[int] = (4, 5, 6),
) -> Outcome:
    return _gap_check(
        config, ctx, "cor3", "f_cor3", tuple(q_list), tuple(m_values), n_train, n_max,
        lambda q, n, m: 1.0 / (n + m) + _eta_term(ctx, q, m),
        n_from_m=False,
        m_extension=tuple(m_extension),
    )


def _super_exponential(n: int, m: int, divide: bool) -> float:
    """(u/e)^{-u}, optionally divided by m, for u = n/m."""
    u = n / m
    value = math.exp(-u * (math.log(u) - 1.0))
    return value / m if divide else value


def _rough_samples(
    ctx: AsymptoticContext,
    kind: str,
    q: int | None,
    m: int,
    n_range: Iterable[int],
    shape: Callable[[int, int], float],
) -> list[Sample]:
    n_values = list(n_range)
    if not n_values:
        return []
    top = n_values[-1]
    if q is not None:
        counts = rough_counts(q, m, top)
        exact = [Fraction(counts[n], q**n) for n in range(top + 1)]
    else:
        exact = list(perm_rough_column(m, top))
    return [
        relative_sample(q, n, m, ratio_to_float(exact[n]), predict(kind, q, n, m, ctx), shape(n, m))
        for n in n_values
    ]


def _rough_check(
    ctx: AsymptoticContext,
    check_id: str,
    kind: str,
    q: int | None,
    m_train: Iterable[int],
    m_extension: Iterable[int],
    u_max: int,
    shape: Callable[[int, int], float],
    u_train: int | None = None,
) -> Outcome:
    """
    Fit on m_train for m < n <= u_train·m, extend to u_max·m and over m_extension.

    Without u_train the split is by m alone; a shape that depends on u only
    needs the split along u.
    """
    split = u_max if u_train is None else u_train
    train: list[Sample] = []
    extension: list[Sample] = []
    for m in m_train:
        samples = _rough_samples(ctx, kind, q, m, range(m + 1, u_max * m + 1), shape)
        train += [s for s in samples if s.n <= split * m]
        extension += [s for s in samples if s.n > split * m]
    for m in m_extension:
        extension += _rough_samples(ctx, kind, q, m, range(m + 1, u_max * m + 1), shape)
    return fitted_outcome(
        check_id,
        train,
        extension,
        {
            "q": q,
            "m_train": list(m_train),
            "m_extension": list(m_extension),
            "u_train": split,
            "u_max": u_max,
        },
    )


def _check_thm2(config: EngineConfig, ctx: AsymptoticContext, q: int = 2, u_max: int = 6) -> Outcome:
    return _rough_check(
        ctx, "thm2", "r_thm2", q, range(2, 5), range(5, 21), u_max,
        lambda n, m: _super_exponential(n, m, divide=True),
    )


def _check_cora(config: EngineConfig, ctx: AsymptoticContext, q: int = 2, u_max: int = 6) -> Outcome:
    return _rough_check(ctx, "cora", "r_cora", q, range(2, 5), range(5, 21), u_max, lambda n, m: 1.0 / m)


def _check_corb(
    config: EngineConfig, ctx: AsymptoticContext, q: int = 2, u_train: int = 3, u_max: int = 6
) -> Outcome:
    return _rough_check(
        ctx, "corb", "r_corb", q, range(2, 11), (), u_max,
        lambda n, m: _super_exponential(n, m, divide=False),
        u_train=u_train,
    )


def _check_fullp(config: EngineConfig, ctx: AsymptoticContext, u_max: int = 6) -> Outcome:
    return _rough_check(
        ctx, "fullp", "p_fullp", None, range(2, 5), range(5, 21), u_max,
        lambda n, m: _super_exponential(n, m, divide=True),
    )


def _check_pub(config: EngineConfig, ctx: AsymptoticContext, u_max: int = 6) -> Outcome:
    return _rough_check(ctx, "pub", "p_pub", None, range(2, 5), range(5, 21), u_max, lambda n, m: 1.0 / m)


def _tail_samples(config: EngineConfig, q: int | None, n_range: range) -> list[Sample]:
    """
    r(n, m) against λ_q(m) (or p against e^{-H_m}) for m < n and m <= n / log n, in mpmath.

    n = m is left out: r(m, m) = 0 measures nothing about the tail.
    """
    precision = config.precision_bits
    top = n_range.stop - 1
    samples = []
    m_max = max(1, int(top / math.log(top)))
    for m in range(1, m_max + 1):
        if q is not None:
            counts = rough_counts(q, m, top)
            limit = lambda_q(q, m, precision).value
        else:
            column = perm_rough_column(m, top)
            limit = exp_neg_harmonic(m, precision).value
        for n in n_range:
            if n <= m or m > n / math.log(n):
                continue
            exact = Fraction(counts[n], q**n) if q is not None else column[n]
            with mpmath.workprec(precision):
                error = abs(_mp(exact) / limit - 1)
            samples.append(
                Sample(
                    q=q,
                    n=n,
                    m=m,
                    computed=ratio_to_float(exact),
                    predicted=float(limit),
                    error=float(error),
                    shape=_super_exponential(n, m, divide=True),
                )
            )
    return samples


def _check_tail(
    config: EngineConfig, check_id: str, q: int | None, n_train: int, n_max: int
) -> Outcome:
    train = _tail_samples(config, q, range(2, n_train + 1))
    extension = _tail_samples(config, q, range(n_train + 1, n_max + 1))
    # differences below about 2^{-precision/2} are rounding noise of the mpmath ratio
    resolution = 2.0 ** (-config.precision_bits // 2)
    return fitted_outcome(
        check_id, train, extension, {"q": q, "n_train": n_train, "n_max": n_max}, resolution
    )


def _check_rsm(
    config: EngineConfig, ctx: AsymptoticContext, q: int = 2, n_train: int = 25, n_max: int = 100
) -> Outcome:
    return _check_tail(config, "rsm", q, n_train, n_max)


def _check_psm(
    config: EngineConfig, ctx: AsymptoticContext, n_train: int = 25, n_max: int = 100
) -> Outcome:
    return _check_tail(config, "psm", None, n_train, n_max)


def _difference_check(
    check_id: str,
    q_train: int,
    q_extension: Iterable[int],
    n_train: int,
    n_max: int,
    measure: Callable[[int, int, int], tuple[float, float]],
    shape: Callable[[int, int, int], float],
) -> Outcome:
    """Absolute-difference fit over all n > m >= 1 (training q, n <= n_train)."""

    def samples(q: int, n_values: Iterable[int]) -> list[Sample]:
        out = []
        for n in n_values:
            for m in range(1, n):
                computed, predicted = measure(q, n, m)
                out.append(
                    Sample(q, n, m, computed, predicted, abs(computed - predicted), shape(q, n, m))
                )
        return out

    train = samples(q_train, range(2, n_train + 1))
    extension: list[Sample] = []
    for q in q_extension:
        start = n_train + 1 if q == q_train else 2
        extension += samples(q, range(start, n_max + 1))
    return fitted_outcome(
        check_id,
        train,
        extension,
        {"q_train": q_train, "q_extension": list(q_extension), "n_train": n_train, "n_max": n_max},
    )


def _check_rap(
    config: EngineConfig,
    ctx: AsymptoticContext,
    q_train: int = 2,
    q_extension: Iterable[int] = (2, 3),
    n_train: int = 30,
    n_max: int = 40,
) -> Outcome:
    def measure(q: int, n: int, m: int) -> tuple[float, float]:
        r = Fraction(rough_counts(q, m, n_max)[n], q**n)
        p = perm_rough_column(m, n_max)[n]
        return ratio_to_float(r), ratio_to_float(p)

    def shape(q: int, n: int, m: int) -> float:
        return 1.0 / (n * q ** (n / 2)) + 1.0 / (m * m * q ** ((m + 1) / 2))

    return _difference_check("rap", q_train, tuple(q_extension), n_train, n_max, measure, shape)


def _check_fandg(
    config: EngineConfig,
    ctx: AsymptoticContext,
    q_train: int = 2,
    q_extension: Iterable[int] = (2, 3),
    n_train: int = 30,
    n_max: int = 40,
) -> Outcome:
    kappa = float(ctx.constants.kappa)

    def measure(q: int, n: int, m: int) -> tuple[float, float]:
        f = Fraction(f_counts(q, m, n_max)[n], q**n)
        g = Fraction(g_counts(m, n_max)[n], math.factorial(n))
        return ratio_to_float(f), ratio_to_float(g)

    def shape(q: int, n: int, m: int) -> float:
        return n**kappa / (m ** (1.0 + kappa) * q ** ((m + 1) / 2))

    return _difference_check("fandg", q_train, tuple(q_extension), n_train, n_max, measure, shape)


def _check_fer(
    config: EngineConfig,
    ctx: AsymptoticContext,
    q_train: int = 2,
    q_extension: Iterable[int] = (2, 3),
    n_train: int = 30,
    n_max: int = 40,
) -> Outcome:
    def measure(q: int, n: int, m: int) -> tuple[float, float]:
        return ratio_to_float(rough_recurrence_residual(q, n, m)), 0.0

    def shape(q: int, n: int, m: int) -> float:
        return q ** (-n / 2) + 1.0 / (m * q ** ((m + 1) / 2))

    return _difference_check("fer", q_train, tuple(q_extension), n_train, n_max, measure, shape)


def _harmonic_deviation(q: int, m: int, precision: int) -> tuple[float, float, float]:
    """(λ_q(m), e^{-H_m}, |λ_q(m) e^{H_m} - 1|)."""
    limit = lambda_q(q, m, precision).value
    decay = exp_neg_harmonic(m, precision).value
    with mpmath.workprec(precision):
        deviation = abs(limit / decay - 1)
    return float(limit), float(decay), float(deviation)


def _check_cqh(
    config: EngineConfig, ctx: AsymptoticContext, q: int = 2, m: int = 30, tolerance: float = 1e-4
) -> Outcome:
    rows = []
    for k in range(1, m + 1):
        limit, decay, _ = _harmonic_deviation(q, k, config.precision_bits)
        rows.append(ConvergenceRow(kind="cqh", q=q, n=k, m=k, computed=limit, predicted=decay))
    _, _, deviation = _harmonic_deviation(q, m, config.precision_bits)
    return Outcome(
        worst=deviation,
        threshold=tolerance,
        parameter_range={"q": q, "m": [1, m]},
        rows=rows,
    )


def _check_cqh_rate(
    config: EngineConfig, ctx: AsymptoticContext, q: int = 2, m_from: int = 10, m_to: int = 12
) -> Outcome:
    _, _, before = _harmonic_deviation(q, m_from, config.precision_bits)
    _, _, after = _harmonic_deviation(q, m_to, config.precision_bits)
    return Outcome(
        worst=after / before if before else math.inf,
        threshold=0.5,
        parameter_range={"q": q, "m": [m_from, m_to]},
        details={"deviation_from": before, "deviation_to": after},
    )


# ---------------------------------------------------------------------------
# registry


CheckFunc = Callable[..., Outcome]


@dataclass(frozen=True)
class CheckSpec:
    """
    A registered check.

    Attributes:
        check_id: Registry key
        func: (config, context, **params) -> Outcome
        suite: Campaign suite the check belongs to
        anchor: The verified statement in words
    """

    check_id: str
    func: CheckFunc
    suite: str
    anchor: str


_CHECKS = (
    CheckSpec("oracle", _check_oracle, "oracle",
              "exact f, r, g, p tables equal exhaustive censuses cell by cell"),
    CheckSpec("dual", _check_dual, "oracle",
              "rough counts by product expansion equal rough counts by recurrence"),
    CheckSpec("constants", _check_constants, "constants",
              "C = 2.280291, κ = 0.433489, τ = 0.205466 to six decimals"),
    CheckSpec("buchstab", _check_buchstab, "constants",
              "ω = 1/u on [1,2] and (1 + log(u-1))/u on [2,3]"),
    CheckSpec("buchstab_gamma", _check_buchstab_gamma, "constants",
              "|ω(u) - e^{-γ}| < 1/Γ(u+1) for u >= 10"),
    CheckSpec("idd3", _check_idd3, "constants", "d(u) = C/(u+1) asymptotically"),
    CheckSpec("idd3_trend", _check_idd3_trend, "constants",
              "|d(u)(u+1)/C - 1| decreases from u = 5 to u = 20"),
    CheckSpec("dfunc_halving", _check_dfunc_halving, "constants",
              "halving the grid step moves d within 16 per-point error budgets"),
    CheckSpec("thm1", _check_thm1, "theorems",
              "a divisor of every degree below n: proportion c_q/n (1 + O(1/n))"),
    CheckSpec("thm4", _check_thm4, "theorems",
              "every integer below n a sum of distinct cycle lengths: proportion C/n (1 + O(1/n))"),
    CheckSpec("thm4_trend", _check_thm4_trend, "theorems", "|n g(n,1) - C| decays with n"),
    CheckSpec("thm5", _check_thm5, "theorems", "g(n,m) = d(n/m) (1 + O(1/(n+m)))"),
    CheckSpec("cor1P", _check_cor1p, "theorems", "g(n,m) = C m/(n+m) (1 + O(m²/n² + 1/n))"),
    CheckSpec("cor2", _check_cor2, "theorems",
              "f(n,m) = C m/(n+m) (1 + O(m²/n² + 1/n + 1/(m q^{(m+1)τ})))"),
    CheckSpec("cor3", _check_cor3, "theorems",
              "f(n,m) = d(n/m) (1 + O(1/(n+m) + 1/(m q^{(m+1)τ})))"),
    CheckSpec("thm2", _check_thm2, "theorems",
              "r(n,m) = λ_q(m) e^γ ω(u) (1 + O((u/e)^{-u}/m))"),
    CheckSpec("cora", _check_cora, "theorems", "r(n,m) = ω(u)/m (1 + O(1/m))"),
    CheckSpec("corb", _check_corb, "theorems", "r(n,m) = λ_q(m) (1 + O((u/e)^{-u}))"),
    CheckSpec("rsm", _check_rsm, "theorems",
              "r(n,m) = λ_q(m) (1 + O((u/e)^{-u}/m)) for m <= n/log n"),
    CheckSpec("psm", _check_psm, "theorems",
              "p(n,m) = e^{-H_m} (1 + O((u/e)^{-u}/m)) for m <= n/log n"),
    CheckSpec("fullp", _check_fullp, "theorems",
              "p(n,m) = e^{γ-H_m} ω(u) (1 + O((u/e)^{-u}/m))"),
    CheckSpec("pub", _check_pub, "theorems", "p(n,m) = ω(n/m)/m (1 + O(1/m))"),
    CheckSpec("rap", _check_rap, "theorems",
              "r(n,m) = p(n,m) + O(1/(n q^{n/2}) + 1/(m² q^{(m+1)/2}))"),
    CheckSpec("fandg", _check_fandg, "theorems",
              "f(n,m) = g(n,m) + O(n^κ/(m^{1+κ} q^{(m+1)/2}))"),
    CheckSpec("fer", _check_fer, "theorems",
              "n r(n,m) = 1 + Σ_{m<k<n-m} r(k,m) + O(q^{-n/2} + 1/(m q^{(m+1)/2}))"),
    CheckSpec("cqh", _check_cqh, "theorems", "λ_q(m) = e^{-H_m} (1 + O(1/(m q^{(m+1)/2})))"),
    CheckSpec("cqh_rate", _check_cqh_rate, "theorems",
              "|λ_2(m) e^{H_m} - 1| at least halves from m = 10 to m = 12"),
    CheckSpec("identities", check_identity_sums, "identities",
              "1 = Σ f(k,m) λ_q(k+m) = Σ g(k,m) e^{-H_{k+m}}; f(n,m+1) <= q f(n+1,m)"),
)

SUITES = ("all", "oracle", "constants", "theorems", "identities")


class CheckRegistry:
    """Registry of verification checks, keyed by check id."""

    def __init__(self) -> None:
        self._checks: dict[str, CheckSpec] = {}

    def register(self, entry: CheckSpec) -> None:
        self._checks[entry.check_id] = entry

    def kinds(self) -> list[str]:
        return sorted(self._checks)

    def get(self, check_id: str) -> CheckSpec:
        """
        Raises:
            UnknownKindError: If no check has this id
        """
        if check_id not in self._checks:
            raise UnknownKindError(check_id, self.kinds())
        return self._checks[check_id]

    def suite(self, name: str) -> list[str]:
        """Check ids of a suite; a single check id selects just that check."""
        if name == "all":
            return self.kinds()
        if name in SUITES:
            return sorted(c.check_id for c in self._checks.values() if c.suite == name)
        return [self.get(name).check_id]


_default_registry: CheckRegistry | None = None


def get_check_registry() -> CheckRegistry:
    global _default_registry
    if _default_registry is None:
        _default_registry = CheckRegistry()
        for entry in _CHECKS:
            _default_registry.register(entry)
    return _default_registry


def check_theorem(
    kind: str,
    params: dict[str, Any] | None = None,
    config: EngineConfig | None = None,
    context: AsymptoticContext | None = None,
) -> CheckReport:
    """
    Run one registered check.

    Args:
        kind: Check id (see get_check_registry().kinds())
        params: Overrides of the check's default ranges
        config: Engine configuration
        context: Solved grids; shared default context when omitted

    Returns:
        CheckReport with the check's convergence rows

    Raises:
        UnknownKindError: If kind is not registered

    Example:
        >>> check_theorem("cqh").passed
        True
    """
    entry = get_check_registry().get(kind)
    config = config or EngineConfig()
    ctx = context or get_context(config)
    started = time.perf_counter()
    outcome = entry.func(config, ctx, **(params or {}))
    runtime = time.perf_counter() - started
    report = CheckReport(
        check_id=entry.check_id,
        anchor=entry.anchor,
        parameter_range=outcome.parameter_range,
        worst_deviation=outcome.worst,
        threshold=outcome.threshold,
        runtime_seconds=runtime,
        details=outcome.details,
        rows=outcome.rows,
    )
    log_operation(
        logger,
        "check_completed",
        check_id=report.check_id,
        passed=report.passed,
        worst=f"{report.worst_deviation:.3e}",
        threshold=f"{report.threshold:.3e}",
        seconds=f"{runtime:.2f}",
    )
    return report


def check_oracle_equivalence(
    q_list: Iterable[int] = (2, 3, 4, 5),
    n_max_poly: int | dict[int, int] | None = None,
    n_max_perm: int = 40,
    config: EngineConfig | None = None,
) -> CheckReport:
    """
    Exact equality of exact-engine tables and exhaustive censuses.

    Args:
        q_list: Field sizes
        n_max_poly: Largest polynomial degree, per q or shared; defaults to
            config.census_degrees
        n_max_perm: Largest permutation size

    Returns:
        CheckReport; worst_deviation counts mismatching cells (threshold 0),
        the first mismatches are listed with their (q, n, m) in details
    """
    return check_theorem(
        "oracle",
        {"q_list": tuple(q_list), "n_max_poly": n_max_poly, "n_max_perm": n_max_perm},
        config,
    )


def check_identities(
    config: EngineConfig | None = None, params: dict[str, Any] | None = None
) -> CheckReport:
    """Partial sums of both summation identities and the f(n,m+1) <= q f(n+1,m) cells."""
    return check_theorem("identities", params, config)
