"""Floating-point evaluation of the rough and gap recurrences for large n.

# AICODE-NOTE: The numeric tables run the same recurrences as the exact engine
# in float64. Rough columns are materialized as a triangular 2-D array
# (row j - m holds column j up to n_max - (j - m), about n_max²/4 live cells).
# Inner convolutions are compensated dot products: every product is split
# exactly (Veltkamp/Dekker) and its rounding residual is added back, so the
# only remaining error is the pairwise summation of positive terms. Each
# column carries a relative drift bound that feeds the outer gap sums, which
# use math.fsum. The combined estimate is logged when it exceeds the
# configured warning level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt

from divgaps.config import EngineConfig
from divgaps.errors import InvalidParameterError, UnknownKindError
from divgaps.exact.gaps import f_table, g_table
from divgaps.exact.irreducibles import irr_count
from divgaps.exact.models import check_nonnegative, require_field_size
from divgaps.exact.rough import perm_rough_column, rough_counts
from divgaps.utils.logging import get_logger, log_operation
from divgaps.utils.serialization import ratio_to_float

logger = get_logger(__name__)

TableKind = Literal["r", "p", "f", "g"]
TABLE_KINDS: tuple[str, ...] = ("r", "p", "f", "g")

FloatArray = npt.NDArray[np.float64]

EPS = float(np.finfo(np.float64).eps)
# 2^27 + 1 splits a double into two halves of at most 26 significant bits.
_SPLITTER = 134217729.0
# numpy sums blocks of up to 128 elements with 8 accumulators before pairing.
_PAIRWISE_BLOCK_ERROR = 16


@dataclass(frozen=True)
class NumericTable:
    """
    Float values of r, p, f or g for n = 0..n_max at fixed m.

    Attributes:
        kind: "r", "p", "f" or "g"
        q: Field size, None for the permutation kinds
        m: Second argument
        values: Read-only float64 array indexed by n
        error_estimate: Largest relative rounding-error estimate over the table
        overlap_deviation: Largest relative deviation from exact values on the
            validated overlap range, None when no overlap was checked
        overlap_range: (first, last) n of the overlap check
    """

    kind: str
    q: int | None
    m: int
    values: FloatArray = field(repr=False)
    error_estimate: float = 0.0
    overlap_deviation: float | None = None
    overlap_range: tuple[int, int] | None = None

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> float:
        return float(self.values[n])


def _split(values: FloatArray) -> tuple[FloatArray, FloatArray]:
    """values = high + low exactly, with high·high' and the cross terms exact."""
    scaled = _SPLITTER * values
    high = scaled - (scaled - values)
    return high, values - high


def _two_sum(a: float | FloatArray, b: FloatArray) -> tuple[FloatArray, FloatArray]:
    """s + err = a + b exactly (Knuth)."""
    total = a + b
    shifted = total - a
    return total, (a - (total - shifted)) + (b - shifted)


def compensated_dot(
    x: FloatArray,
    y: FloatArray,
    x_split: tuple[FloatArray, FloatArray] | None = None,
    y_split: tuple[FloatArray, FloatArray] | None = None,
) -> float:
    """
    Dot product with exact per-term product residuals added back.

    Splits may be passed in when either operand is reused across calls.
    """
    x_high, x_low = x_split if x_split is not None else _split(x)
    y_high, y_low = y_split if y_split is not None else _split(y)
    products = x * y
    residuals = x_low * y_low - (
        ((products - x_high * y_high) - x_low * y_high) - x_high * y_low
    )
    return float(np.sum(products)) + float(np.sum(residuals))


def _dot_error(length: int) -> float:
    """Relative bound of compensated_dot over `length` nonnegative terms, plus one rounding."""
    return EPS * (_PAIRWISE_BLOCK_ERROR + math.log2(max(length, 1)) + 2)


def _rough_kernels(q: int, columns: list[int], n_max: int) -> dict[int, FloatArray]:
    """
    a_t^{(j)} = q^{-t} Σ_{k|t, k>j} k·I_k for every requested column j.

    Contributions are added for k descending, so each snapshot is a sum of
    positive terms only.
    """
    wanted = set(columns)
    kernels: dict[int, FloatArray] = {}
    acc = np.zeros(n_max + 1)
    for j in wanted:
        if j >= n_max:
            kernels[j] = acc.copy()
    for k in range(n_max, 0, -1):
        weight = k * irr_count(q, k) / q**k
        steps = n_max // k
        acc[k::k] += weight * np.power(float(q), -k * np.arange(steps, dtype=np.float64))
        if (k - 1) in wanted and (k - 1) not in kernels:
            kernels[k - 1] = acc.copy()
    return kernels


def _rough_column(kernel: FloatArray, j: int, length: int) -> tuple[FloatArray, float]:
    """
    r(n, j) for n = 0..length from n·r(n) = Σ_{t>j} a_t r(n - t).

    Returns the column and a relative error bound. Kernel and column are
    nonnegative, so the bound of r(n) is the largest bound among the values it
    reads plus the bound of its own dot product.
    """
    r = np.zeros(length + 1)
    r_high = np.zeros(length + 1)
    r_low = np.zeros(length + 1)
    r[0] = r_high[0] = 1.0
    k_high, k_low = _split(kernel)
    drift = 0.0
    for n in range(j + 1, length + 1):
        window = slice(j + 1, n + 1)
        history = slice(n - j - 1, None, -1)
        value = compensated_dot(
            kernel[window],
            r[history],
            (k_high[window], k_low[window]),
            (r_high[history], r_low[history]),
        ) / n
        r[n] = value
        scaled = _SPLITTER * value
        r_high[n] = scaled - (scaled - value)
        r_low[n] = value - r_high[n]
        drift += _dot_error(n - j)
    return r, drift


def _perm_column(b: int, length: int) -> tuple[FloatArray, float]:
    """
    p(n, b) for n = 0..length with its relative error bound.

    n·p(n) = 1 + S(n - b - 1) only reads p up to n - b - 1, so blocks of b + 1
    consecutive n are evaluated at once. The running prefix S is kept as a
    high part plus a carried TwoSum residual.
    """
    p = np.zeros(length + 1)
    prefix = np.zeros(length + 1)  # Σ_{b<k<=i} p(k) = prefix + carry
    carry = np.zeros(length + 1)
    p[0] = 1.0
    drift = 0.0
    start = b + 1
    while start <= length:
        end = min(start + b, length)
        window = slice(start - b - 1, end - b)
        p[start : end + 1] = (1.0 + (prefix[window] + carry[window])) / np.arange(
            start, end + 1, dtype=np.float64
        )
        total, residual = _two_sum(prefix[start - 1], np.cumsum(p[start : end + 1]))
        prefix[start : end + 1] = total
        carry[start : end + 1] = carry[start - 1] + residual
        drift += EPS * (end - start + 4)
        start = end + 1
    return p, drift


def _gap_sums(
    base: FloatArray, m: int, n_max: int, base_error: float = 0.0
) -> tuple[FloatArray, float]:
    """
    Solve 1 = Σ_k h(k)·base[k, n - k] for h, with base row k holding column k + m.

    base_error is the relative error bound of the base columns. Returns the
    values and the largest relative error estimate.
    """
    values = np.zeros(n_max + 1)
    worst = 0.0
    for n in range(n_max + 1):
        count = max(0, (n - m + 1) // 2)
        if count == 0:
            values[n] = 1.0
            continue
        ks = np.arange(count)
        terms = values[:count] * base[ks, n - ks]
        result = 1.0 - math.fsum(terms.tolist())
        values[n] = result
        if result != 0.0:
            magnitude = 1.0 + float(np.sum(np.abs(terms)))
            worst = max(worst, (EPS + base_error) * magnitude / abs(result))
    return values, worst


def _f_numeric(q: int, m: int, n_max: int) -> tuple[FloatArray, float]:
    count = max(1, (n_max - m + 1) // 2)
    columns = [m + k for k in range(count)]
    kernels = _rough_kernels(q, columns, n_max)
    base = np.zeros((count, n_max + 1))
    base_error = 0.0
    for k, j in enumerate(columns):
        column, drift = _rough_column(kernels[j], j, n_max - k)
        base[k] = _pad(column, n_max)
        base_error = max(base_error, drift)
        log_operation(logger, "column_built", kind="r", q=q, m=j, n_max=n_max - k)
    return _gap_sums(base, m, n_max, base_error)


def _g_numeric(m: int, n_max: int) -> tuple[FloatArray, float]:
    count = max(1, (n_max - m + 1) // 2)
    base = np.zeros((count, n_max + 1))
    base_error = 0.0
    for k in range(count):
        column, drift = _perm_column(m + k, n_max - k)
        base[k] = _pad(column, n_max)
        base_error = max(base_error, drift)
    return _gap_sums(base, m, n_max, base_error)


def _pad(column: FloatArray, n_max: int) -> FloatArray:
    out = np.zeros(n_max + 1)
    out[: len(column)] = column
    return out


def _exact_floats(kind: str, q: int | None, m: int, n_max: int) -> list[float]:
    if kind == "r":
        field_size = require_field_size(q, kind)
        counts = rough_counts(field_size, m, n_max)
        return [count / field_size**n for n, count in enumerate(counts)]
    if kind == "p":
        return [ratio_to_float(v) for v in perm_rough_column(m, n_max)]
    if kind == "f":
        return [ratio_to_float(v) for v in f_table(require_field_size(q, kind), m, n_max)]
    return [ratio_to_float(v) for v in g_table(m, n_max)]


def validate_overlap(
    table: NumericTable, config: EngineConfig
) -> tuple[float | None, tuple[int, int] | None]:
    """
    Relative deviation of a numeric table from exact values on
    [exact_threshold - overlap_window, exact_threshold] ∩ [0, n_max].
    """
    first = max(0, config.exact_threshold - config.overlap_window)
    last = min(config.exact_threshold, table.n_max)
    if first > last:
        return None, None
    exact = _exact_floats(table.kind, table.q, table.m, last)
    worst = 0.0
    for n in range(first, last + 1):
        reference = exact[n]
        diff = abs(table.values[n] - reference)
        worst = max(worst, diff / abs(reference) if reference else diff)
    if worst > config.numeric_overlap_tolerance:
        log_operation(
            logger,
            "overlap_deviation",
            kind=table.kind,
            q=table.q,
            m=table.m,
            deviation=f"{worst:.3e}",
            tolerance=config.numeric_overlap_tolerance,
        )
    return worst, (first, last)


def numeric_tables(
    kind: str,
    q: int | None,
    m: int,
    n_max: int,
    config: EngineConfig | None = None,
    validate: bool = True,
) -> NumericTable:
    """
    Evaluate r, p, f or g for n = 0..n_max in floating point.

    Args:
        kind: "r", "p", "f" or "g"
        q: Field size for r and f; must be None for p and g
        m: Second argument (m >= 1 for f and g)
        n_max: Largest n (up to about 10^4)
        config: Supplies the overlap range and warning thresholds
        validate: Compare against exact values on the overlap range

    Returns:
        NumericTable

    Raises:
        UnknownKindError: If kind is not one of r, p, f, g
        InvalidParameterError: On malformed q, m or n_max
    """
    if kind not in TABLE_KINDS:
        raise UnknownKindError(kind, list(TABLE_KINDS))
    config = config or EngineConfig()
    check_nonnegative("n_max", n_max)
    check_nonnegative("m", m)
    if kind in ("r", "f"):
        field_size = require_field_size(q, kind)
    elif q is not None:
        raise InvalidParameterError("q", q, f"no field size for permutation kind '{kind}'")
    if kind in ("f", "g") and m < 1:
        raise InvalidParameterError("m", m, "m >= 1 for gap proportions")

    if kind == "r":
        values, error = _rough_column(_rough_kernels(field_size, [m], n_max)[m], m, n_max)
    elif kind == "p":
        values, error = _perm_column(m, n_max)
    elif kind == "f":
        values, error = _f_numeric(field_size, m, n_max)
    else:
        values, error = _g_numeric(m, n_max)

    if error > config.precision_warning:
        log_operation(
            logger,
            "precision_loss_warning",
            kind=kind,
            q=q,
            m=m,
            n_max=n_max,
            estimate=f"{error:.3e}",
        )

    values.setflags(write=False)
    table = NumericTable(kind=kind, q=q, m=m, values=values, error_estimate=error)
    if validate:
        deviation, overlap = validate_overlap(table, config)
        table = NumericTable(
            kind=kind,
            q=q,
            m=m,
            values=values,
            error_estimate=error,
            overlap_deviation=deviation,
            overlap_range=overlap,
        )
    log_operation(logger, "table_built", kind=f"{kind}_numeric", q=q, m=m, n_max=n_max)
    return table
