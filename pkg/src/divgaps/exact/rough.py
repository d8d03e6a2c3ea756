"""Rough counts: polynomials with no small divisors, permutations with no short cycles.

# AICODE-NOTE: Two independent derivations of R(n, m) live here on purpose:
# rough_table_gf (product expansion) and rough_table_rec (logarithmic-derivative
# recurrence). Verification compares them cell by cell, so neither may call the
# other.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from divgaps.errors import IntegralityError, InvalidParameterError
from divgaps.exact.irreducibles import irr_count, weighted_irr_sums
from divgaps.exact.models import ExactRatio, RoughTable, check_field_size, check_nonnegative
from divgaps.exact.series import TruncatedSeries, one_minus_z_power
from divgaps.utils.logging import get_logger, log_operation

logger = get_logger(__name__)

DEFAULT_BIT_CAP = 2**22


def rough_table_gf(
    q: int,
    m: int,
    n_max: int,
    bit_cap: int = DEFAULT_BIT_CAP,
) -> RoughTable:
    """
    R(n, m) = [z^n] F_m(z) for n = 0..n_max, from the product expansion.

    F_m(z) = Π_{k>m} (1 - z^k)^{-I_k} = P(z) / (1 - qz) with
    P(z) = Π_{k<=m} (1 - z^k)^{I_k}, so R(n) = q·R(n-1) + [z^n] P.

    Args:
        q: Field size
        m: Roughness parameter
        n_max: Largest degree
        bit_cap: Abort when a series coefficient outgrows this many bits

    Returns:
        Validated RoughTable

    Raises:
        InvalidParameterError: On malformed q, m or n_max
        ResourceLimitExceededError: If a coefficient exceeds bit_cap
    """
    check_field_size(q)
    check_nonnegative("m", m)
    check_nonnegative("n_max", n_max)

    product: TruncatedSeries[int] = TruncatedSeries.one(n_max, bit_cap)
    for k in range(1, min(m, n_max) + 1):
        product = product * one_minus_z_power(k, irr_count(q, k), n_max, bit_cap)
    log_operation(logger, "series_expanded", q=q, m=m, bound=n_max)

    counts = [product[0]]
    for n in range(1, n_max + 1):
        counts.append(q * counts[-1] + product[n])

    table = RoughTable(q=q, m=m, counts=tuple(counts))
    log_operation(logger, "table_built", kind="rough_gf", q=q, m=m, n_max=n_max)
    return table


def rough_table_rec(q: int, m: int, n_max: int) -> RoughTable:
    """
    R(n, m) from n·R(n, m) = Σ_{t=1}^{n} c_t R(n-t, m), c_t = Σ_{k|t, k>m} k·I_k.

    Equivalent to n·R(n) = Σ_{k>m} k·I_k Σ_{j>=1} R(n-kj) with the inner sums
    regrouped by t = kj.
    """
    check_field_size(q)
    check_nonnegative("m", m)
    check_nonnegative("n_max", n_max)
    table = RoughTable(q=q, m=m, counts=rough_counts(q, m, n_max))
    log_operation(logger, "table_built", kind="rough_rec", q=q, m=m, n_max=n_max)
    return table


@lru_cache(maxsize=1024)
def rough_counts(q: int, m: int, n_max: int) -> tuple[int, ...]:
    """Cached R(0..n_max, m) by the exact recurrence (no validation)."""
    if m == 0:
        return tuple(q**n for n in range(n_max + 1))
    weights = weighted_irr_sums(q, m, n_max)
    counts = [1]
    for n in range(1, n_max + 1):
        if n <= m:
            counts.append(0)
            continue
        total = 0
        # c_t = 0 for t <= m, and R(n - t) = 0 for 1 <= n - t <= m.
        for t in range(m + 1, n + 1):
            rest = counts[n - t]
            if rest:
                total += weights[t] * rest
        value, remainder = divmod(total, n)
        if remainder:
            raise IntegralityError(f"R({n}, {m}) over F_{q}", total, n)
        counts.append(value)
    return tuple(counts)


def r_ratio(q: int, n: int, m: int) -> ExactRatio:
    """
    r(n, m) = R(n, m) / q^n in lowest terms, with r(0, m) = 1.

    Example:
        >>> r_ratio(2, 2, 1)
        Fraction(1, 4)
    """
    check_field_size(q)
    check_nonnegative("n", n)
    check_nonnegative("m", m)
    if n == 0:
        return Fraction(1)
    if n <= m:
        return Fraction(0)
    return Fraction(rough_counts(q, m, n)[n], q**n)


@lru_cache(maxsize=1024)
def perm_rough_column(m: int, n_max: int) -> tuple[Fraction, ...]:
    """
    p(n, m) for n = 0..n_max.

    n·p(n, m) = 1 + Σ_{m<k<n-m} p(k, m) for n > m, with p(0, m) = 1 and
    p(k, m) = 0 for 1 <= k <= m. The inner sum runs over a prefix-sum array.
    """
    check_nonnegative("m", m)
    check_nonnegative("n_max", n_max)
    values = [Fraction(1)]
    # prefix[i] = Σ_{m<k<=i} p(k, m)
    prefix = [Fraction(0)]
    for n in range(1, n_max + 1):
        if n <= m:
            value = Fraction(0)
        else:
            value = (1 + prefix[n - m - 1]) / n
        values.append(value)
        prefix.append(prefix[-1] + (value if n > m else 0))
    log_operation(logger, "table_built", kind="perm_rough", m=m, n_max=n_max)
    return tuple(values)


def perm_rough(n: int, m: int) -> ExactRatio:
    """
    Proportion p(n, m) of permutations of n with no cycle of length <= m.

    Example:
        >>> perm_rough(3, 1)
        Fraction(1, 3)
    """
    check_nonnegative("n", n)
    check_nonnegative("m", m)
    return perm_rough_column(m, n)[n]


def perm_rough_counts(m: int, n_max: int) -> tuple[int, ...]:
    """n!·p(n, m): the number of permutations of n with all cycles longer than m."""
    column = perm_rough_column(m, n_max)
    counts = []
    for n, value in enumerate(column):
        scaled = value * factorial(n)
        if scaled.denominator != 1:
            raise IntegralityError(f"{n}!·p({n}, {m})", scaled.numerator, scaled.denominator)
        counts.append(scaled.numerator)
    return tuple(counts)


def perm_rough_gf(m: int, n_max: int) -> tuple[Fraction, ...]:
    """
    p(n, m) = [z^n] D_m(z) with D_m(z) = (1 - z)^{-1} exp(-Σ_{k<=m} z^k / k).

    Computed on a rational truncated series; agrees with perm_rough_column exactly.
    """
    check_nonnegative("m", m)
    check_nonnegative("n_max", n_max)
    exponent = [Fraction(0)] + [
        Fraction(-1, k) if k <= m else Fraction(0) for k in range(1, n_max + 1)
    ]
    series = TruncatedSeries(tuple(exponent)).exp().partial_sums()
    log_operation(logger, "series_expanded", kind="perm_gf", m=m, bound=n_max)
    return series.coeffs


def rough_recurrence_residual(q: int, n: int, m: int) -> ExactRatio:
    """
    n·r(n, m) - 1 - Σ_{m<k<n-m} r(k, m): how far r misses the permutation recurrence.

    Raises:
        InvalidParameterError: Unless n > m >= 1
    """
    check_field_size(q)
    if m < 1 or n <= m:
        raise InvalidParameterError("n", n, "n > m >= 1", f"Residual needs n > m >= 1 (n={n}, m={m})")
    counts = rough_counts(q, m, n)
    inner = sum(
        (Fraction(counts[k], q**k) for k in range(m + 1, n - m)),
        start=Fraction(0),
    )
    return n * Fraction(counts[n], q**n) - 1 - inner
