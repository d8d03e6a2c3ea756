"""Gap-free proportions f(n, m) and g(n, m) from the decomposition identities.

Every F with gap-free divisor degrees factors uniquely as G·H where G carries
the factors with gap-free prefix and H is (deg G + m)-rough. Counting both sides:

    1 = Σ_{0<=k<=n} f(k, m) · r(n - k, k + m)

and the analogous identity with g and p for permutations. Solving for the k = n
term (r(0, ·) = 1) gives the recurrences used here. Only k < (n - m)/2 and
k = n contribute: r(a, b) = 0 whenever 1 <= a <= b.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from divgaps.errors import InvalidParameterError
from divgaps.exact.models import ExactRatio, check_field_size, check_nonnegative
from divgaps.exact.rough import perm_rough_counts, rough_counts
from divgaps.utils.logging import get_logger, log_operation

logger = get_logger(__name__)


def _check_gap(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise InvalidParameterError("m", m, "integer m >= 1 (m = 0 only by convention)")


def _contributing(n: int, m: int) -> range:
    """k in [0, n) with n - k > k + m."""
    return range(0, max(0, (n - m + 1) // 2))


@lru_cache(maxsize=256)
def f_counts(q: int, m: int, n_max: int) -> tuple[int, ...]:
    """
    q^n·f(n, m): the number of monic degree-n polynomials whose divisor degrees
    have no gap larger than m.

    With F(n) = q^n f(n, m) the identity becomes integral:
    F(n) = q^n - Σ_k F(k)·R(n - k, k + m).

    m = 0 follows the convention f(0, 0) = 1 and f(k, 0) = 0 for k >= 1.
    """
    check_field_size(q)
    _check_gap(m)
    check_nonnegative("n_max", n_max)
    if m == 0:
        return (1,) + (0,) * n_max

    counts: list[int] = []
    columns: dict[int, tuple[int, ...]] = {}
    for n in range(n_max + 1):
        total = q**n
        for k in _contributing(n, m):
            j = k + m
            if j not in columns:
                # Column j is read at n - k <= n_max - (j - m).
                columns[j] = rough_counts(q, j, n_max - k)
            total -= counts[k] * columns[j][n - k]
        counts.append(total)
    log_operation(logger, "table_built", kind="f", q=q, m=m, n_max=n_max)
    return tuple(counts)


def f_table(q: int, m: int, n_max: int) -> tuple[ExactRatio, ...]:
    """
    f(n, m) for n = 0..n_max as exact rationals in lowest terms.

    Args:
        q: Field size
        m: Gap bound (m >= 1; m = 0 gives the degenerate convention)
        n_max: Largest degree

    Example:
        >>> f_table(2, 1, 2)[2]
        Fraction(3, 4)
    """
    counts = f_counts(q, m, n_max)
    return tuple(Fraction(count, q**n) for n, count in enumerate(counts))


@lru_cache(maxsize=256)
def g_counts(m: int, n_max: int) -> tuple[int, ...]:
    """
    n!·g(n, m): permutations of n whose cycle-length subset sums have gaps <= m.

    G(n) = n! - Σ_k C(n, k)·G(k)·P(n - k, k + m), P(a, b) = a!·p(a, b).
    """
    _check_gap(m)
    check_nonnegative("n_max", n_max)
    if m == 0:
        return (1,) + (0,) * n_max

    counts: list[int] = []
    columns: dict[int, tuple[int, ...]] = {}
    for n in range(n_max + 1):
        total = factorial(n)
        for k in _contributing(n, m):
            j = k + m
            if j not in columns:
                columns[j] = perm_rough_counts(j, n_max - k)
            total -= comb(n, k) * counts[k] * columns[j][n - k]
        counts.append(total)
    log_operation(logger, "table_built", kind="g", m=m, n_max=n_max)
    return tuple(counts)


def g_table(m: int, n_max: int) -> tuple[ExactRatio, ...]:
    """
    g(n, m) for n = 0..n_max as exact rationals in lowest terms.

    Example:
        >>> g_table(1, 3)[3]
        Fraction(2, 3)
    """
    counts = g_counts(m, n_max)
    return tuple(Fraction(count, factorial(n)) for n, count in enumerate(counts))


def f_value(q: int, n: int, m: int) -> ExactRatio:
    check_nonnegative("n", n)
    return f_table(q, m, n)[n]


def g_value(n: int, m: int) -> ExactRatio:
    check_nonnegative("n", n)
    return g_table(m, n)[n]
