"""Counts of monic irreducible polynomials over F_q."""

from __future__ import annotations

from functools import lru_cache

from sympy import divisors, mobius

from divgaps.errors import IntegralityError, InvalidParameterError
from divgaps.exact.models import check_field_size


@lru_cache(maxsize=4096)
def irr_count(q: int, n: int) -> int:
    """
    Number I_n of monic irreducible polynomials of degree n over F_q.

    I_n = (1/n) Σ_{d|n} μ(n/d) q^d. The formula is evaluated for any integer
    q >= 2; field semantics only matter to the oracle.

    Args:
        q: Field size
        n: Degree (n >= 1)

    Returns:
        I_n as an exact integer

    Raises:
        InvalidParameterError: If n <= 0 or q < 2
        IntegralityError: If the Möbius sum is not divisible by n

    Example:
        >>> irr_count(2, 4)
        3
    """
    check_field_size(q)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidParameterError("n", n, "integer n >= 1")
    total = sum(int(mobius(n // d)) * q**d for d in divisors(n))
    count, remainder = divmod(total, n)
    # Necklace count: the Möbius sum is always divisible by n.
    if remainder:
        raise IntegralityError(f"I_{n}(q={q})", total, n)
    return count


def irr_counts(q: int, n_max: int) -> tuple[int, ...]:
    """(0, I_1, ..., I_{n_max}); index 0 is a placeholder."""
    return (0,) + tuple(irr_count(q, k) for k in range(1, n_max + 1))


@lru_cache(maxsize=256)
def weighted_irr_sums(q: int, m: int, n_max: int) -> tuple[int, ...]:
    """
    c_t = Σ_{k|t, k>m} k·I_k for t = 0..n_max (c_0 = 0).

    These are the coefficients of z·F_m'(z)/F_m(z), the logarithmic derivative of
    the rough generating function.
    """
    sums = [0] * (n_max + 1)
    for k in range(m + 1, n_max + 1):
        weight = k * irr_count(q, k)
        for t in range(k, n_max + 1, k):
            sums[t] += weight
    return tuple(sums)


def within_gauss_bounds(q: int, n: int, value: int) -> bool:
    """q^n/n - 2q^{n/2}/n < I_n <= q^n/n, compared in integers."""
    # n·I_n <= q^n and q^n - n·I_n < 2 q^{n/2}  <=>  (q^n - n·I_n)^2 < 4 q^n
    scaled = n * value
    deficit = q**n - scaled
    return deficit >= 0 and deficit * deficit < 4 * q**n
