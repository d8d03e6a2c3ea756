"""Limiting rough proportions λ_q(m) and harmonic numbers at high precision."""

from __future__ import annotations

import mpmath

from divgaps.exact.irreducibles import irr_count
from divgaps.exact.models import HighPrecisionReal, check_field_size, check_nonnegative

DEFAULT_PRECISION = 256


def lambda_q(q: int, m: int, precision: int = DEFAULT_PRECISION) -> HighPrecisionReal:
    """
    λ_q(m) = Π_{k=1}^{m} (1 - q^{-k})^{I_k}, with λ_q(0) = 1.

    Each factor is evaluated as exp(I_k · log1p(-q^{-k})) so large I_k do not
    lose the small q^{-k}.

    Example:
        >>> float(lambda_q(2, 2).value)
        0.1875
    """
    check_field_size(q)
    check_nonnegative("m", m)
    with mpmath.workprec(precision + 32):
        log_total = mpmath.mpf(0)
        for k in range(1, m + 1):
            log_total += irr_count(q, k) * mpmath.log1p(-mpmath.mpf(q) ** (-k))
        value = mpmath.exp(log_total)
    with mpmath.workprec(precision):
        return HighPrecisionReal(value=+value, precision=precision)


def harmonic(m: int, precision: int = DEFAULT_PRECISION) -> HighPrecisionReal:
    """H_m = Σ_{k<=m} 1/k, with H_0 = 0."""
    check_nonnegative("m", m)
    with mpmath.workprec(precision):
        value = mpmath.harmonic(m) if m else mpmath.mpf(0)
        return HighPrecisionReal(value=+value, precision=precision)


def exp_neg_harmonic(m: int, precision: int = DEFAULT_PRECISION) -> HighPrecisionReal:
    """e^{-H_m}, the permutation analogue of λ_q(m)."""
    h = harmonic(m, precision).value
    with mpmath.workprec(precision):
        return HighPrecisionReal(value=mpmath.exp(-h), precision=precision)
