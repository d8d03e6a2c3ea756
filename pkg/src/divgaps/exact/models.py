"""Domain models of the exact engine."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, TypeAlias

import mpmath
from pydantic import BaseModel, ConfigDict, Field, model_validator

from divgaps.errors import InvalidParameterError

if TYPE_CHECKING:
    from typing import Self

# fractions.Fraction keeps lowest terms after every operation.
ExactRatio: TypeAlias = Fraction


def check_field_size(q: int) -> int:
    """Validate a field size q >= 2 (any integer for the counting formulas)."""
    if isinstance(q, bool) or not isinstance(q, int) or q < 2:
        raise InvalidParameterError("q", q, "integer q >= 2")
    return q


def check_nonnegative(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidParameterError(name, value, f"integer {name} >= 0")
    return value


def require_field_size(q: int | None, kind: str) -> int:
    """Field size of a q-dependent kind; None is rejected rather than defaulted."""
    if q is None:
        raise InvalidParameterError("q", q, f"a field size for kind '{kind}'")
    return check_field_size(q)


class RoughTable(BaseModel):
    """
    Counts R(n, m) of monic degree-n polynomials with no divisor of degree 1..m.

    # AICODE-NOTE: Frozen and validated once at construction; tables are shared
    # across threads and cache entries, so nothing downstream re-checks them.

    Attributes:
        q: Field size
        m: Roughness parameter
        counts: R(n, m) for n = 0..n_max
    """

    model_config = ConfigDict(frozen=True)

    q: int = Field(..., ge=2)
    m: int = Field(..., ge=0)
    counts: tuple[int, ...]

    @model_validator(mode="after")
    def validate_counts(self) -> Self:
        """R(0,m)=1, R(n,m)=0 for 1<=n<=m, R(n,0)=q^n, 0<=R(n,m)<=q^n."""
        if not self.counts or self.counts[0] != 1:
            raise ValueError("R(0, m) must equal 1")
        power = 1
        for n, value in enumerate(self.counts):
            if n > 0:
                power *= self.q
            if not 0 <= value <= power:
                raise ValueError(f"R({n}, {self.m}) = {value} outside [0, q^n]")
            if 1 <= n <= self.m and value != 0:
                raise ValueError(f"R({n}, {self.m}) must vanish for 1 <= n <= m")
            if self.m == 0 and value != power:
                raise ValueError(f"R({n}, 0) must equal q^n")
        return self

    @property
    def n_max(self) -> int:
        return len(self.counts) - 1

    def ratio(self, n: int) -> ExactRatio:
        """r(n, m) = R(n, m) / q^n in lowest terms."""
        return Fraction(self.counts[n], self.q**n)


@dataclass(frozen=True)
class HighPrecisionReal:
    """
    An mpmath value with the precision it was computed at.

    Attributes:
        value: The number
        precision: Mantissa bits used
        error_bound: Absolute error bound where tracked
    """

    value: mpmath.mpf
    precision: int
    error_bound: float | None = None

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class Estimate:
    """
    An asymptotic-constant estimate with its stability indicator.

    # AICODE-NOTE: No reference value exists for c_q or η_q(m); every Estimate
    # is labelled as such in output metadata via `label`.

    Attributes:
        value: η̂ or ĉ_q at the requested n
        previous: The same estimator at n // 2
        stability: |value - previous|
        converged: stability <= configured non-convergence threshold
        q: Field size, or None for the permutation analogue
        m: Gap parameter
        n: Degree used
        label: Always "estimate"
    """

    value: float
    previous: float
    stability: float
    converged: bool
    q: int | None
    m: int
    n: int
    label: str = "estimate"

    def as_dict(self) -> dict[str, object]:
        return {
            "value": self.value,
            "previous": self.previous,
            "stability": self.stability,
            "converged": self.converged,
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "label": self.label,
        }
