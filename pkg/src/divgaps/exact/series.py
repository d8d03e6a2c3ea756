"""Truncated power series with exact (int or Fraction) coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, Literal, Sequence, TypeVar

from divgaps.errors import InvalidParameterError, ResourceLimitExceededError

C = TypeVar("C", int, Fraction)


@dataclass(frozen=True)
class TruncatedSeries(Generic[C]):
    """
    Coefficients of a power series for degrees 0..bound.

    # AICODE-NOTE: Products are truncated at min(bound_a, bound_b). Integer
    # series never leave the integers; rational coefficients are only used for
    # the permutation generating function.

    Attributes:
        coeffs: coeffs[i] is the coefficient of z^i, len(coeffs) == bound + 1
        bit_cap: Abort when an integer coefficient outgrows this many bits (0 = no cap)
    """

    coeffs: tuple[C, ...]
    bit_cap: int = 0

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise InvalidParameterError("coeffs", self.coeffs, "at least one coefficient")

    @property
    def bound(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, degree: int) -> C:
        return self.coeffs[degree]

    @classmethod
    def from_sequence(
        cls, values: Sequence[C], bound: int, bit_cap: int = 0
    ) -> TruncatedSeries[C]:
        """Pad with zeros or truncate so the series is valid exactly up to `bound`."""
        padded = list(values[: bound + 1])
        zero = values[0] * 0 if values else 0
        padded.extend([zero] * (bound + 1 - len(padded)))
        return cls(tuple(padded), bit_cap)

    @classmethod
    def one(cls, bound: int, bit_cap: int = 0) -> TruncatedSeries[int]:
        return TruncatedSeries.from_sequence([1], bound, bit_cap)

    @classmethod
    def geometric(cls, ratio: int, bound: int, bit_cap: int = 0) -> TruncatedSeries[int]:
        """Σ_j ratio^j z^j = 1/(1 - ratio·z)."""
        values = [1]
        for _ in range(bound):
            values.append(values[-1] * ratio)
        return TruncatedSeries(tuple(values), bit_cap)

    def __add__(self, other: TruncatedSeries[C]) -> TruncatedSeries[C]:
        bound = min(self.bound, other.bound)
        return TruncatedSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(bound + 1)),
            self.bit_cap,
        )

    def __neg__(self) -> TruncatedSeries[C]:
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.bit_cap)

    def __mul__(self, other: TruncatedSeries[C]) -> TruncatedSeries[C]:
        bound = min(self.bound, other.bound)
        a = self.coeffs
        b = other.coeffs
        # Skip zero coefficients: the factors (1 - z^k)^e are sparse.
        a_nonzero = [(i, c) for i, c in enumerate(a[: bound + 1]) if c]
        b_nonzero = [(j, c) for j, c in enumerate(b[: bound + 1]) if c]
        out: list = [a[0] * 0] * (bound + 1)
        for i, ai in a_nonzero:
            limit = bound - i
            for j, bj in b_nonzero:
                if j > limit:
                    break
                out[i + j] += ai * bj
        result = TruncatedSeries(tuple(out), self.bit_cap or other.bit_cap)
        result.check_size()
        return result

    def __pow__(self, exponent: int) -> TruncatedSeries[C]:
        """Square-and-multiply on truncated series."""
        if exponent < 0:
            raise InvalidParameterError("exponent", exponent, "exponent >= 0")
        result: TruncatedSeries = TruncatedSeries.from_sequence(
            [self.coeffs[0] ** 0], self.bound, self.bit_cap
        )
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def stretch(self, k: int, bound: int) -> TruncatedSeries[C]:
        """Substitute z -> z^k, keeping degrees up to `bound`."""
        zero = self.coeffs[0] * 0
        out = [zero] * (bound + 1)
        for i, c in enumerate(self.coeffs):
            if i * k > bound:
                break
            out[i * k] = c
        return TruncatedSeries(tuple(out), self.bit_cap)

    def exp(self) -> TruncatedSeries[Fraction]:
        """exp(S) for S(0) = 0, via n·e_n = Σ_{k=1}^{n} k·s_k·e_{n-k}."""
        if self.coeffs[0] != 0:
            raise InvalidParameterError("coeffs[0]", self.coeffs[0], "zero constant term")
        s = [Fraction(c) for c in self.coeffs]
        e: list[Fraction] = [Fraction(1)]
        for n in range(1, self.bound + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if s[k]:
                    acc += k * s[k] * e[n - k]
            e.append(acc / n)
        return TruncatedSeries(tuple(e), self.bit_cap)

    def partial_sums(self) -> TruncatedSeries[C]:
        """Multiply by 1/(1 - z)."""
        out = []
        running = self.coeffs[0] * 0
        for c in self.coeffs:
            running += c
            out.append(running)
        return TruncatedSeries(tuple(out), self.bit_cap)

    def check_size(self) -> None:
        """Raise ResourceLimitExceededError when an integer coefficient exceeds the cap."""
        if not self.bit_cap:
            return
        for c in self.coeffs:
            if isinstance(c, int) and c.bit_length() > self.bit_cap:
                raise ResourceLimitExceededError(
                    "coefficient_bits",
                    c.bit_length(),
                    self.bit_cap,
                )


def one_minus_z_power(
    k: int,
    exponent: int,
    bound: int,
    bit_cap: int = 0,
    method: Literal["binomial", "squaring"] = "binomial",
) -> TruncatedSeries[int]:
    """
    (1 - z^k)^exponent truncated at `bound`.

    The power is taken in the variable w = z^k (length bound//k + 1), then
    stretched back to z. "binomial" uses the coefficient recurrence
    c_j = -c_{j-1}·(e - j + 1)/j, "squaring" repeated squaring of (1 - w).
    Both stay in the integers.
    """
    if k < 1:
        raise InvalidParameterError("k", k, "k >= 1")
    if exponent < 0:
        raise InvalidParameterError("exponent", exponent, "exponent >= 0")
    short_bound = bound // k
    if method == "squaring":
        base: TruncatedSeries[int] = TruncatedSeries.from_sequence([1, -1], short_bound, bit_cap)
        return (base**exponent).stretch(k, bound)
    if method != "binomial":
        raise InvalidParameterError("method", method, "'binomial' or 'squaring'")

    coeffs = [1]
    for j in range(1, min(short_bound, exponent) + 1):
        coeffs.append(-coeffs[-1] * (exponent - j + 1) // j)
    short = TruncatedSeries.from_sequence(coeffs, short_bound, bit_cap)
    short.check_size()
    return short.stretch(k, bound)
