"""Monic polynomials over F_q, factorization by trial division, divisor degrees."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from divgaps.errors import InvalidParameterError
from divgaps.oracle.degrees import DegreeSet, subset_sums
from divgaps.oracle.field import FiniteField
from divgaps.oracle.sieve import layer_digits, sieve_layers


@dataclass(frozen=True)
class FqPoly:
    """
    A polynomial over F_q with coefficients low degree first.

    Attributes:
        field: Coefficient field
        coeffs: coeffs[i] is the coefficient of x^i; no trailing zeros
    """

    field: FiniteField
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = self.coeffs
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @classmethod
    def monic(cls, gf: FiniteField, lower: Sequence[int]) -> FqPoly:
        """x^len(lower) + Σ lower[i] x^i."""
        return cls(gf, tuple(lower) + (1,))

    @classmethod
    def from_index(cls, gf: FiniteField, degree: int, index: int) -> FqPoly:
        """The monic polynomial stored at `index` of the degree layer (sieve order)."""
        digits = layer_digits(gf.q, degree, np.asarray([index], dtype=np.int64))[0]
        return cls(gf, tuple(int(c) for c in digits))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    @property
    def index(self) -> int:
        """Position in its sieve layer: Σ_{i<deg} c_i q^i."""
        return sum(c * self.field.q**i for i, c in enumerate(self.coeffs[:-1]))

    def __mul__(self, other: FqPoly) -> FqPoly:
        gf = self.field
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = gf.add(out[i + j], gf.mul(a, b))
        return FqPoly(gf, tuple(out))

    def __pow__(self, exponent: int) -> FqPoly:
        result = FqPoly(self.field, (1,))
        for _ in range(exponent):
            result = result * self
        return result

    def divmod_monic(self, divisor: FqPoly) -> tuple[FqPoly, FqPoly]:
        """Quotient and remainder by a monic divisor."""
        gf = self.field
        if not divisor.is_monic:
            raise InvalidParameterError("divisor", divisor, "a monic polynomial")
        rest = list(self.coeffs)
        k = divisor.degree
        quotient = [0] * max(1, len(rest) - k)
        for top in range(len(rest) - 1, k - 1, -1):
            c = rest[top]
            if c:
                shift = top - k
                quotient[shift] = c
                for i, dc in enumerate(divisor.coeffs):
                    rest[shift + i] = gf.sub(rest[shift + i], gf.mul(c, dc))
        remainder = rest[:k] if k else [0]
        return FqPoly(gf, tuple(quotient)), FqPoly(gf, tuple(remainder or [0]))

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            base = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(base if c == 1 and i else (f"{c}" if i == 0 else f"{c}*{base}"))
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class Factorization:
    """
    Prime-power decomposition of a monic polynomial.

    Attributes:
        polynomial: The factored polynomial
        factors: (irreducible, multiplicity) pairs sorted by (degree, index)
    """

    polynomial: FqPoly
    factors: tuple[tuple[FqPoly, int], ...]

    def degrees(self) -> list[int]:
        """Factor degrees, each repeated by multiplicity."""
        return [p.degree for p, mult in self.factors for _ in range(mult)]

    def product(self) -> FqPoly:
        result = FqPoly(self.polynomial.field, (1,))
        for p, mult in self.factors:
            result = result * p**mult
        return result


def enumerate_monic(gf: FiniteField, degree: int) -> Iterator[FqPoly]:
    """All monic polynomials of a degree, in lexicographic (sieve) order."""
    for lower in itertools.product(range(gf.q), repeat=degree):
        yield FqPoly.monic(gf, tuple(reversed(lower)))


def gen_irreducibles(gf: FiniteField, max_deg: int, budget: int = 10**7) -> list[FqPoly]:
    """
    All monic irreducibles of degree 1..max_deg, sieved out of the full enumeration.

    Raises:
        ResourceLimitExceededError: If q^max_deg exceeds the budget

    Example:
        >>> [str(p) for p in gen_irreducibles(build_field(2), 2)]
        ['x', 'x + 1', 'x^2 + x + 1']
    """
    layers = sieve_layers(gf, max_deg, budget)
    result: list[FqPoly] = []
    for d in range(1, max_deg + 1):
        result.extend(FqPoly.from_index(gf, d, int(i)) for i in layers.irreducibles[d])
    return result


def factor(poly: FqPoly, irreducibles: Sequence[FqPoly] | None = None) -> Factorization:
    """
    Factor a monic polynomial by trial division.

    Divides by the irreducibles of degree <= deg/2 in order; a nonconstant
    remainder is itself irreducible.

    Args:
        poly: Monic polynomial of degree >= 1
        irreducibles: Precomputed gen_irreducibles output covering degree deg/2

    Raises:
        InvalidParameterError: If poly is not monic or has degree 0
    """
    if poly.degree < 1 or not poly.is_monic:
        raise InvalidParameterError("F", str(poly), "monic with degree >= 1")
    gf = poly.field
    half = poly.degree // 2
    if irreducibles is None:
        irreducibles = gen_irreducibles(gf, half) if half else []

    factors: list[tuple[FqPoly, int]] = []
    rest = poly
    for candidate in irreducibles:
        # every factor of rest has degree >= candidate.degree from here on
        if 2 * candidate.degree > rest.degree:
            break
        multiplicity = 0
        while rest.degree >= candidate.degree:
            quotient, remainder = rest.divmod_monic(candidate)
            if not remainder.is_zero():
                break
            rest = quotient
            multiplicity += 1
        if multiplicity:
            factors.append((candidate, multiplicity))
        if rest.degree == 0:
            break
    if rest.degree > 0:
        factors.append((rest, 1))
    factors.sort(key=lambda pair: (pair[0].degree, pair[0].index))
    return Factorization(polynomial=poly, factors=tuple(factors))


def divisor_degree_set(fact: Factorization) -> DegreeSet:
    """
    Degrees of all monic divisors: subset sums of the factor-degree multiset.

    Example:
        >>> x = FqPoly.monic(build_field(2), (0,))
        >>> divisor_degree_set(factor(x * x * x)).elements()
        [0, 1, 2, 3]
    """
    n = fact.polynomial.degree
    return DegreeSet(subset_sums(fact.degrees()), n)


def enumerate_divisor_degrees(fact: Factorization) -> DegreeSet:
    """Degrees of all monic divisors by explicit exponent-vector enumeration."""
    n = fact.polynomial.degree
    ranges = [range(mult + 1) for _, mult in fact.factors]
    degrees = [p.degree for p, _ in fact.factors]
    found = {
        sum(e * d for e, d in zip(exponents, degrees))
        for exponents in itertools.product(*ranges)
    }
    return DegreeSet.from_elements(found, n)
