"""Exhaustive censuses: all monic polynomials of degree n over F_q, all cycle types of S_n.

# AICODE-NOTE: The polynomial census never factors polynomials one by one. The
# sieve links every F to F/P (P its smallest irreducible factor), so the
# divisor-degree bitmask and the sorted-prefix threshold of a whole layer follow
# from the layer below with one vectorized pass per factor degree:
#   A(F) = A(Q) | A(Q) << s        crit(F) = max(s, crit(Q) - s)
# with s = deg P and Q = F/P. Gaps are evaluated once per distinct bitmask.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np
from sympy import npartitions
from sympy.utilities.iterables import partitions

from divgaps.errors import InvalidParameterError, ResourceLimitExceededError
from divgaps.oracle.degrees import criterion_threshold, max_gap_bits, subset_sums
from divgaps.oracle.field import FiniteField
from divgaps.oracle.sieve import IndexArray, SieveLayers, sieve_layers
from divgaps.utils.logging import get_logger, log_operation

logger = get_logger(__name__)


@dataclass(frozen=True)
class PolyCensus:
    """
    Gap and roughness counts over all q^n monic polynomials of degree n.

    Attributes:
        q: Field size
        n: Degree
        f_counts: m -> #{F : max_gap(A(F)) <= m}, m = 1..n
        r_counts: m -> #{F : every nonconstant divisor has degree > m}, m = 1..n
        criterion_agrees: Sorted-prefix criterion matched max_gap on every F
        irreducible_counts: irreducible_counts[d - 1] = number of irreducibles of degree d
    """

    q: int
    n: int
    f_counts: dict[int, int]
    r_counts: dict[int, int]
    criterion_agrees: bool
    irreducible_counts: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.q**self.n

    def __getitem__(self, m: int) -> tuple[int, int]:
        return self.f_counts[m], self.r_counts[m]

    def f_ratio(self, m: int) -> Fraction:
        return Fraction(self.f_counts[m], self.total)

    def r_ratio(self, m: int) -> Fraction:
        return Fraction(self.r_counts[m], self.total)


def degree_layers(layers: SieveLayers) -> tuple[list[IndexArray], list[IndexArray]]:
    """Per-layer divisor-degree bitmasks and sorted-prefix thresholds."""
    masks: list[IndexArray] = [np.ones(1, dtype=np.int64)]
    crits: list[IndexArray] = [np.zeros(1, dtype=np.int64)]
    for d in range(1, layers.n + 1):
        smallest = layers.smallest[d]
        cofactor = layers.cofactor[d]
        mask = np.empty_like(smallest)
        crit = np.empty_like(smallest)
        for step in np.unique(smallest):
            step = int(step)
            selected = smallest == step
            below = cofactor[selected]
            base = masks[d - step][below]
            mask[selected] = base | (base << step)
            crit[selected] = np.maximum(step, crits[d - step][below] - step)
        masks.append(mask)
        crits.append(crit)
    return masks, crits


def _layer_census(layers: SieveLayers, masks: IndexArray, crits: IndexArray, n: int) -> PolyCensus:
    q = layers.q
    unique, inverse = np.unique(masks, return_inverse=True)
    gaps = np.asarray([max_gap_bits(int(bits)) for bits in unique], dtype=np.int64)[inverse]
    by_gap = np.cumsum(np.bincount(gaps, minlength=n + 1))
    by_smallest = np.cumsum(np.bincount(layers.smallest[n], minlength=n + 2))
    total = q**n
    return PolyCensus(
        q=q,
        n=n,
        f_counts={m: int(by_gap[m]) for m in range(1, n + 1)},
        r_counts={m: total - int(by_smallest[m]) for m in range(1, n + 1)},
        criterion_agrees=bool(np.array_equal(gaps, crits)),
        irreducible_counts=[len(layers.irreducibles[d]) for d in range(1, n + 1)],
    )


def census_poly_range(gf: FiniteField, n_max: int, budget: int = 10**7) -> list[PolyCensus]:
    """
    Polynomial censuses for every degree 1..n_max from a single sieve.

    Raises:
        ResourceLimitExceededError: If q^n_max exceeds the budget
    """
    if n_max < 1:
        raise InvalidParameterError("n", n_max, "n >= 1")
    layers = sieve_layers(gf, n_max, budget)
    masks, crits = degree_layers(layers)
    results = [_layer_census(layers, masks[n], crits[n], n) for n in range(1, n_max + 1)]
    for census in results:
        log_operation(
            logger,
            "census_completed",
            kind="poly",
            q=gf.q,
            n=census.n,
            criterion_agrees=census.criterion_agrees,
        )
    return results


def census_poly(gf: FiniteField, n: int, budget: int = 10**7) -> PolyCensus:
    """
    Census of the q^n monic polynomials of degree n.

    Args:
        gf: Coefficient field
        n: Degree (n >= 1)
        budget: Largest admissible q^n

    Returns:
        PolyCensus; census[m] is (f_count, r_count)

    Raises:
        ResourceLimitExceededError: If q^n exceeds the budget

    Example:
        >>> census_poly(build_field(2), 2)[1]
        (3, 1)
    """
    return census_poly_range(gf, n, budget)[-1]


@dataclass(frozen=True)
class CycleType:
    """
    A partition of n read as the cycle type of a permutation.

    Attributes:
        multiplicities: (length, count) pairs, ascending by length
    """

    multiplicities: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, parts: dict[int, int]) -> CycleType:
        return cls(tuple(sorted((int(l), int(a)) for l, a in parts.items() if a)))

    @property
    def n(self) -> int:
        return sum(length * count for length, count in self.multiplicities)

    @property
    def parts(self) -> list[int]:
        return [length for length, count in self.multiplicities for _ in range(count)]

    @property
    def weight(self) -> int:
        """Number of permutations of this type: n! / Π l^{a_l} a_l!."""
        denominator = 1
        for length, count in self.multiplicities:
            denominator *= length**count * math.factorial(count)
        return math.factorial(self.n) // denominator

    @property
    def smallest(self) -> int:
        return self.multiplicities[0][0] if self.multiplicities else 0


def cycle_types(n: int) -> Iterator[CycleType]:
    """All cycle types of S_n (sympy yields a shared dict, hence the copy)."""
    if n == 0:
        yield CycleType(())
        return
    for parts in partitions(n):
        yield CycleType.from_dict(dict(parts))


def partition_weight_total(n: int) -> int:
    """Σ of cycle-type weights over all partitions of n; equals n!."""
    return sum(ct.weight for ct in cycle_types(n))


@dataclass(frozen=True)
class PermCensus:
    """
    Exact g and p over S_n.

    Attributes:
        n: Permutation size
        g: m -> proportion with max_gap(A(σ)) <= m
        p: m -> proportion with no cycle of length <= m
        criterion_agrees: Sorted-prefix criterion matched max_gap on every type
        types: Number of cycle types visited
    """

    n: int
    g: dict[int, Fraction]
    p: dict[int, Fraction]
    criterion_agrees: bool
    types: int

    def __getitem__(self, m: int) -> tuple[Fraction, Fraction]:
        return self.g[m], self.p[m]


def census_perm(n: int, max_n: int = 60) -> PermCensus:
    """
    Census of the cycle types of S_n, weighted by class size.

    Args:
        n: Permutation size (n >= 0)
        max_n: Largest admissible n

    Returns:
        PermCensus for m = 1..max(n, 1)

    Raises:
        ResourceLimitExceededError: If n exceeds max_n

    Example:
        >>> census_perm(3)[1]
        (Fraction(2, 3), Fraction(1, 3))
    """
    if n < 0:
        raise InvalidParameterError("n", n, "n >= 0")
    if n > max_n:
        raise ResourceLimitExceededError("partition_budget", n, max_n)

    top = max(n, 1)
    by_gap = [0] * (top + 2)
    by_smallest = [0] * (top + 2)
    agrees = True
    types = 0
    for cycle_type in cycle_types(n):
        parts = cycle_type.parts
        weight = cycle_type.weight
        gap = max_gap_bits(subset_sums(parts))
        agrees &= gap == criterion_threshold(parts)
        by_gap[gap] += weight
        # the identity of S_0 has no cycles at all
        by_smallest[cycle_type.smallest if parts else top + 1] += weight
        types += 1

    total = math.factorial(n)
    g: dict[int, Fraction] = {}
    p: dict[int, Fraction] = {}
    within = 0
    short = 0
    for m in range(1, top + 1):
        within += by_gap[m] if m > 1 else by_gap[0] + by_gap[1]
        short += by_smallest[m]
        g[m] = Fraction(within, total)
        p[m] = Fraction(total - short, total)

    log_operation(
        logger,
        "census_completed",
        kind="perm",
        n=n,
        types=types,
        expected_types=int(npartitions(n)),
        criterion_agrees=agrees,
    )
    return PermCensus(n=n, g=g, p=p, criterion_agrees=agrees, types=types)
