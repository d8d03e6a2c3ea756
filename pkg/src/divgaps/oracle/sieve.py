"""Smallest-factor sieve over all monic polynomials of degree <= n over F_q.

# AICODE-NOTE: A monic polynomial of degree d is stored at index Σ_{i<d} c_i q^i
# of layer d (the leading 1 is implicit), so the layers enumerate coefficient
# vectors in lexicographic order. For every F the sieve records the degree of
# its smallest irreducible factor P and the index of F/P one layer down; the
# factor-degree multiset of any F is recovered by following these links.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from divgaps.errors import ResourceLimitExceededError
from divgaps.oracle.field import FiniteField
from divgaps.utils.logging import get_logger, log_operation

logger = get_logger(__name__)

IndexArray = npt.NDArray[np.int64]

CHUNK = 1 << 20


def layer_digits(q: int, degree: int, indices: IndexArray) -> IndexArray:
    """Coefficient matrix (len(indices) x degree + 1) of monic polynomials, low degree first."""
    digits = np.empty((len(indices), degree + 1), dtype=np.int64)
    rest = indices.copy()
    for i in range(degree):
        digits[:, i] = rest % q
        rest //= q
    digits[:, degree] = 1
    return digits


def multiply_layers(
    gf: FiniteField, left: IndexArray, d: int, right: IndexArray, e: int
) -> IndexArray:
    """
    Indices (in layer d + e) of all products left[a]·right[b], shape (len(left), len(right)).
    """
    q = gf.q
    a = layer_digits(q, d, left)
    b = layer_digits(q, e, right)
    add, mul = gf.add_table, gf.mul_table
    out = np.zeros((len(left), len(right)), dtype=np.int64)
    weight = 1
    for k in range(d + e):
        coeff = np.zeros((len(left), len(right)), dtype=np.int64)
        for i in range(max(0, k - e), min(d, k) + 1):
            coeff = add[coeff, mul[a[:, i][:, None], b[:, k - i][None, :]]]
        out += coeff * weight
        weight *= q
    return out


@dataclass(frozen=True)
class SieveLayers:
    """
    Per-layer sieve output for degrees 0..n.

    Attributes:
        q: Field size
        n: Top degree
        smallest: smallest[d][F] = degree of the smallest irreducible factor of F
            (n + 1 for the constant polynomial)
        cofactor: cofactor[d][F] = index of F / P in layer d - smallest[d][F]
        irreducibles: irreducibles[d] = indices of the irreducibles of degree d
    """

    q: int
    n: int
    smallest: list[IndexArray] = field(repr=False)
    cofactor: list[IndexArray] = field(repr=False)
    irreducibles: list[IndexArray] = field(repr=False)

    def factor_degrees(self, degree: int, index: int) -> list[int]:
        """Multiset of irreducible-factor degrees of one polynomial, ascending."""
        parts: list[int] = []
        while degree > 0:
            step = int(self.smallest[degree][index])
            parts.append(step)
            index = int(self.cofactor[degree][index])
            degree -= step
        return parts


def check_budget(q: int, n: int, budget: int) -> None:
    total = q**n
    if total > budget:
        raise ResourceLimitExceededError("enumeration_budget", total, budget)


def sieve_layers(gf: FiniteField, n: int, budget: int = 10**7) -> SieveLayers:
    """
    Run the smallest-factor sieve up to degree n.

    Degrees d are processed in ascending order. The layer-d entries still
    unmarked when d is reached are exactly the irreducibles of degree d; each is
    then multiplied by every polynomial of degree 1..n-d, marking products not
    yet claimed by a smaller factor degree.

    Raises:
        ResourceLimitExceededError: If q^n exceeds the budget
    """
    q = gf.q
    check_budget(q, n, budget)
    unset = 0
    smallest = [np.full(q**d, unset, dtype=np.int64) for d in range(n + 1)]
    cofactor = [np.zeros(q**d, dtype=np.int64) for d in range(n + 1)]
    smallest[0][0] = n + 1
    irreducibles: list[IndexArray] = [np.zeros(0, dtype=np.int64)]

    for d in range(1, n + 1):
        found = np.flatnonzero(smallest[d] == unset)
        smallest[d][found] = d
        cofactor[d][found] = 0
        irreducibles.append(found)
        for e in range(1, n - d + 1):
            layer = smallest[d + e]
            rows = max(1, CHUNK // max(1, len(found)))
            for start in range(0, q**e, rows):
                right = np.arange(start, min(start + rows, q**e), dtype=np.int64)
                products = multiply_layers(gf, found, d, right, e)
                targets = products.ravel()
                owners = np.broadcast_to(right[None, :], products.shape).ravel()
                fresh = layer[targets] == unset
                layer[targets[fresh]] = d
                cofactor[d + e][targets[fresh]] = owners[fresh]
        log_operation(logger, "sieve_layer", q=q, degree=d, irreducibles=len(found))

    return SieveLayers(q=q, n=n, smallest=smallest, cofactor=cofactor, irreducibles=irreducibles)
