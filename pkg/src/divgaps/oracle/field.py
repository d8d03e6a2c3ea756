"""Finite fields F_{p^k} as lookup tables over the integers 0..q-1.

An element is the base-p integer of its coordinate vector: for k > 1 the element
Σ a_i p^i stands for Σ a_i x^i modulo a fixed monic irreducible of degree k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from sympy import factorint, isprime

from divgaps.errors import InvalidFieldError, ResourceLimitExceededError
from divgaps.utils.logging import get_logger, log_operation

logger = get_logger(__name__)

IntTable = npt.NDArray[np.int64]


def _poly_mulmod_p(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_rem_p(a: list[int], modulus: list[int], p: int) -> list[int]:
    """Remainder of a modulo a monic modulus, coefficients low degree first."""
    a = list(a)
    k = len(modulus) - 1
    for top in range(len(a) - 1, k - 1, -1):
        c = a[top]
        if c:
            shift = top - k
            for i, mc in enumerate(modulus):
                a[shift + i] = (a[shift + i] - c * mc) % p
    return (a + [0] * k)[:k]


def _is_irreducible_p(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2 over F_p."""
    degree = len(poly) - 1
    for d in range(1, degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not any(_poly_rem_p(poly, divisor, p)[:d]):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """
    Lexicographically least monic irreducible of degree k over F_p.

    Candidates x^k + c_{k-1}x^{k-1} + ... + c_0 are ordered by the integer
    Σ c_i p^i; coefficients are returned low degree first, leading 1 included.
    """
    for index in range(p**k):
        tail = [(index // p**i) % p for i in range(k)]
        candidate = tail + [1]
        if _is_irreducible_p(candidate, p):
            return tuple(candidate)
    raise InvalidFieldError(p, k, f"No irreducible of degree {k} over F_{p}")


@dataclass(frozen=True, eq=False)
class FiniteField:
    """
    F_q with q = p^k, realized by addition and multiplication tables.

    # AICODE-NOTE: Immutable and shared between censuses; identity is the
    # (p, k) pair, which also fixes the modulus deterministically.

    Attributes:
        p: Characteristic
        k: Degree over F_p
        modulus: Defining polynomial (low degree first), (0, 1) for k = 1
        add_table: q x q sums
        mul_table: q x q products
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    add_table: IntTable = field(repr=False)
    mul_table: IntTable = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self._negations[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self._inverses[a])

    def power(self, a: int, e: int) -> int:
        result = 1
        for _ in range(e):
            result = self.mul(result, a)
        return result

    @property
    def _negations(self) -> npt.NDArray[np.int64]:
        return np.argmin(self.add_table, axis=1)

    @property
    def _inverses(self) -> npt.NDArray[np.int64]:
        inv = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        return inv

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q})"


@lru_cache(maxsize=64)
def build_field(p: int, k: int = 1, budget: int = 10**7) -> FiniteField:
    """
    Build F_{p^k}.

    Args:
        p: Prime characteristic
        k: Extension degree (k >= 1)
        budget: Largest admissible field size

    Raises:
        InvalidFieldError: If p is not prime or k < 1
        ResourceLimitExceededError: If p^k exceeds the budget

    Example:
        >>> build_field(3).mul(2, 2)
        1
    """
    if not isinstance(p, int) or not isinstance(k, int) or k < 1 or not isprime(p):
        raise InvalidFieldError(p, k)
    q = p**k
    if q > budget:
        raise ResourceLimitExceededError("enumeration_budget", q, budget)

    if k == 1:
        values = np.arange(p, dtype=np.int64)
        add = (values[:, None] + values[None, :]) % p
        mul = (values[:, None] * values[None, :]) % p
        modulus: tuple[int, ...] = (0, 1)
    else:
        modulus = least_irreducible(p, k)
        digits = [[(a // p**i) % p for i in range(k)] for a in range(q)]

        def encode(vector: list[int]) -> int:
            return sum(c * p**i for i, c in enumerate(vector))

        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                product = _poly_rem_p(_poly_mulmod_p(digits[a], digits[b], p), list(modulus), p)
                mul[a, b] = encode(product)

    add.setflags(write=False)
    mul.setflags(write=False)
    log_operation(logger, "field_built", p=p, k=k, modulus=modulus)
    return FiniteField(p=p, k=k, modulus=modulus, add_table=add, mul_table=mul)


def field_of_size(q: int, budget: int = 10**7) -> FiniteField:
    """F_q for a prime power q."""
    factors = factorint(q)
    if len(factors) != 1:
        raise InvalidFieldError(q, 1, f"Field size {q} is not a prime power")
    ((p, k),) = factors.items()
    return build_field(int(p), int(k), budget)
