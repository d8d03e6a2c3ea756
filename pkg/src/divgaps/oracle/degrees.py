"""Subset-sum degree sets and their gaps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from divgaps.errors import InvalidParameterError


@dataclass(frozen=True)
class DegreeSet:
    """
    A subset of [0, n] stored as a bit vector (bit i set <=> i in the set).

    Attributes:
        bits: Python int bit vector
        n: Upper end of the ambient range
    """

    bits: int
    n: int

    def __contains__(self, value: object) -> bool:
        return isinstance(value, int) and 0 <= value and bool(self.bits >> value & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        i = 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def elements(self) -> list[int]:
        return list(self)

    @classmethod
    def from_elements(cls, values: Iterable[int], n: int) -> DegreeSet:
        bits = 0
        for value in values:
            bits |= 1 << value
        return cls(bits, n)


def subset_sums(parts: Iterable[int]) -> int:
    """Bit vector of all sums of sub-multisets of parts (bit-shift DP)."""
    bits = 1
    for part in parts:
        bits |= bits << part
    return bits


def max_gap_bits(bits: int) -> int:
    """Largest difference of consecutive set bits; 0 for a single element."""
    if bits <= 0:
        raise InvalidParameterError("S", bits, "a nonempty set containing 0")
    widest = 0
    previous = 0
    position = 0
    bits >>= 1
    while bits:
        position += 1
        if bits & 1:
            widest = max(widest, position - previous)
            previous = position
        bits >>= 1
    return widest


def max_gap(degrees: DegreeSet) -> int:
    """
    max_i (s_{i+1} - s_i) over consecutive elements.

    Raises:
        InvalidParameterError: If the set is empty or misses 0

    Example:
        >>> max_gap(DegreeSet.from_elements([0, 1, 5, 6], 6))
        4
    """
    if not degrees.bits & 1:
        raise InvalidParameterError("S", degrees.elements(), "a set containing 0")
    return max_gap_bits(degrees.bits)


def criterion_threshold(parts: Sequence[int]) -> int:
    """
    Least m for which the sorted-prefix criterion holds:
    every part l_i (ascending) satisfies l_i <= m + Σ_{k<i} l_k.

    Equals max_gap of the subset sums of parts; 0 for no parts.
    """
    threshold = 0
    running = 0
    for part in sorted(parts):
        threshold = max(threshold, part - running)
        running += part
    return threshold
