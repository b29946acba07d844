"""Subsets of [n] as bitmasks, chains, decompositions and the counting functions.

A subset of ``[n] = {1, ..., n}`` is stored as an integer mask where element
``i`` lives in bit ``i - 1``.  The human-readable form is the characteristic
bitstring ``x_1 ... x_n`` with element 1 as the *leftmost* character.  The
cyclic renaming ``1 -> 2 -> ... -> n -> 1`` is a right rotation of that string,
which on the mask is a left rotation within ``n`` bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError

MAX_DIMENSION = 32


def check_dimension(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_DIMENSION:
        raise DimensionError(f"dimension must be an integer in 1..{MAX_DIMENSION}, got {n!r}")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def rot(mask: int, k: int, n: int) -> int:
    """sigma^k on a raw mask."""
    k %= n
    if k == 0:
        return mask
    return ((mask << k) | (mask >> (n - k))) & ((1 << n) - 1)


def mask_to_bits(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def bits_to_mask(bits: str) -> int:
    mask = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise ValueError(f"not a bitstring: {bits!r}")
    return mask


def lex_key(mask: int, n: int) -> int:
    """Integer whose numeric order is the lexicographic order of the bitstring."""
    return int(mask_to_bits(mask, n), 2) if n else 0


@dataclass(frozen=True, slots=True)
class Subset:
    n: int
    mask: int

    def __post_init__(self):
        check_dimension(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has bits outside 1..{self.n}")

    @classmethod
    def from_bits(cls, bits: str) -> "Subset":
        return cls(len(bits), bits_to_mask(bits))

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[int]) -> "Subset":
        mask = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside [1, {n}]")
            mask |= 1 << (e - 1)
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "Subset":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls(n, full_mask(n))

    @property
    def bits(self) -> str:
        return mask_to_bits(self.mask, self.n)

    @property
    def level(self) -> int:
        return popcount(self.mask)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.n and bool(self.mask >> (element - 1) & 1)

    def issubset(self, other: "Subset") -> bool:
        return self.mask & ~other.mask == 0

    def covers(self, other: "Subset") -> bool:
        """True if ``other`` is obtained from self by removing one element."""
        return other.issubset(self) and self.level == other.level + 1

    def __str__(self) -> str:
        return self.bits

    def __repr__(self) -> str:
        return f"Subset({self.bits!r})"


def rotate(x: Subset, k: int = 1) -> Subset:
    return Subset(x.n, rot(x.mask, k, x.n))


def complement(x: Subset) -> Subset:
    return Subset(x.n, x.mask ^ full_mask(x.n))


@dataclass(frozen=True, slots=True)
class Chain:
    """An ordered run of subsets, bottom first.

    Chains are not validated on construction so that broken chains can be
    represented and rejected by the verifiers.
    """

    n: int
    elements: tuple[Subset, ...]

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Chain":
        return cls(n, tuple(Subset(n, m) for m in masks))

    @classmethod
    def from_bits(cls, bitstrings: Sequence[str]) -> "Chain":
        subsets = tuple(Subset.from_bits(b) for b in bitstrings)
        if not subsets:
            raise ValueError("empty chain needs an explicit dimension")
        return cls(subsets[0].n, subsets)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(x.mask for x in self.elements)

    @property
    def bottom(self) -> Subset:
        return self.elements[0]

    @property
    def top(self) -> Subset:
        return self.elements[-1]

    def is_saturated(self) -> bool:
        return all(b.covers(a) for a, b in zip(self.elements, self.elements[1:]))

    def is_increasing(self) -> bool:
        return all(
            a.issubset(b) and a.level < b.level for a, b in zip(self.elements, self.elements[1:])
        )

    def is_symmetric(self) -> bool:
        return bool(self.elements) and self.bottom.level + self.top.level == self.n

    def edges(self) -> list[tuple[int, int]]:
        ms = self.masks
        return list(zip(ms, ms[1:]))

    def complement(self) -> "Chain":
        return Chain(self.n, tuple(complement(x) for x in reversed(self.elements)))

    def rotate(self, k: int) -> "Chain":
        return Chain(self.n, tuple(rotate(x, k) for x in self.elements))

    def __str__(self) -> str:
        return " ".join(x.bits for x in self.elements)


@dataclass(frozen=True, slots=True)
class ChainDecomposition:
    n: int
    chains: tuple[Chain, ...]
    kind: str = "cube"

    def __post_init__(self):
        if self.kind not in ("cube", "necklace"):
            raise ValueError(f"unknown decomposition kind {self.kind!r}")

    def __len__(self) -> int:
        return len(self.chains)

    def __iter__(self) -> Iterator[Chain]:
        return iter(self.chains)

    def edges(self) -> set[tuple[int, int]]:
        return {e for c in self.chains for e in c.edges()}

    def element_index(self) -> dict[int, int]:
        """Map element mask -> index of the (last) chain containing it."""
        return {x.mask: i for i, c in enumerate(self.chains) for x in c.elements}

    def longest_chain_index(self) -> int:
        return max(range(len(self.chains)), key=lambda i: len(self.chains[i]))

    def size_profile(self) -> list[tuple[int, int]]:
        counts: dict[int, int] = {}
        for c in self.chains:
            counts[len(c)] = counts.get(len(c), 0) + 1
        return sorted(counts.items(), reverse=True)


def complement_decomposition(d: ChainDecomposition) -> ChainDecomposition:
    return ChainDecomposition(d.n, tuple(c.complement() for c in d.chains), d.kind)


@dataclass(frozen=True)
class CountTable:
    n: int
    a_n: int
    b_n: int


def count_table(n: int) -> CountTable:
    check_dimension(n)
    return CountTable(n, comb(n, n // 2), n // 2 + 1)


def chain_size_profile(n: int) -> list[tuple[int, int]]:
    """(size, count) of the chains in any SCD of Q_n, longest first."""
    check_dimension(n)
    return [
        (n + 1 - 2 * k, comb(n, k) - (comb(n, k - 1) if k else 0)) for k in range(n // 2 + 1)
    ]
