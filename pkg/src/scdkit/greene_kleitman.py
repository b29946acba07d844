"""Parenthesis matching and the standard SCD D_n.

Every 0-bit is an opening and every 1-bit a closing parenthesis, read from
element 1 (leftmost) to element n.  Positions are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

from .core import Chain, ChainDecomposition, Subset, check_dimension
from .errors import PreconditionError


@dataclass(frozen=True)
class Matching:
    M: frozenset[tuple[int, int]]
    U0: tuple[int, ...]
    U1: tuple[int, ...]

    @property
    def free(self) -> tuple[int, ...]:
        """The unmatched positions in increasing order (U1 then U0)."""
        return self.U1 + self.U0


def _match_mask(mask: int, n: int) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...], tuple[int, ...]]:
    stack = []
    pairs = []
    u1 = []
    for i in range(n):
        if mask >> i & 1:
            if stack:
                pairs.append((stack.pop() + 1, i + 1))
            else:
                u1.append(i + 1)
        else:
            stack.append(i)
    return tuple(sorted(pairs)), tuple(i + 1 for i in stack), tuple(u1)


def match(x: Subset) -> Matching:
    pairs, u0, u1 = _match_mask(x.mask, x.n)
    return Matching(frozenset(pairs), u0, u1)


def matched_mask(mask: int, n: int) -> int:
    """Bitmask of the matched positions of ``mask``; identifies its D_n chain."""
    out = 0
    for i, j in _match_mask(mask, n)[0]:
        out |= 1 << (i - 1) | 1 << (j - 1)
    return out


def tau(x: Subset) -> Subset:
    _, u0, _ = _match_mask(x.mask, x.n)
    if not u0:
        raise PreconditionError(f"tau undefined on {x.bits}: no unmatched 0")
    return Subset(x.n, x.mask | 1 << (u0[0] - 1))


def tau_inverse(x: Subset) -> Subset:
    _, _, u1 = _match_mask(x.mask, x.n)
    if not u1:
        raise PreconditionError(f"tau^-1 undefined on {x.bits}: no unmatched 1")
    return Subset(x.n, x.mask & ~(1 << (u1[-1] - 1)))


def _chain_masks(mask: int, n: int) -> tuple[int, ...]:
    # The matched pairs never change along a chain and the free positions are
    # filled with 1s from the left, so the whole chain follows from one matching.
    pairs, u0, u1 = _match_mask(mask, n)
    base = 0
    for _, j in pairs:
        base |= 1 << (j - 1)
    out = [base]
    for p in u1 + u0:
        base |= 1 << (p - 1)
        out.append(base)
    return tuple(out)


def chain_of(x: Subset) -> Chain:
    return Chain.from_masks(x.n, _chain_masks(x.mask, x.n))


def chain_position(mask: int, n: int) -> int:
    """Index of ``mask`` within its D_n chain (its number of unmatched 1s)."""
    return len(_match_mask(mask, n)[2])


@lru_cache(maxsize=64)
def _standard_chains(n: int) -> tuple[tuple[int, ...], ...]:
    chains = []
    for mask in range(1 << n):
        if _match_mask(mask, n)[2]:
            continue  # not a chain bottom
        chains.append(_chain_masks(mask, n))
    return tuple(chains)


def standard_scd(n: int) -> ChainDecomposition:
    check_dimension(n)
    if n > 24:
        raise PreconditionError("standard_scd materializes all 2^n subsets; n <= 24 only")
    return ChainDecomposition(n, tuple(Chain.from_masks(n, c) for c in _standard_chains(n)))


@dataclass(frozen=True)
class BlockCode:
    finite: bool
    parts: tuple[int, ...] = ()

    def sort_key(self) -> tuple[float, ...]:
        return tuple(self.parts) if self.finite else (math.inf,)

    def __lt__(self, other: "BlockCode") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")" if self.finite else "(inf)"


INFINITE = BlockCode(False)


def block_code_mask(mask: int, n: int) -> tuple[float, ...]:
    """Sort key of the block code; ``(inf,)`` when not finite."""
    if not (mask & 1) or mask >> (n - 1) & 1:
        return (math.inf,)
    parts = []
    i = 0
    while i < n:
        start = i
        while i < n and mask >> i & 1:
            i += 1
        while i < n and not mask >> i & 1:
            i += 1
        parts.append(i - start)
    return tuple(parts)


def block_code(x: Subset) -> BlockCode:
    key = block_code_mask(x.mask, x.n)
    if key == (math.inf,):
        return INFINITE
    return BlockCode(True, key)
