"""SCDs of N_n selected as subchains of the standard SCD D_n.

Two selection rules are provided: minimal block code per necklace (prime n
only) and maximal number of unmatched 1s per necklace, followed by trimming of
duplicate representatives (any n).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Chain, Subset, check_dimension, mask_to_bits
from .errors import PreconditionError
from .greene_kleitman import _match_mask, _standard_chains, block_code_mask
from .necklace import _reverse_bits, canon_table, orbit_table


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class NecklaceScd:
    """An SCD of N_n given by one chain of representatives per necklace chain.

    Each chain is a saturated chain in Q_n whose elements represent the
    necklaces of the corresponding chain of N_n.
    """

    n: int
    chains: tuple[Chain, ...]

    def __len__(self) -> int:
        return len(self.chains)

    def __iter__(self):
        return iter(self.chains)

    def necklace_chains(self) -> list[tuple[int, ...]]:
        canon = canon_table(self.n)
        return [tuple(canon[m] for m in c.masks) for c in self.chains]

    def complement(self) -> "NecklaceScd":
        return NecklaceScd(self.n, tuple(c.complement() for c in self.chains))

    def sizes(self) -> list[int]:
        return [len(c) for c in self.chains]


@dataclass(frozen=True)
class RepresentativeSet:
    n: int
    kind: str
    members: frozenset[Subset]


def _sort_chains(n: int, chains) -> tuple[Chain, ...]:
    chains = sorted(chains, key=lambda c: (-len(c), _reverse_bits(c[0], n)))
    return tuple(Chain.from_masks(n, c) for c in chains)


def _subchains(n: int, members: set[int]) -> list[list[int]]:
    out = []
    for chain in _standard_chains(n):
        idx = [i for i, m in enumerate(chain) if m in members]
        if not idx:
            continue
        if idx != list(range(idx[0], idx[-1] + 1)):
            raise AssertionError(f"representatives are not contiguous on the D_{n} chain of {mask_to_bits(chain[0], n)}")
        out.append([chain[i] for i in idx])
    return out


def _necklace_members(n: int) -> dict[int, list[int]]:
    canon = canon_table(n)
    groups: dict[int, list[int]] = {}
    for m in range(1 << n):
        groups.setdefault(canon[m], []).append(m)
    return groups


def gks_representatives(n: int) -> RepresentativeSet:
    check_dimension(n)
    if not is_prime(n):
        raise PreconditionError(
            f"n={n} is not prime: block codes do not single out one representative per necklace"
        )
    reps = set()
    for members in _necklace_members(n).values():
        reps.add(min(members, key=lambda m: (block_code_mask(m, n), _reverse_bits(m, n))))
    return RepresentativeSet(n, "GKS", frozenset(Subset(n, m) for m in reps))


def gks_scd(n: int) -> NecklaceScd:
    reps = {x.mask for x in gks_representatives(n).members}
    return NecklaceScd(n, _sort_chains(n, _subchains(n, reps)))


def jordan_representatives(n: int) -> RepresentativeSet:
    check_dimension(n)
    reps = []
    for members in _necklace_members(n).values():
        u1 = {m: len(_match_mask(m, n)[2]) for m in members}
        best = max(u1.values())
        reps.extend(m for m in members if u1[m] == best)
    return RepresentativeSet(n, "Jordan", frozenset(Subset(n, m) for m in reps))


def jordan_scd(n: int) -> NecklaceScd:
    reps = {x.mask for x in jordan_representatives(n).members}
    chains = _subchains(n, reps)
    canon = canon_table(n)

    while True:
        where: dict[int, list[int]] = {}
        for ci, chain in enumerate(chains):
            for m in chain:
                where.setdefault(canon[m], []).append(ci)
        dups = [c for c, occ in where.items() if len(occ) > 1]
        if not dups:
            break
        # lowest level first, then lexicographically smallest necklace
        c = min(dups, key=lambda u: (bin(u).count("1"), _reverse_bits(u, n)))
        # trim the shortest chain; equal sizes -> lexicographically larger bottom
        victim = min(where[c], key=lambda ci: (len(chains[ci]), -_reverse_bits(chains[ci][0], n)))
        chain = chains[victim]
        if canon[chain[0]] != c and canon[chain[-1]] != c:
            raise AssertionError("duplicate representative is not at a chain end")
        chains[victim] = chain[1:-1]
        chains = [ch for ch in chains if ch]

    covered = sorted(canon[m] for ch in chains for m in ch)
    if covered != sorted(set(canon)):
        raise AssertionError(f"trimmed chains do not cover N_{n} exactly once")
    return NecklaceScd(n, _sort_chains(n, chains))


def necklace_scd_from_forms(n: int, forms) -> NecklaceScd:
    """Build a NecklaceScd from (bottom element set, added elements) pairs."""
    chains = []
    for bottom, added in forms:
        x = Subset.from_elements(n, bottom)
        elems = [x]
        for a in added:
            x = Subset(n, x.mask | 1 << (a - 1))
            elems.append(x)
        chains.append(Chain(n, tuple(elems)))
    return NecklaceScd(n, tuple(chains))


def orbit_sizes(scd: NecklaceScd) -> list[tuple[int, ...]]:
    orbit = orbit_table(scd.n)
    return [tuple(orbit[m] for m in c.masks) for c in scd.chains]


def complement_scd(scd: NecklaceScd) -> NecklaceScd:
    return scd.complement()

