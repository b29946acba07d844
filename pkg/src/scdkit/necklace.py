"""The necklace poset N_n, its edge capacities and the reduced multigraph."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .core import Subset, check_dimension, complement, full_mask, mask_to_bits, popcount, rot
from .errors import PreconditionError

POSET_MAX_DIMENSION = 20


def _reverse_bits(mask: int, n: int) -> int:
    out = 0
    for i in range(n):
        if mask >> i & 1:
            out |= 1 << (n - 1 - i)
    return out


def canonical_mask(mask: int, n: int) -> tuple[int, int]:
    """(lexicographically smallest rotation, orbit size) of a raw mask."""
    best = mask
    best_key = _reverse_bits(mask, n)
    orbit = n
    y = mask
    for k in range(1, n):
        y = rot(y, 1, n)
        if y == mask:
            orbit = k
            break
        key = _reverse_bits(y, n)
        if key < best_key:
            best, best_key = y, key
    return best, orbit


@lru_cache(maxsize=8)
def _tables(n: int) -> tuple[list[int], list[int]]:
    canon = [-1] * (1 << n)
    orbit = [0] * (1 << n)
    for mask in range(1 << n):
        if canon[mask] >= 0:
            continue
        c, d = canonical_mask(mask, n)
        y = mask
        for _ in range(d):
            canon[y] = c
            orbit[y] = d
            y = rot(y, 1, n)
    return canon, orbit


def canon_table(n: int) -> list[int]:
    return _tables(n)[0]


def orbit_table(n: int) -> list[int]:
    return _tables(n)[1]


@dataclass(frozen=True)
class Necklace:
    n: int
    canonical: Subset
    orbit_size: int

    @property
    def level(self) -> int:
        return self.canonical.level

    @property
    def full(self) -> bool:
        return self.orbit_size == self.n

    @property
    def deficient(self) -> bool:
        return self.orbit_size < self.n

    def members(self) -> list[Subset]:
        return [Subset(self.n, rot(self.canonical.mask, k, self.n)) for k in range(self.orbit_size)]

    def __str__(self) -> str:
        return f"<{self.canonical.bits}>"


def necklace_of(x: Subset) -> Necklace:
    c, d = canonical_mask(x.mask, x.n)
    return Necklace(x.n, Subset(x.n, c), d)


def _middle_distance2(level: int, n: int) -> int:
    # twice the distance to the middle, kept integral
    return abs(2 * level - n)


@dataclass
class NecklacePoset:
    """Leveled multigraph on necklaces; nodes are canonical masks.

    ``edges`` maps ``(lower, upper)`` canonical masks to the capacity c(e).
    """

    n: int
    levels: list[list[int]]
    orbit: dict[int, int]
    edges: dict[tuple[int, int], int]
    reduced: bool = False
    up: dict[int, list[int]] = field(default_factory=dict, repr=False)
    down: dict[int, list[int]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index_edges()

    def _index_edges(self):
        self.up = {u: [] for lvl in self.levels for u in lvl}
        self.down = {u: [] for lvl in self.levels for u in lvl}
        for (u, v) in self.sorted_edges():
            self.up[u].append(v)
            self.down[v].append(u)

    @property
    def nodes(self) -> list[int]:
        return [u for lvl in self.levels for u in lvl]

    def level(self, u: int) -> int:
        return popcount(u)

    def is_full(self, u: int) -> bool:
        return self.orbit[u] == self.n

    def capacity(self, u: int, v: int) -> int:
        return self.edges.get((u, v), 0)

    def node_key(self, u: int) -> tuple[int, str]:
        return (popcount(u), mask_to_bits(u, self.n))

    def sorted_nodes(self) -> list[int]:
        return sorted(self.nodes, key=self.node_key)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges, key=lambda e: (self.node_key(e[0]), self.node_key(e[1])))

    def edge_name(self, e: tuple[int, int]) -> str:
        return f"{mask_to_bits(e[0], self.n)}-{mask_to_bits(e[1], self.n)}"

    def node_name(self, u: int) -> str:
        return mask_to_bits(u, self.n)

    def level_sizes(self) -> list[int]:
        return [len(lvl) for lvl in self.levels]

    def complement_node(self, u: int) -> int:
        return canon_table(self.n)[u ^ full_mask(self.n)]

    def complement_edge(self, e: tuple[int, int]) -> tuple[int, int]:
        return (self.complement_node(e[1]), self.complement_node(e[0]))

    def necklace(self, u: int) -> Necklace:
        return Necklace(self.n, Subset(self.n, u), self.orbit[u])


class ReducedNecklaceGraph(NecklacePoset):
    """N_n with the middle-pointing full/deficient edges removed."""


def build_poset(n: int) -> NecklacePoset:
    return _build_poset(n)


@lru_cache(maxsize=16)
def _build_poset(n: int) -> NecklacePoset:
    check_dimension(n)
    if n > POSET_MAX_DIMENSION:
        raise PreconditionError(f"necklace posets are enumerated explicitly; n <= {POSET_MAX_DIMENSION}")
    canon, orbit_of = _tables(n)
    reps = sorted({canon[m] for m in range(1 << n)}, key=lambda u: (popcount(u), mask_to_bits(u, n)))
    levels: list[list[int]] = [[] for _ in range(n + 1)]
    for u in reps:
        levels[popcount(u)].append(u)
    orbit = {u: orbit_of[u] for u in reps}

    add_count: dict[tuple[int, int], int] = {}
    rem_count: dict[tuple[int, int], int] = {}
    for u in reps:
        for i in range(n):
            bit = 1 << i
            if u & bit:
                e = (canon[u ^ bit], u)
                rem_count[e] = rem_count.get(e, 0) + 1
            else:
                e = (u, canon[u | bit])
                add_count[e] = add_count.get(e, 0) + 1

    edges = {}
    for e, c_add in add_count.items():
        k = popcount(e[0])
        edges[e] = c_add if 2 * k <= n - 1 else rem_count[e]
    return NecklacePoset(n, levels, orbit, edges)


def reduce(p: NecklacePoset) -> ReducedNecklaceGraph:
    n = p.n
    kept = {}
    for (u, v), c in p.edges.items():
        fu, fv = p.is_full(u), p.is_full(v)
        if fu != fv:
            d_node, f_node = (v, u) if fu else (u, v)
            if _middle_distance2(popcount(d_node), n) < _middle_distance2(popcount(f_node), n):
                continue
        kept[(u, v)] = c
    return ReducedNecklaceGraph(n, [list(lvl) for lvl in p.levels], dict(p.orbit), kept, reduced=True)


@lru_cache(maxsize=16)
def reduced_graph(n: int) -> ReducedNecklaceGraph:
    return reduce(build_poset(n))


def necklace_level_sizes(n: int) -> list[int]:
    return build_poset(n).level_sizes()


def necklace_chain_profile(n: int) -> tuple[int, list[int]]:
    """(c_n, chain sizes in decreasing order) for any SCD of N_n."""
    sizes = necklace_level_sizes(n)
    chains = []
    for k in range(n // 2 + 1):
        new = sizes[k] - (sizes[k - 1] if k else 0)
        if new < 0:
            raise PreconditionError(f"level sizes of N_{n} are not unimodal")
        chains.extend([n + 1 - 2 * k] * new)
    return len(chains), chains


def complement_necklace(nk: Necklace) -> Necklace:
    return necklace_of(complement(nk.canonical))
