"""Property checkers for decompositions of Q_n and N_n."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import networkx as nx

from .constructions import NecklaceScd
from .core import Chain, ChainDecomposition, Subset, full_mask, mask_to_bits
from .errors import PreconditionError
from .necklace import orbit_table

WITNESS_CAP = 32


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``witnesses`` holds at most WITNESS_CAP entries unless the check was run
    with ``all_witnesses=True``; ``truncated`` tells whether some were dropped.
    """

    property: str
    passed: bool
    witnesses: list = field(default_factory=list)
    truncated: bool = False
    census: dict | None = None

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        if self.passed:
            return f"PASS {self.property}"
        w = "; ".join(_fmt(x) for x in self.witnesses[:3])
        return f"FAIL {self.property} witness={w}"


def _fmt(w) -> str:
    if isinstance(w, tuple):
        return "(" + ", ".join(_fmt(x) for x in w) + ")"
    return str(w)


class _Collector:
    def __init__(self, all_witnesses: bool):
        self.cap = None if all_witnesses else WITNESS_CAP
        self.items: list = []
        self.truncated = False

    def add(self, w) -> None:
        if self.cap is not None and len(self.items) >= self.cap:
            self.truncated = True
            return
        self.items.append(w)

    def report(self, name: str, census=None) -> VerificationReport:
        return VerificationReport(name, not self.items, self.items, self.truncated, census)


def check_scd(D: ChainDecomposition, all_witnesses: bool = False) -> VerificationReport:
    n = D.n
    w = _Collector(all_witnesses)
    if D.kind != "cube":
        w.add(("kind", D.kind))
        return w.report("scd")
    seen: dict[int, int] = {}
    for i, c in enumerate(D.chains):
        if not len(c):
            w.add(("empty_chain", i))
            continue
        if any(x.n != n for x in c):
            w.add(("wrong_dimension", i))
            continue
        if not c.is_saturated():
            w.add(("not_saturated", i, str(c)))
        if not c.is_symmetric():
            w.add(("not_symmetric", i, str(c)))
        for x in c:
            if x.mask in seen:
                w.add(("duplicate", x.bits, seen[x.mask], i))
            else:
                seen[x.mask] = i
    if len(seen) != 1 << n:
        for m in range(1 << n):
            if m not in seen:
                w.add(("uncovered", mask_to_bits(m, n)))
    a_n = comb(n, n // 2)
    if len(D.chains) != a_n:
        w.add(("chain_count", len(D.chains), a_n))
    return w.report("scd")


def _shared(D1: ChainDecomposition, D2: ChainDecomposition):
    """Yield (i, j, shared masks) for every chain pair with a common element."""
    where = D2.element_index()
    for i, c in enumerate(D1.chains):
        hits: dict[int, list[int]] = {}
        for x in c:
            j = where.get(x.mask)
            if j is not None:
                hits.setdefault(j, []).append(x.mask)
        for j in sorted(hits):
            yield i, j, hits[j]


def check_orthogonal(D1: ChainDecomposition, D2: ChainDecomposition, all_witnesses: bool = False) -> VerificationReport:
    if D1.n != D2.n:
        raise PreconditionError("decompositions of different dimensions")
    w = _Collector(all_witnesses)
    for i, j, common in _shared(D1, D2):
        if len(common) > 1:
            w.add((i, j, tuple(mask_to_bits(m, D1.n) for m in common)))
    return w.report("orthogonal")


def _longest(D: ChainDecomposition) -> int | None:
    idx = [i for i, c in enumerate(D.chains) if len(c) == D.n + 1]
    return idx[0] if len(idx) == 1 else None


def check_almost_orthogonal(
    D1: ChainDecomposition, D2: ChainDecomposition, all_witnesses: bool = False
) -> VerificationReport:
    if D1.n != D2.n:
        raise PreconditionError("decompositions of different dimensions")
    n = D1.n
    w = _Collector(all_witnesses)
    for k, D in enumerate((D1, D2)):
        if not check_scd(D):
            w.add(("not_scd", k))
    if w.items:
        return w.report("almost-orthogonal")
    l1, l2 = _longest(D1), _longest(D2)
    ends = {0, full_mask(n)}
    for i, j, common in _shared(D1, D2):
        if i == l1 and j == l2:
            bad = [m for m in common if m not in ends]
            if bad:
                w.add((i, j, tuple(mask_to_bits(m, n) for m in bad)))
        elif len(common) > 1:
            w.add((i, j, tuple(mask_to_bits(m, n) for m in common)))
    return w.report("almost-orthogonal")


def check_edge_disjoint(family: Sequence[ChainDecomposition], all_witnesses: bool = False) -> VerificationReport:
    w = _Collector(all_witnesses)
    owner: dict[tuple[int, int], int] = {}
    for k, D in enumerate(family):
        for e in sorted(D.edges()):
            if e in owner and owner[e] != k:
                w.add((f"{mask_to_bits(e[0], D.n)}-{mask_to_bits(e[1], D.n)}", owner[e], k))
            else:
                owner.setdefault(e, k)
    return w.report("edge-disjoint")


def _describe_component(g: nx.MultiGraph) -> tuple:
    v, e = g.number_of_nodes(), g.number_of_edges()
    if e < v:
        degrees = [d for _, d in g.degree()]
        if max(degrees) <= 2:
            return ("path", e)
        return ("tree", e, max(degrees))
    cycle = _two_core(g).number_of_nodes()
    if e == cycle:
        return ("cycle", cycle)
    return ("cycle_with_trees", cycle, e)


def _two_core(g: nx.MultiGraph) -> nx.MultiGraph:
    # 2-core that respects parallel edges (a double edge is a 2-cycle)
    h = nx.MultiGraph(g)
    leaves = [u for u, d in h.degree() if d <= 1]
    while leaves:
        h.remove_nodes_from(leaves)
        leaves = [u for u, d in h.degree() if d <= 1]
    return h


def check_good(family: Sequence[ChainDecomposition], n: int | None = None, all_witnesses: bool = False) -> VerificationReport:
    """Unicyclicity of the graph formed by all size-2 chains of the family."""
    if not family:
        raise PreconditionError("empty family")
    n = family[0].n if n is None else n
    if n % 2 == 0:
        raise PreconditionError("goodness is defined for odd n only")
    g = nx.MultiGraph()
    for D in family:
        for c in D.chains:
            if len(c) == 2:
                g.add_edge(c[0].mask, c[1].mask)
    w = _Collector(all_witnesses)
    census: Counter = Counter()
    comps = sorted(nx.connected_components(g), key=min)
    for comp in comps:
        sub = g.subgraph(comp)
        v, e = sub.number_of_nodes(), sub.number_of_edges()
        if e > v:
            w.add(("excess_edges", mask_to_bits(min(comp), n), v, e))
        else:
            census[_describe_component(sub)] += 1
    summary = {"edges": g.number_of_edges(), "components": dict(sorted(census.items()))}
    return w.report("good", census=summary)


def check_unimodal(s: NecklaceScd, all_witnesses: bool = False) -> VerificationReport:
    n = s.n
    orbit = orbit_table(n)
    w = _Collector(all_witnesses)
    for i, c in enumerate(s.chains):
        sizes = [orbit[m] for m in c.masks]
        if sizes[0] != sizes[-1] or any(d != n for d in sizes[1:-1]):
            w.add((i, str(c), tuple(sizes)))
    return w.report("unimodal")


def to_orthogonal(family: Sequence[ChainDecomposition]) -> list[ChainDecomposition]:
    """Move the empty set to a shortest chain in every decomposition but the first.

    Each target chain is chosen disjoint from the longest chains of all other
    decompositions and from the earlier targets, which keeps every chain pair
    within one common element.
    """
    family = list(family)
    if not family:
        return []
    n = family[0].n
    if n < 5:
        raise PreconditionError("to_orthogonal needs n >= 5")
    if len(family) == 1:
        return family
    longest = []
    for D in family:
        li = _longest(D)
        if li is None:
            raise PreconditionError("every decomposition needs a unique chain of size n+1")
        longest.append(li)
    blocked_by_long = [set(D.chains[li].masks) for D, li in zip(family, longest)]
    used: set[int] = set()
    out = [family[0]]
    for t in range(1, len(family)):
        D = family[t]
        forbidden = set(used)
        for u, masks in enumerate(blocked_by_long):
            if u != t:
                forbidden |= masks
        order = sorted(
            (i for i in range(len(D.chains)) if i != longest[t]), key=lambda i: (len(D.chains[i]), i)
        )
        shortest = len(D.chains[order[0]])
        target = next(
            (i for i in order if len(D.chains[i]) == shortest and not forbidden & set(D.chains[i].masks)),
            None,
        )
        if target is None:
            raise PreconditionError(f"no admissible shortest chain in decomposition {t}")
        chains = list(D.chains)
        L = chains[longest[t]]
        chains[longest[t]] = Chain(n, L.elements[1:])
        C = chains[target]
        used |= set(C.masks)
        chains[target] = Chain(n, (Subset(n, 0),) + C.elements)
        out.append(ChainDecomposition(n, tuple(chains)))
    return out


def check_necklace_scd(s: NecklaceScd, all_witnesses: bool = False) -> VerificationReport:
    """Representative chains are saturated, symmetric and hit every necklace once."""
    from .necklace import canon_table, necklace_chain_profile

    n = s.n
    canon = canon_table(n)
    w = _Collector(all_witnesses)
    seen: dict[int, int] = {}
    for i, c in enumerate(s.chains):
        if not len(c):
            w.add(("empty_chain", i))
            continue
        if not c.is_saturated():
            w.add(("not_saturated", i, str(c)))
        if not c.is_symmetric():
            w.add(("not_symmetric", i, str(c)))
        for x in c:
            u = canon[x.mask]
            if u in seen:
                w.add(("duplicate_necklace", mask_to_bits(u, n), seen[u], i))
            else:
                seen[u] = i
    for u in sorted(set(canon)):
        if u not in seen:
            w.add(("uncovered_necklace", mask_to_bits(u, n)))
    c_n, _ = necklace_chain_profile(n)
    if len(s.chains) != c_n:
        w.add(("chain_count", len(s.chains), c_n))
    return w.report("necklace-scd")
