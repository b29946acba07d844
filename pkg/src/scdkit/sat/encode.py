"""CNF whose models are s edge-disjoint unimodal SCDs of the reduced necklace graph.

Variables: X[i, j, e] (edge e in chain j of SCD i) and Y[i, j, u] (node u in
chain j of SCD i), registered only where chain j spans the levels of e or u.
Ids are dense and assigned SCD by SCD (free SCDs only, ascending), then chain
by chain, inside a chain first all edges then all nodes, both in the
(level, bitstring) order of the graph.  Auxiliary variables (capacity
counters, diamond path indicators) follow.

Pinned SCDs contribute constants and coupled SCDs reuse the variables of
their partner through the complement map, so neither has ids of its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..constructions import NecklaceScd, gks_scd, is_prime, jordan_scd
from ..core import full_mask
from ..errors import EncodingError, PreconditionError
from ..necklace import ReducedNecklaceGraph, canon_table, necklace_chain_profile, reduced_graph
from .cardinality import at_most_k

EDGE_DISJOINT = "edge_disjoint"
ALMOST_ORTHOGONAL_GOOD = "almost_orthogonal_good"
SEARCH_MODES = (EDGE_DISJOINT, ALMOST_ORTHOGONAL_GOOD)


@dataclass
class SearchConfig:
    """Search parameters; SCD indices are 1-based.

    An SCD may be pinned and coupled to a free partner at the same time, in
    which case the partner becomes the pinned complement.
    """

    n: int
    s: int
    mode: str = EDGE_DISJOINT
    fixed: list[tuple[int, NecklaceScd]] = field(default_factory=list)
    coupled: list[tuple[int, int]] = field(default_factory=list)
    diamonds: bool = True
    solver: Sequence[str] | str | None = None
    max_iter: int = 10_000
    incremental: bool = False
    block_nodes: bool = False
    unroll_budget: int = 2_000_000
    good_attempts: int = 50

    def __post_init__(self):
        if self.mode not in SEARCH_MODES:
            raise ValueError(f"mode must be one of {SEARCH_MODES}")
        if self.n < 1 or self.s < 1:
            raise PreconditionError("n and s must be positive")
        pinned = [i for i, _ in self.fixed]
        if len(set(pinned)) != len(pinned):
            raise PreconditionError("an SCD index is pinned twice")
        seen = set()
        for i, scd in self.fixed:
            if not 1 <= i <= self.s:
                raise PreconditionError(f"pinned index {i} outside 1..{self.s}")
            if scd.n != self.n:
                raise PreconditionError("pinned SCD has the wrong dimension")
        for a, b in self.coupled:
            for i in (a, b):
                if not 1 <= i <= self.s:
                    raise PreconditionError(f"coupled index {i} outside 1..{self.s}")
                if i in seen:
                    raise PreconditionError(f"SCD {i} appears in two couplings")
                seen.add(i)
            if a == b:
                raise PreconditionError("an SCD cannot be coupled with itself")
            if a in pinned and b in pinned:
                raise PreconditionError(f"coupled pair ({a}, {b}) is pinned on both sides")

    @classmethod
    def default(cls, n: int, s: int, mode: str = EDGE_DISJOINT, **kw) -> "SearchConfig":
        """Pin SCD 1 to the block-code (prime n) or Jordan SCD, couple (1,2), (3,4), ..."""
        base = gks_scd(n) if is_prime(n) else jordan_scd(n)
        coupled = [(i, i + 1) for i in range(1, s, 2)]
        return cls(n, s, mode, fixed=[(1, base)], coupled=coupled, **kw)


class VariableRegistry:
    def __init__(self):
        self.x: dict[tuple[int, int, tuple[int, int]], int] = {}
        self.y: dict[tuple[int, int, int], int] = {}
        self.count = 0

    def new(self) -> int:
        self.count += 1
        return self.count

    def add_x(self, i, j, e) -> int:
        v = self.x[(i, j, e)] = self.new()
        return v

    def add_y(self, i, j, u) -> int:
        v = self.y[(i, j, u)] = self.new()
        return v


@dataclass
class CnfInstance:
    n: int
    s: int
    mode: str
    graph: ReducedNecklaceGraph
    sizes: list[int]
    registry: VariableRegistry
    roles: dict[int, tuple]
    pinned_chains: dict[int, list[tuple[int, ...]]]
    clauses: list[list[int]] = field(default_factory=list)
    config: SearchConfig | None = None
    diamond_count: int = 0

    @property
    def num_vars(self) -> int:
        return self.registry.count

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def levels(self, j: int) -> tuple[int, int]:
        k = (self.n + 1 - self.sizes[j - 1]) // 2
        return k, self.n - k

    # literals: positive/negative ints, or the constants True/False
    def x_lit(self, i: int, j: int, e: tuple[int, int]):
        role = self.roles[i]
        if role[0] == "free":
            return self.registry.x.get((i, j, e), False)
        if role[0] == "comp":
            return self.x_lit(role[1], j, self.graph.complement_edge(e))
        return e in self._pinned_edges(i, j)

    def y_lit(self, i: int, j: int, u: int):
        role = self.roles[i]
        if role[0] == "free":
            return self.registry.y.get((i, j, u), False)
        if role[0] == "comp":
            return self.y_lit(role[1], j, self.graph.complement_node(u))
        return u in self.pinned_chains[i][j - 1]

    def _pinned_edges(self, i, j):
        nodes = self.pinned_chains[i][j - 1]
        return set(zip(nodes, nodes[1:]))

    def add_clause(self, lits) -> bool:
        """Add a clause given with possibly constant literals.

        Returns False if the clause is already satisfied by constants; raises
        EncodingError if it simplifies to the empty clause.
        """
        out = []
        seen = set()
        for lit in lits:
            if lit is True:
                return False
            if lit is False:
                continue
            if -lit in seen:
                return False
            if lit not in seen:
                seen.add(lit)
                out.append(lit)
        if not out:
            raise EncodingError("clause simplifies to the empty clause")
        self.clauses.append(out)
        return True


def neg(lit):
    if lit is True or lit is False:
        return not lit
    return -lit


def _chain_order_key(graph, chain):
    return (-len(chain), graph.node_key(chain[0]))


def _assign_pinned(graph: ReducedNecklaceGraph, scd: NecklaceScd, sizes: list[int]) -> list[tuple[int, ...]]:
    chains = sorted(scd.necklace_chains(), key=lambda c: _chain_order_key(graph, c))
    if [len(c) for c in chains] != sizes:
        raise PreconditionError("pinned SCD does not have the chain profile of N_n")
    for c in chains:
        for e in zip(c, c[1:]):
            if e not in graph.edges:
                raise PreconditionError(f"pinned chain uses {graph.edge_name(e)}, which is not an edge of the reduced graph")
    return chains


def _resolve_roles(cfg: SearchConfig, graph, sizes):
    roles: dict[int, tuple] = {i: ("free",) for i in range(1, cfg.s + 1)}
    pinned: dict[int, list] = {}
    for i, scd in cfg.fixed:
        roles[i] = ("pinned",)
        pinned[i] = _assign_pinned(graph, scd, sizes)
    for a, b in cfg.coupled:
        src, dst = (b, a) if b in pinned else (a, b)
        if src in pinned:
            roles[dst] = ("pinned",)
            pinned[dst] = [tuple(graph.complement_node(u) for u in reversed(c)) for c in pinned[src]]
        else:
            roles[dst] = ("comp", src)
    return roles, pinned


def encode_phi(cfg: SearchConfig) -> CnfInstance:
    n = cfg.n
    graph = reduced_graph(n)
    _, sizes = necklace_chain_profile(n)
    roles, pinned = _resolve_roles(cfg, graph, sizes)
    reg = VariableRegistry()
    inst = CnfInstance(n, cfg.s, cfg.mode, graph, sizes, reg, roles, pinned, config=cfg)
    c = len(sizes)
    nodes = graph.sorted_nodes()
    edges = graph.sorted_edges()
    level = {u: graph.level(u) for u in nodes}

    free = [i for i in range(1, cfg.s + 1) if roles[i][0] == "free"]
    for i in free:
        for j in range(1, c + 1):
            lo, hi = inst.levels(j)
            for e in edges:
                if level[e[0]] >= lo and level[e[1]] <= hi:
                    reg.add_x(i, j, e)
            for u in nodes:
                if lo <= level[u] <= hi:
                    reg.add_y(i, j, u)

    by_level = [[u for u in nodes if level[u] == k] for k in range(n + 1)]
    for i in free:
        _per_scd_clauses(inst, i, by_level, level)
    _capacity_clauses(inst, edges)
    if cfg.diamonds and cfg.mode == ALMOST_ORTHOGONAL_GOOD:
        add_diamond_clauses(inst)
    return inst


def _per_scd_clauses(inst: CnfInstance, i: int, by_level, level):
    n, g = inst.n, inst.graph
    c = len(inst.sizes)
    X, Y = inst.x_lit, inst.y_lit
    for j in range(1, c + 1):
        lo, hi = inst.levels(j)
        # link edge and node variables
        for k in range(lo, hi + 1):
            for u in by_level[k]:
                y = Y(i, j, u)
                if k < hi:
                    ups = [X(i, j, (u, v)) for v in g.up[u]]
                    for v, x in zip(g.up[u], ups):
                        inst.add_clause([neg(x), y])
                        inst.add_clause([neg(x), Y(i, j, v)])
                    inst.add_clause([neg(y)] + ups)
                if k > lo:
                    inst.add_clause([neg(y)] + [X(i, j, (v, u)) for v in g.down[u]])
        # every visited level is hit
        for k in range(lo, hi + 1):
            inst.add_clause([Y(i, j, u) for u in by_level[k]])
        # unimodality: deficient nodes only at the ends, ends of equal orbit size
        for k in range(lo, hi + 1):
            for u in by_level[k]:
                if g.is_full(u):
                    continue
                if lo < k < hi:
                    inst.add_clause([neg(Y(i, j, u))])
                elif lo < hi:
                    other = n - k
                    partners = [v for v in by_level[other] if not g.is_full(v) and g.orbit[v] == g.orbit[u]]
                    inst.add_clause([neg(Y(i, j, u))] + [Y(i, j, v) for v in partners])
    # node-disjoint chains within the SCD
    for k in range(n + 1):
        chains = [j for j in range(1, c + 1) if inst.levels(j)[0] <= k <= inst.levels(j)[1]]
        for u in by_level[k]:
            lits = [Y(i, j, u) for j in chains]
            for a in range(len(lits)):
                for b in range(a + 1, len(lits)):
                    inst.add_clause([neg(lits[a]), neg(lits[b])])
    # equal-size chains are ordered by their bottom node
    for j in range(1, c):
        if inst.sizes[j] != inst.sizes[j - 1]:
            continue
        lo = inst.levels(j)[0]
        bottoms = by_level[lo]
        for t, u in enumerate(bottoms):
            inst.add_clause([neg(Y(i, j + 1, u))] + [Y(i, j, w) for w in bottoms[:t]])


def _capacity_clauses(inst: CnfInstance, edges):
    c = len(inst.sizes)
    for e in edges:
        lits = [inst.x_lit(i, j, e) for i in range(1, inst.s + 1) for j in range(1, c + 1)]
        used = sum(1 for x in lits if x is True)
        cap = inst.graph.edges[e] - used
        if cap < 0:
            raise EncodingError(f"pinned SCDs use {inst.graph.edge_name(e)} more than its capacity allows")
        free = [x for x in lits if x is not True and x is not False]
        for clause in at_most_k(free, cap, inst.registry.new):
            inst.add_clause(clause)


def _two_step_targets(n: int, canon, x0: int, v: int, y: int) -> set[int]:
    out = set()
    for a in range(n):
        if x0 >> a & 1:
            continue
        m = x0 | 1 << a
        if canon[m] != v:
            continue
        for b in range(n):
            if not m >> b & 1 and canon[m | 1 << b] == y:
                out.add(m | 1 << b)
    return out


def diamonds(graph: ReducedNecklaceGraph) -> list[tuple[int, int, int, int]]:
    """(x, v, w, y) such that both two-step paths from the canonical x end at
    one and the same representative of the full necklace y."""
    n = graph.n
    canon = canon_table(n)
    out = []
    for x in graph.sorted_nodes():
        for v in graph.up[x]:
            for y in graph.up[v]:
                if not graph.is_full(y):
                    continue
                tv = _two_step_targets(n, canon, x, v, y)
                if len(tv) != 1:
                    continue
                for w in graph.up[x]:
                    if y in graph.up[w] and _two_step_targets(n, canon, x, w, y) == tv:
                        out.append((x, v, w, y))
    return out


def add_diamond_clauses(inst: CnfInstance) -> CnfInstance:
    """Forbid two chains of different SCDs from running through a common diamond.

    A helper variable per (SCD, two-step path) is implied by every chain of
    that SCD using the path, which keeps the clause count linear in the
    number of chains.
    """
    c = len(inst.sizes)
    X = inst.x_lit
    paths: dict = {}

    def path_lit(i, e, f):
        key = (i, e, f)
        if key in paths:
            return paths[key]
        lit, clauses = False, []
        for j in range(1, c + 1):
            a, b = X(i, j, e), X(i, j, f)
            if a is False or b is False:
                continue
            if a is True and b is True:
                lit = True
                break
            clauses.append([neg(a), neg(b)])
        if lit is not True and clauses:
            lit = inst.registry.new()
            for cl in clauses:
                inst.add_clause(cl + [lit])
        paths[key] = lit
        return lit

    count = 0
    for x, v, w, y in diamonds(inst.graph):
        for i in range(1, inst.s + 1):
            p = path_lit(i, (x, v), (v, y))
            if p is False:
                continue
            for i2 in range(1, inst.s + 1):
                if i2 == i:
                    continue
                q = path_lit(i2, (x, w), (w, y))
                if q is not False and inst.add_clause([neg(p), neg(q)]):
                    count += 1
    inst.diamond_count += count
    return inst


def chain_literals(inst: CnfInstance, i: int, j: int, chain: Sequence[int], with_nodes: bool = False) -> list:
    """Literals asserting that chain j of SCD i is the given necklace chain."""
    lits = [inst.x_lit(i, j, e) for e in zip(chain, chain[1:])]
    if with_nodes or len(chain) == 1:
        lits += [inst.y_lit(i, j, u) for u in chain]
    return lits


def blocking_clause(inst: CnfInstance, members, with_nodes: bool = False) -> list:
    """Clause forbidding the chains ``members`` = [(i, j, necklace chain)] together."""
    lits = []
    for i, j, chain in members:
        lits.extend(neg(x) for x in chain_literals(inst, i, j, chain, with_nodes))
    return lits


def complement_necklace_chain(n: int, chain: Sequence[int]) -> tuple[int, ...]:
    canon = canon_table(n)
    full = full_mask(n)
    return tuple(canon[u ^ full] for u in reversed(chain))
