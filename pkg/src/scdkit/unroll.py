"""Unrolling chains of N_n into families of chains of Q_n.

A unimodal necklace chain unrolls into ``n`` rotated copies of its middle part
(the full necklaces); when its ends are deficient of orbit size ``d``, exactly
``d`` of those copies are extended by one element at each end.  The freedom in
an unrolling is the walk through the middle (one added element per step) and,
for deficient ends, which copies get extended.  ``try_unroll_family`` searches
over these choices so that several SCDs unroll simultaneously to edge-disjoint
or almost-orthogonal SCDs of Q_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .constructions import NecklaceScd
from .core import Chain, ChainDecomposition, Subset, full_mask, popcount, rot
from .errors import CapacityError, NotUnimodalError, PreconditionError
from .necklace import build_poset, canon_table, orbit_table

EDGE_DISJOINT = "edge_disjoint"
ALMOST_ORTHOGONAL = "almost_orthogonal"
MODES = (EDGE_DISJOINT, ALMOST_ORTHOGONAL)


@dataclass(frozen=True)
class RepresentativeChain:
    n: int
    reps: tuple[Subset, ...]
    deficiency: int

    @classmethod
    def from_chain(cls, chain: Chain) -> "RepresentativeChain":
        orbit = orbit_table(chain.n)
        return cls(chain.n, chain.elements, orbit[chain.elements[0].mask])

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(x.mask for x in self.reps)


@dataclass(frozen=True)
class OrbitLabel:
    """Rotation class of a Q_n edge lying over a necklace edge."""

    edge: tuple[int, int]
    label: tuple[int, int]


def edge_orbit_label(n: int, lower: int, upper: int) -> OrbitLabel:
    canon = canon_table(n)
    label = min((rot(lower, k, n), rot(upper, k, n)) for k in range(n))
    return OrbitLabel((canon[lower], canon[upper]), label)


def orbit_labels(n: int, edge: tuple[int, int]) -> list[OrbitLabel]:
    """All orbit labels of the Q_n edges lying over the necklace edge ``edge``."""
    lower, upper = edge
    canon = canon_table(n)
    labels = set()
    for k in range(n):
        x = rot(lower, k, n)
        for i in range(n):
            bit = 1 << i
            if not x & bit and canon[x | bit] == upper:
                labels.add(edge_orbit_label(n, x, x | bit))
    return sorted(labels, key=lambda o: o.label)


def _check_unimodal_masks(n: int, masks: Sequence[int]) -> int:
    orbit = orbit_table(n)
    for a, b in zip(masks, masks[1:]):
        if a & ~b or popcount(b) != popcount(a) + 1:
            raise NotUnimodalError("representatives do not form a saturated chain in Q_n")
    d = orbit[masks[0]]
    if orbit[masks[-1]] != d or any(orbit[m] != n for m in masks[1:-1]):
        raise NotUnimodalError(
            "chain is not unimodal: ends must have equal orbit size and the interior must be full"
        )
    return d


def unroll_chain(rc: RepresentativeChain) -> list[Chain]:
    n = rc.n
    masks = rc.masks
    d = _check_unimodal_masks(n, masks)
    if d == n:
        return [Chain.from_masks(n, [rot(m, i, n) for m in masks]) for i in range(n)]
    if len(masks) == 1:
        return [Chain.from_masks(n, [rot(masks[0], i, n)]) for i in range(d)]
    out = [Chain.from_masks(n, [rot(m, i, n) for m in masks]) for i in range(d)]
    inner = masks[1:-1]
    if inner:
        out += [Chain.from_masks(n, [rot(m, i, n) for m in inner]) for i in range(d, n)]
    return out


def unroll_scd(s: NecklaceScd, reps_choice: Sequence[RepresentativeChain] | None = None) -> ChainDecomposition:
    if reps_choice is None:
        reps_choice = [RepresentativeChain.from_chain(c) for c in s.chains]
    chains = []
    for rc in reps_choice:
        chains.extend(unroll_chain(rc))
    return ChainDecomposition(s.n, tuple(chains))


def default_representatives(chain: Sequence[int], n: int, start: int | None = None) -> RepresentativeChain:
    """Walk up a necklace chain (canonical masks) adding the smallest possible element."""
    canon = canon_table(n)
    x = chain[0] if start is None else start
    if canon[x] != chain[0]:
        raise PreconditionError("start is not a representative of the bottom necklace")
    reps = [x]
    for target in chain[1:]:
        for i in range(n):
            bit = 1 << i
            if not x & bit and canon[x | bit] == target:
                x |= bit
                break
        else:
            raise PreconditionError("consecutive necklaces do not form a cover relation")
        reps.append(x)
    rc = RepresentativeChain(n, tuple(Subset(n, m) for m in reps), orbit_table(n)[chain[0]])
    _check_unimodal_masks(n, rc.masks)
    return rc


@dataclass(frozen=True)
class ConflictPair:
    """Two chains (SCD index, chain index; 0-based) that cannot be unrolled together."""

    scd_a: int
    chain_a: int
    scd_b: int
    chain_b: int

    @property
    def members(self) -> tuple[tuple[int, int], ...]:
        return ((self.scd_a, self.chain_a), (self.scd_b, self.chain_b))


@dataclass(frozen=True)
class ConflictSet:
    """A set of chains with no joint unrolling although every pair has one."""

    members: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class UnrollInconclusive:
    members: tuple[tuple[int, int], ...]
    nodes: int


class _BudgetExceeded(Exception):
    pass


@dataclass
class _ChainSpec:
    cid: tuple[int, int]
    nodes: tuple[int, ...]
    reps: tuple[int, ...]
    d: int
    middle: tuple[int, ...] = ()
    start: int = 0
    given_ext: tuple = ()
    deficient: bool = False
    longest: bool = False


class _Unroller:
    def __init__(self, n: int, mode: str, specs: list[_ChainSpec], max_nodes: int):
        self.n = n
        self.mode = mode
        self.specs = specs
        self.max_nodes = max_nodes
        self.nodes_used = 0
        self.canon = canon_table(n)
        self.full = full_mask(n)
        self.used_edges: dict[tuple[int, int], int] = {}
        self.occ: dict[int, list] = {}
        self.count: dict[tuple, int] = {}
        self.walk: dict[tuple[int, int], list[int]] = {}
        self.ext: dict[tuple[int, int], list] = {}
        self.ext_ctx: dict[tuple[int, int], tuple] = {}
        self.long_copies: list[tuple] = []

    # -- state mutation with undo logs -------------------------------------
    def _add_edge(self, e, scd, log) -> bool:
        owner = self.used_edges.get(e)
        if owner is not None:
            return False
        self.used_edges[e] = scd
        log.append(("e", e))
        return True

    def _add_elem(self, u, copy, log) -> bool:
        if u == 0 or u == self.full:
            return True
        ok = True
        lst = self.occ.setdefault(u, [])
        for other in lst:
            key = (other, copy) if other < copy else (copy, other)
            c = self.count.get(key, 0) + 1
            self.count[key] = c
            log.append(("c", key))
            if c > 1:
                ok = False
        lst.append(copy)
        log.append(("o", u))
        return ok

    def _undo(self, log):
        for kind, key in reversed(log):
            if kind == "e":
                del self.used_edges[key]
            elif kind == "c":
                c = self.count[key] - 1
                if c:
                    self.count[key] = c
                else:
                    del self.count[key]
            elif kind == "o":
                self.occ[key].pop()
            elif kind == "w":
                self.walk[key].pop()
            elif kind == "x":
                self.ext[key].pop()
            elif kind == "l":
                self.long_copies.pop()
        log.clear()

    def _tick(self):
        self.nodes_used += 1
        if self.nodes_used > self.max_nodes:
            raise _BudgetExceeded

    # -- steps ---------------------------------------------------------------
    def _steps(self, order):
        steps = []
        for s in order:
            steps.append(("init", s))
            for t in range(len(s.middle) - 1):
                steps.append(("walk", s, t))
            if s.deficient:
                # one step per element of the bottom necklace
                for k in range(s.d):
                    steps.append(("ext", s, k))
        return steps

    def _options(self, step):
        kind, s = step[0], step[1]
        n = self.n
        if kind == "init":
            return [None]
        if kind == "walk":
            t = step[2]
            x = self.walk[s.cid][-1]
            target = s.middle[t + 1]
            opts = [1 << i for i in range(n) if not x >> i & 1 and self.canon[x | 1 << i] == target]
            off = 1 if s.deficient else 0
            given = s.reps[off + t + 1] ^ s.reps[off + t]
            if given in opts:
                opts.remove(given)
                opts.insert(0, given)
            return opts
        return self._ext_options(s, step[2])

    def _ext_context(self, s: _ChainSpec):
        n, canon = self.n, self.canon
        walk = self.walk[s.cid]
        lo, hi = walk[0], walk[-1]
        bottom_necklace, top_necklace = s.nodes[0], s.nodes[-1]
        bottoms_by_copy = []
        tops_by_copy = []
        for c in range(n):
            x1 = rot(lo, c, n)
            xk = rot(hi, c, n)
            bottoms_by_copy.append({x1 ^ 1 << i for i in range(n) if x1 >> i & 1 and canon[x1 ^ 1 << i] == bottom_necklace})
            tops_by_copy.append([xk | 1 << i for i in range(n) if not xk >> i & 1 and canon[xk | 1 << i] == top_necklace])
        bottom_reps = sorted(set().union(*bottoms_by_copy))
        given = None
        if walk == list(s.reps[1:-1]):
            given = {b: (c, b, t) for c, b, t in s.given_ext}
        return bottom_reps, bottoms_by_copy, tops_by_copy, given

    def _ext_options(self, s: _ChainSpec, k: int):
        """(copy, bottom, top) choices for the k-th bottom element, given the earlier ones."""
        if k == 0:
            self.ext_ctx[s.cid] = self._ext_context(s)
            self.ext[s.cid] = []
        bottom_reps, bottoms_by_copy, tops_by_copy, given = self.ext_ctx[s.cid]
        if k >= len(bottom_reps):
            return []
        done = self.ext[s.cid]
        used_copies = {c for c, _, _ in done}
        used_tops = {t for _, _, t in done}
        beta = bottom_reps[k]
        out = [
            (c, beta, t)
            for c in range(self.n)
            if c not in used_copies and beta in bottoms_by_copy[c]
            for t in tops_by_copy[c]
            if t not in used_tops
        ]
        if given is not None and given.get(beta) in out:
            out.remove(given[beta])
            out.insert(0, given[beta])
        return out

    def _apply(self, step, opt, log) -> bool:
        self._tick()
        kind, s = step[0], step[1]
        n = self.n
        scd = s.cid[0]
        if kind == "init":
            self.walk[s.cid] = [s.start]
            log.append(("w", s.cid))
            if self.mode == ALMOST_ORTHOGONAL:
                for c in range(n):
                    if not self._add_elem(rot(s.start, c, n), (s.cid, c), log):
                        return False
            return True
        if kind == "walk":
            walk = self.walk[s.cid]
            x = walk[-1]
            y = x | opt
            walk.append(y)
            log.append(("w", s.cid))
            for c in range(n):
                if self.mode == EDGE_DISJOINT:
                    if not self._add_edge((rot(x, c, n), rot(y, c, n)), scd, log):
                        return False
                elif not self._add_elem(rot(y, c, n), (s.cid, c), log):
                    return False
            return True
        # extension of one copy at both ends
        c, b, t = opt
        k = step[2]
        self.ext[s.cid].append(opt)
        log.append(("x", s.cid))
        walk = self.walk[s.cid]
        copy = (s.cid, c)
        if self.mode == EDGE_DISJOINT:
            if not self._add_edge((b, rot(walk[0], c, n)), scd, log):
                return False
            if not self._add_edge((rot(walk[-1], c, n), t), scd, log):
                return False
        elif not self._add_elem(b, copy, log) or not self._add_elem(t, copy, log):
            return False
        if self.mode == ALMOST_ORTHOGONAL and s.longest and k == s.d - 1:
            # the copy through the empty set is the one extended first
            copy = (s.cid, self.ext[s.cid][0][0])
            for other in self.long_copies:
                if other[0][0] == scd:
                    continue
                key = (other, copy) if other < copy else (copy, other)
                if self.count.get(key, 0):
                    return False
            self.long_copies.append(copy)
            log.append(("l", None))
        return True

    def solutions(self, order) -> Iterator[dict]:
        steps = self._steps(order)
        frames = []
        k = 0
        while True:
            if k == len(steps):
                yield {
                    s.cid: (tuple(self.walk[s.cid]), tuple(self.ext[s.cid]) if s.deficient else None)
                    for s in order
                }
                k -= 1
                if k < 0:
                    return
            if len(frames) <= k:
                frames.append([self._options(steps[k]), 0, []])
            frame = frames[k]
            self._undo(frame[2])
            advanced = False
            while frame[1] < len(frame[0]):
                opt = frame[0][frame[1]]
                frame[1] += 1
                if self._apply(steps[k], opt, frame[2]):
                    advanced = True
                    break
                self._undo(frame[2])
            if advanced:
                k += 1
                continue
            frames.pop()
            k -= 1
            if k < 0:
                return


def _chain_spec(n: int, cid, chain: Chain) -> _ChainSpec:
    masks = chain.masks
    d = _check_unimodal_masks(n, masks)
    canon = canon_table(n)
    nodes = tuple(canon[m] for m in masks)
    spec = _ChainSpec(cid, nodes, masks, d)
    if len(masks) == 1:
        return spec
    if d == n:
        spec.middle = nodes
        spec.start = masks[0]
        return spec
    if len(masks) == 2:
        raise PreconditionError("a chain of two deficient necklaces cannot occur in a symmetric SCD")
    spec.deficient = True
    spec.middle = nodes[1:-1]
    spec.start = masks[1]
    spec.given_ext = tuple((c, rot(masks[0], c, n), rot(masks[-1], c, n)) for c in range(d))
    spec.longest = masks[0] == 0 and len(masks) == n + 1
    return spec


def _interacts(a: _ChainSpec, b: _ChainSpec, mode: str) -> bool:
    if a.cid[0] == b.cid[0]:
        return False
    if mode == EDGE_DISJOINT:
        ea = set(zip(a.nodes, a.nodes[1:]))
        return any(e in ea for e in zip(b.nodes, b.nodes[1:]))
    shared = set(a.nodes) & set(b.nodes)
    if a.longest and b.longest:
        return len(shared) > 2
    return len(shared) >= 2


def _components(specs, mode):
    parent = list(range(len(specs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            if _interacts(specs[i], specs[j], mode):
                parent[find(i)] = find(j)
    groups: dict[int, list] = {}
    for i, s in enumerate(specs):
        groups.setdefault(find(i), []).append(s)
    return [_order(g, mode) for g in groups.values()]


def _order(specs, mode):
    """Deficient chains first, then each next chain as entangled as possible with the placed ones."""
    rest = sorted(specs, key=lambda s: (not s.deficient, s.cid))
    placed = []
    while rest:
        best = max(
            range(len(rest)),
            key=lambda k: (rest[k].deficient, sum(_interacts(rest[k], p, mode) for p in placed), -k),
        )
        placed.append(rest.pop(best))
    return placed


def check_capacities(scds: Sequence[NecklaceScd]) -> None:
    n = scds[0].n
    poset = build_poset(n)
    canon = canon_table(n)
    usage: dict[tuple[int, int], int] = {}
    for scd in scds:
        for chain in scd.chains:
            nodes = [canon[m] for m in chain.masks]
            for e in zip(nodes, nodes[1:]):
                usage[e] = usage.get(e, 0) + 1
    for e, k in usage.items():
        c = poset.capacity(*e)
        if k > c:
            raise CapacityError(f"necklace edge {poset.edge_name(e)} used by {k} chains, capacity {c}")


def _first_solution(n, mode, comp, max_nodes):
    solver = _Unroller(n, mode, comp, max_nodes)
    return next(solver.solutions(comp), None), solver.nodes_used


def _materialize(n: int, spec: _ChainSpec, sol) -> list[Chain]:
    if len(spec.nodes) == 1:
        d = spec.d
        return [Chain.from_masks(n, [rot(spec.reps[0], c, n)]) for c in range(d)]
    walk, ext = sol
    copies = {c: [rot(m, c, n) for m in walk] for c in range(n)}
    if ext:
        for c, b, t in ext:
            copies[c] = [b] + copies[c] + [t]
    order = sorted(copies, key=lambda c: (-len(copies[c]), c))
    return [Chain.from_masks(n, copies[c]) for c in order]


def _specs_for(scds):
    n = scds[0].n
    specs = []
    for i, scd in enumerate(scds):
        if scd.n != n:
            raise PreconditionError("all SCDs must have the same dimension")
        for j, chain in enumerate(scd.chains):
            specs.append(_chain_spec(n, (i, j), chain))
    return n, specs


def try_unroll_family(
    scds: Sequence[NecklaceScd],
    mode: str = EDGE_DISJOINT,
    max_nodes: int = 2_000_000,
    minimize: bool = True,
):
    """Unroll all SCDs simultaneously so that the results satisfy ``mode``.

    Returns a list of ChainDecompositions on success, otherwise a
    ConflictPair (first infeasible pair in (i, i', j, j') order), a
    ConflictSet, or UnrollInconclusive when the search budget runs out.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if not scds:
        return []
    n, specs = _specs_for(scds)
    check_capacities(scds)
    active = [s for s in specs if len(s.nodes) > 1]
    solution = {}
    for comp in _components(active, mode):
        try:
            sol, _ = _first_solution(n, mode, comp, max_nodes)
        except _BudgetExceeded:
            return UnrollInconclusive(tuple(s.cid for s in comp), max_nodes)
        if sol is None:
            return _explain_failure(n, mode, comp, max_nodes, minimize)
        solution.update(sol)

    return _assemble(n, scds, specs, solution)


def _assemble(n, scds, specs, solution):
    by_id = {s.cid: s for s in specs}
    out = []
    for i, scd in enumerate(scds):
        chains = []
        for j in range(len(scd.chains)):
            chains.extend(_materialize(n, by_id[(i, j)], solution.get((i, j))))
        out.append(ChainDecomposition(n, tuple(chains)))
    return out


def _pair_feasible(n, mode, a, b, max_nodes) -> bool | None:
    comp = _order([a, b], mode)
    try:
        sol, _ = _first_solution(n, mode, comp, max_nodes)
    except _BudgetExceeded:
        return None
    return sol is not None


def _explain_failure(n, mode, comp, max_nodes, minimize):
    pairs = []
    for a in comp:
        for b in comp:
            if a.cid[0] < b.cid[0] and _interacts(a, b, mode):
                pairs.append((a.cid[0], b.cid[0], a.cid[1], b.cid[1], a, b))
    pairs.sort(key=lambda p: p[:4])
    for i, i2, j, j2, a, b in pairs:
        if _pair_feasible(n, mode, a, b, max_nodes) is False:
            return ConflictPair(i, j, i2, j2)
    members = list(comp)
    if minimize:
        # drop chains (last placed first) while the rest stays provably infeasible;
        # a trial that runs out of budget keeps its chain
        budget = max(1, max_nodes // 20)
        k = len(members) - 1
        while k >= 0:
            trial = members[:k] + members[k + 1:]
            try:
                sol, _ = _first_solution(n, mode, _order(trial, mode), budget)
            except _BudgetExceeded:
                sol = True
            if sol is None:
                members = trial
            k -= 1
    return ConflictSet(tuple(sorted(s.cid for s in members)))


def iter_unrollings(scds: Sequence[NecklaceScd], mode: str = ALMOST_ORTHOGONAL, limit: int = 100, max_nodes: int = 2_000_000):
    """Yield up to ``limit`` distinct joint unrollings (lists of ChainDecompositions)."""
    n, specs = _specs_for(scds)
    check_capacities(scds)
    active = _order([s for s in specs if len(s.nodes) > 1], mode)
    solver = _Unroller(n, mode, active, max_nodes)
    produced = 0
    try:
        for sol in solver.solutions(active):
            yield _assemble(n, scds, specs, sol)
            produced += 1
            if produced >= limit:
                return
    except _BudgetExceeded:
        return
