"""Turn a model of the search CNF back into SCDs of N_n."""

from __future__ import annotations

from ..constructions import NecklaceScd
from ..core import Chain
from ..errors import EncodingError
from ..unroll import default_representatives
from .solvers import Model


def _check_model(inst, model: Model) -> None:
    for clause in inst.clauses:
        if not any(model.value(lit) for lit in clause):
            raise EncodingError(f"model violates clause {clause}")


def _lit_true(model: Model, lit) -> bool:
    if lit is True or lit is False:
        return lit
    return model.value(lit)


def decode_chains(inst, model: Model, i: int) -> list[tuple[int, ...]]:
    """Necklace chains (canonical masks, bottom first) of SCD i, in index order."""
    g = inst.graph
    by_level: dict[int, list[int]] = {}
    for u in g.sorted_nodes():
        by_level.setdefault(g.level(u), []).append(u)
    chains = []
    for j in range(1, len(inst.sizes) + 1):
        lo, hi = inst.levels(j)
        nodes = []
        for k in range(lo, hi + 1):
            hit = [u for u in by_level[k] if _lit_true(model, inst.y_lit(i, j, u))]
            if len(hit) != 1:
                raise EncodingError(f"chain {j} of SCD {i} has {len(hit)} nodes on level {k}")
            nodes.append(hit[0])
        for e in zip(nodes, nodes[1:]):
            if not _lit_true(model, inst.x_lit(i, j, e)):
                raise EncodingError(f"chain {j} of SCD {i} misses the edge {g.edge_name(e)}")
        chains.append(tuple(nodes))
    return chains


def decode_model(inst, model: Model, with_index: bool = False):
    """List of s NecklaceScds; with ``with_index`` also the chain -> j maps.

    Pinned SCDs come back as the very objects that were pinned (or their
    complements for coupled partners).
    """
    _check_model(inst, model)
    n = inst.n
    cfg = inst.config
    pinned_objs = dict(cfg.fixed) if cfg else {}
    for a, b in (cfg.coupled if cfg else []):
        if a in pinned_objs and b not in pinned_objs:
            pinned_objs[b] = pinned_objs[a].complement()
        elif b in pinned_objs and a not in pinned_objs:
            pinned_objs[a] = pinned_objs[b].complement()

    decoded: dict[int, NecklaceScd] = {}
    index: dict[int, list[int]] = {}
    for i in range(1, inst.s + 1):
        role = inst.roles[i]
        if role[0] == "pinned":
            scd = pinned_objs[i]
            slots = {c: j for j, c in enumerate(inst.pinned_chains[i], 1)}
            index[i] = [slots[c] for c in scd.necklace_chains()]
            decoded[i] = scd
        elif role[0] == "free":
            chains = decode_chains(inst, model, i)
            decoded[i] = NecklaceScd(n, tuple(Chain(n, default_representatives(c, n).reps) for c in chains))
            index[i] = list(range(1, len(chains) + 1))
    for i in range(1, inst.s + 1):
        role = inst.roles[i]
        if role[0] == "comp":
            decoded[i] = decoded[role[1]].complement()
            index[i] = list(range(1, len(inst.sizes) + 1))
    scds = [decoded[i] for i in range(1, inst.s + 1)]
    _check_family(inst, scds)
    if with_index:
        return scds, [index[i] for i in range(1, inst.s + 1)]
    return scds


def _check_family(inst, scds) -> None:
    from ..unroll import check_capacities
    from ..verify import check_unimodal

    g = inst.graph
    for k, scd in enumerate(scds, 1):
        covered = sorted(u for c in scd.necklace_chains() for u in c)
        if covered != sorted(g.nodes):
            raise EncodingError(f"decoded SCD {k} does not partition N_{inst.n}")
        if not check_unimodal(scd):
            raise EncodingError(f"decoded SCD {k} is not unimodal")
    check_capacities(scds)
