"""Solve, unroll, block, repeat."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import combinations

from ..constructions import NecklaceScd
from ..core import ChainDecomposition
from ..errors import EncodingError
from ..unroll import (
    ALMOST_ORTHOGONAL,
    EDGE_DISJOINT as UNROLL_EDGE,
    ConflictPair,
    ConflictSet,
    UnrollInconclusive,
    iter_unrollings,
    try_unroll_family,
)
from ..verify import check_almost_orthogonal, check_edge_disjoint, check_good, check_scd
from .decode import decode_model
from .encode import ALMOST_ORTHOGONAL_GOOD, CnfInstance, SearchConfig, blocking_clause, encode_phi
from .solvers import IncrementalSolver, SubprocessSolver, Unsat

log = logging.getLogger(__name__)


@dataclass
class BlockRecord:
    """One added clause and the chains it forbids, as (i, j, necklace chain), 1-based."""

    kind: str
    members: list[tuple[int, int, tuple[int, ...]]]
    clause: list[int]
    sound: bool = True


@dataclass
class SearchResult:
    status: str  # "sat", "unsat" or "inconclusive"
    family: list[ChainDecomposition] | None = None
    necklace_scds: list[NecklaceScd] | None = None
    iterations: int = 0
    blocked: list[BlockRecord] = field(default_factory=list)
    num_vars: int = 0
    num_clauses: int = 0
    elapsed: float = 0.0
    reason: str = ""
    instance: CnfInstance | None = None


def _members(scds, index, cids):
    out = []
    for i, k in cids:
        chain = scds[i].necklace_chains()[k]
        out.append((i + 1, index[i][k], chain))
    return out


def verify_family(family, mode: str) -> bool:
    if not all(check_scd(D) for D in family):
        return False
    if mode == ALMOST_ORTHOGONAL_GOOD:
        return all(check_almost_orthogonal(a, b) for a, b in combinations(family, 2))
    return bool(check_edge_disjoint(family))


def _good_unrolling(scds, family, cfg):
    if cfg.n % 2 == 0 or check_good(family):
        return family
    for alt in iter_unrollings(scds, ALMOST_ORTHOGONAL, limit=cfg.good_attempts, max_nodes=cfg.unroll_budget):
        if check_good(alt):
            return alt
    return None


def search_loop(cfg: SearchConfig, inst: CnfInstance | None = None) -> SearchResult:
    start = time.monotonic()
    inst = inst or encode_phi(cfg)
    solver = IncrementalSolver() if cfg.incremental else SubprocessSolver(cfg.solver)
    unroll_mode = ALMOST_ORTHOGONAL if cfg.mode == ALMOST_ORTHOGONAL_GOOD else UNROLL_EDGE
    result = SearchResult("inconclusive", instance=inst)
    heuristic = False

    def finish(status, reason="", **kw):
        result.status = status
        result.reason = reason
        result.num_vars, result.num_clauses = inst.num_vars, inst.num_clauses
        result.elapsed = time.monotonic() - start
        for k, v in kw.items():
            setattr(result, k, v)
        if isinstance(solver, IncrementalSolver):
            solver.close()
        return result

    for it in range(1, cfg.max_iter + 1):
        result.iterations = it
        answer = solver.solve_clauses(inst.num_vars, inst.clauses)
        if isinstance(answer, Unsat):
            if heuristic:
                return finish("inconclusive", "UNSAT only after heuristic blocking clauses")
            return finish("unsat")
        scds, index = decode_model(inst, answer, with_index=True)
        outcome = try_unroll_family(scds, unroll_mode, max_nodes=cfg.unroll_budget)

        if isinstance(outcome, list):
            family = outcome
            if cfg.mode == ALMOST_ORTHOGONAL_GOOD:
                family = _good_unrolling(scds, outcome, cfg)
            if family is not None:
                if not verify_family(family, cfg.mode):
                    raise AssertionError("unrolled family failed verification")
                return finish("sat", family=family, necklace_scds=scds)
            kind, sound = "goodness", False
            cids = [(i, k) for i, scd in enumerate(scds) for k in range(len(scd.chains))]
        elif isinstance(outcome, ConflictPair):
            kind, sound, cids = "pair", True, list(outcome.members)
        elif isinstance(outcome, ConflictSet):
            kind, sound, cids = "set", True, list(outcome.members)
        else:
            assert isinstance(outcome, UnrollInconclusive)
            kind, sound, cids = "budget", False, list(outcome.members)

        members = _members(scds, index, cids)
        try:
            clause = blocking_clause(inst, members, with_nodes=cfg.block_nodes)
            if not inst.add_clause(clause):
                raise AssertionError("blocking clause is satisfied by constants")
        except EncodingError:
            # the forbidden chains are all constants
            if sound and not heuristic:
                return finish("unsat", "conflict among pinned SCDs")
            return finish("inconclusive", "conflict among pinned SCDs after heuristic blocking")
        heuristic |= not sound
        result.blocked.append(BlockRecord(kind, members, inst.clauses[-1], sound))
        log.info("iteration %d: blocked %s %s", it, kind, [(i, j) for i, j, _ in members])
    return finish("inconclusive", f"iteration cap {cfg.max_iter} reached")
