from .cardinality import at_most_k, at_most_one
from .decode import decode_model
from .dimacs import read_dimacs, write_dimacs, write_sidecar
from .encode import (
    ALMOST_ORTHOGONAL_GOOD,
    EDGE_DISJOINT,
    CnfInstance,
    SearchConfig,
    VariableRegistry,
    add_diamond_clauses,
    diamonds,
    encode_phi,
)
from .search import SearchResult, search_loop, verify_family
from .solvers import UNSAT, IncrementalSolver, Model, SubprocessSolver, Unsat, solve
