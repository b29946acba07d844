"""Symmetric chain decompositions of the n-cube and its necklace quotient."""

from .core import (
    Chain,
    ChainDecomposition,
    CountTable,
    Subset,
    chain_size_profile,
    complement,
    complement_decomposition,
    count_table,
    rotate,
)
from .greene_kleitman import (
    BlockCode,
    Matching,
    block_code,
    chain_of,
    match,
    standard_scd,
    tau,
    tau_inverse,
)
from .necklace import (
    Necklace,
    NecklacePoset,
    build_poset,
    necklace_chain_profile,
    necklace_level_sizes,
    necklace_of,
    reduce,
)
from .constructions import NecklaceScd, gks_scd, jordan_scd
from .unroll import (
    ConflictPair,
    ConflictSet,
    RepresentativeChain,
    default_representatives,
    try_unroll_family,
    unroll_chain,
    unroll_scd,
)
from .verify import (
    VerificationReport,
    check_almost_orthogonal,
    check_edge_disjoint,
    check_good,
    check_orthogonal,
    check_scd,
    check_unimodal,
    to_orthogonal,
)

__version__ = "0.1.0"
