import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from scdkit.constructions import gks_scd, jordan_scd
from scdkit.core import Chain, ChainDecomposition, complement_decomposition
from scdkit.errors import PreconditionError
from scdkit.greene_kleitman import standard_scd
from scdkit.unroll import ALMOST_ORTHOGONAL, try_unroll_family, unroll_scd
from scdkit.verify import (
    WITNESS_CAP,
    VerificationReport,
    _describe_component,
    check_almost_orthogonal,
    check_edge_disjoint,
    check_good,
    check_necklace_scd,
    check_orthogonal,
    check_scd,
    check_unimodal,
    to_orthogonal,
)
from scdkit.constructions import NecklaceScd

from families import Q4_EDGES, Q5_EDGES, decomposition_from_edges, elements_chain, v7, w7


def test_q4_three_pairwise_orthogonal():
    ds = [decomposition_from_edges(s) for s in Q4_EDGES]
    for D in ds:
        # chain partitions into saturated chains, not symmetric ones
        assert len(D) == 6
        assert all(c.is_saturated() for c in D.chains)
        assert sorted(m for c in D.chains for m in c.masks) == list(range(16))
    for a in range(3):
        for b in range(a + 1, 3):
            assert check_orthogonal(ds[a], ds[b]).passed


def test_q5_two_edge_disjoint():
    ds = [decomposition_from_edges(s) for s in Q5_EDGES]
    assert all(check_scd(D) for D in ds)
    assert check_edge_disjoint(ds).passed
    assert not check_edge_disjoint([ds[0], ds[0]]).passed


def test_missing_top_is_reported():
    D = standard_scd(4)
    chains = list(D.chains)
    i = D.longest_chain_index()
    chains[i] = Chain(4, chains[i].elements[:-1])
    bad = ChainDecomposition(4, tuple(chains))
    rep = check_scd(bad)
    assert not rep
    assert ("uncovered", "1111") in rep.witnesses
    assert any(w[0] == "not_symmetric" for w in rep.witnesses)
    assert rep.summary().startswith("FAIL scd")


@pytest.mark.parametrize("n", range(1, 11))
def test_standard_scd_passes(n):
    assert check_scd(standard_scd(n)).passed


@pytest.mark.parametrize("n", range(2, 11))
def test_standard_and_complement_almost_orthogonal(n):
    D = standard_scd(n)
    C = complement_decomposition(D)
    assert check_almost_orthogonal(D, C).passed
    assert check_edge_disjoint([D, C]).passed


@pytest.mark.parametrize("n", [2, 3, 5])
def test_self_pair_is_not_orthogonal(n):
    D = standard_scd(n)
    assert not check_orthogonal(D, D).passed
    assert not check_almost_orthogonal(D, D).passed


def test_almost_orthogonal_requires_scds():
    D = standard_scd(4)
    chains = list(D.chains)[1:]
    broken = ChainDecomposition(4, tuple(chains))
    assert not check_almost_orthogonal(D, broken).passed
    with pytest.raises(PreconditionError):
        check_almost_orthogonal(D, standard_scd(5))


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 9), st.integers(0, 8), st.booleans())
def test_almost_orthogonal_implies_edge_disjoint(n, k, use_gks):
    # rotating one member of an almost-orthogonal pair gives new pairs to test
    D = standard_scd(n)
    C = complement_decomposition(D)
    C = ChainDecomposition(n, tuple(c.rotate(k % n) for c in C.chains))
    if check_almost_orthogonal(D, C):
        assert check_edge_disjoint([D, C])


def test_census_of_synthetic_components():
    g = nx.MultiGraph()
    nx.add_cycle(g, range(22))
    for t in range(22):
        g.add_edge(t, 100 + t)
    assert _describe_component(g) == ("cycle_with_trees", 22, 44)
    tree = nx.MultiGraph([(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)])
    assert _describe_component(tree) == ("tree", 5, 3)
    assert _describe_component(nx.MultiGraph([(0, 1), (1, 2)])) == ("path", 2)
    assert _describe_component(nx.MultiGraph([(0, 1), (0, 1)])) == ("cycle", 2)


def q7_family():
    return try_unroll_family([v7(), w7(), v7().complement(), w7().complement()], ALMOST_ORTHOGONAL)


def test_q7_family_census():
    fam = q7_family()
    assert isinstance(fam, list)
    rep = check_good(fam)
    assert rep.passed
    assert rep.census == {"edges": 56, "components": {("cycle", 14): 1, ("path", 3): 14}}


def test_single_scd_is_good():
    assert check_good([standard_scd(5)]).passed
    assert check_good([unroll_scd(gks_scd(7))]).passed


def test_goodness_rejects_even_n():
    with pytest.raises(PreconditionError):
        check_good([standard_scd(4)])


@given(st.integers(0, 100))
@settings(max_examples=15, deadline=None)
def test_goodness_is_invariant_under_rotation(k):
    fam = [unroll_scd(gks_scd(7)), unroll_scd(gks_scd(7).complement())]
    rotated = [ChainDecomposition(7, tuple(c.rotate(k % 7) for c in D.chains)) for D in fam]
    a, b = check_good(fam), check_good(rotated)
    assert a.passed == b.passed and a.census == b.census


def test_excess_edges_fail_goodness():
    # two chains of size 2 forming a double edge plus a triangle closes two cycles
    n = 5
    pairs = [(0b00000, 0b10000), (0b00000, 0b01000), (0b10000, 0b11000), (0b01000, 0b11000)]
    pairs += [(0b00000, 0b10000)]
    fam = [ChainDecomposition(n, (Chain.from_masks(n, p),)) for p in pairs]
    rep = check_good(fam)
    assert not rep.passed and rep.witnesses[0][0] == "excess_edges"


def test_to_orthogonal_standard_pair():
    D = standard_scd(5)
    fam = to_orthogonal([D, complement_decomposition(D)])
    assert check_orthogonal(*fam).passed
    assert fam[0] == D
    masks = sorted(m for c in fam[1].chains for m in c.masks)
    assert masks == list(range(32))


def test_to_orthogonal_q7_family():
    fam = q7_family()
    out = to_orthogonal(fam)
    assert all(len(D) == 35 for D in out)
    for a in range(4):
        for b in range(a + 1, 4):
            assert check_orthogonal(out[a], out[b]).passed


def test_to_orthogonal_edge_cases():
    D = standard_scd(6)
    assert to_orthogonal([D]) == [D]
    with pytest.raises(PreconditionError):
        to_orthogonal([standard_scd(4), complement_decomposition(standard_scd(4))])


def test_unimodal_checks():
    assert check_unimodal(gks_scd(7)).passed
    assert check_unimodal(jordan_scd(10)).passed
    bad = NecklaceScd(6, (elements_chain(6, [1], [1, 4], [1, 2, 4]),))
    rep = check_unimodal(bad)
    assert not rep.passed and rep.witnesses[0][2] == (6, 3, 6)


@pytest.mark.parametrize("n", range(1, 13))
def test_necklace_scd_checks(n):
    assert check_necklace_scd(jordan_scd(n)).passed


def test_necklace_scd_detects_missing_chain():
    s = jordan_scd(6)
    rep = check_necklace_scd(NecklaceScd(6, s.chains[:-1]))
    assert not rep.passed
    assert any(w[0] == "uncovered_necklace" for w in rep.witnesses)


def test_witness_cap():
    n = 8
    D = ChainDecomposition(n, tuple(Chain.from_masks(n, [m]) for m in range(1 << n)))
    rep = check_scd(D)
    assert len(rep.witnesses) == WITNESS_CAP and rep.truncated
    full = check_scd(D, all_witnesses=True)
    assert len(full.witnesses) > WITNESS_CAP and not full.truncated
    assert isinstance(rep, VerificationReport) and not rep


@pytest.mark.parametrize("n", range(2, 8))
def test_planted_shared_middle_edge_is_caught(n):
    D = standard_scd(n)
    C = complement_decomposition(D)
    k = (n - 1) // 2
    middle = [e for e in D.edges() if bin(e[0]).count("1") == k]
    assert middle
    for e in middle:
        planted = ChainDecomposition(n, (Chain.from_masks(n, e),))
        rep = check_edge_disjoint([D, C, planted])
        assert not rep.passed
        assert rep.witnesses[0][1:] == (0, 2)


@pytest.mark.parametrize("n", [8, 9])
def test_unimodal_jordan(n):
    assert check_unimodal(jordan_scd(n)).passed
