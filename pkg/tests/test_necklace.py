from math import comb, gcd

import pytest

from scdkit.core import Subset, bits_to_mask, mask_to_bits
from scdkit.constructions import is_prime
from scdkit.errors import PreconditionError
from scdkit.necklace import (
    build_poset,
    canonical_mask,
    necklace_chain_profile,
    necklace_level_sizes,
    necklace_of,
    reduce,
    reduced_graph,
)


def phi(d):
    return sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)


def necklaces_on_level(n, k):
    g = gcd(n, k)
    return sum(phi(d) * comb(n // d, k // d) for d in range(1, g + 1) if g % d == 0) // n


def string_canon(bits):
    return min(bits[i:] + bits[:i] for i in range(len(bits)))


def test_necklace_of_examples():
    assert necklace_of(Subset.from_elements(4, [1, 3])).orbit_size == 2
    assert necklace_of(Subset.from_elements(4, [1, 3])).deficient
    assert necklace_of(Subset.from_elements(4, [1, 3, 4])).full
    assert necklace_of(Subset.empty(6)).orbit_size == 1


@pytest.mark.parametrize("n", range(1, 13))
def test_canonical_form_is_smallest_rotation(n):
    for m in range(1 << n):
        bits = mask_to_bits(m, n)
        c, d = canonical_mask(m, n)
        assert mask_to_bits(c, n) == string_canon(bits)
        assert d == len({bits[i:] + bits[:i] for i in range(n)})


@pytest.mark.parametrize("n", range(1, 13))
def test_level_sizes_match_counting_formula(n):
    assert necklace_level_sizes(n) == [necklaces_on_level(n, k) for k in range(n + 1)]
    p = build_poset(n)
    assert sum(p.orbit.values()) == 2**n


def node(bits):
    return canonical_mask(bits_to_mask(bits), len(bits))[0]


def test_n5_poset():
    p = build_poset(5)
    assert len(p.nodes) == 8
    one = node("10000")
    assert p.capacity(0, one) == 5
    assert p.capacity(one, node("11000")) == 2
    assert p.capacity(one, node("10100")) == 2


def oracle_capacity(n, lower, upper):
    """Distinct elements that can be added to (below the middle) or removed
    from (above the middle) a fixed representative to cross the edge."""
    lb, ub = mask_to_bits(lower, n), mask_to_bits(upper, n)
    k = lb.count("1")
    if 2 * k <= n - 1:
        return sum(
            1 for i in range(n) if lb[i] == "0" and string_canon(lb[:i] + "1" + lb[i + 1 :]) == string_canon(ub)
        )
    return sum(1 for i in range(n) if ub[i] == "1" and string_canon(ub[:i] + "0" + ub[i + 1 :]) == string_canon(lb))


@pytest.mark.parametrize("n", range(1, 13))
def test_capacities(n):
    p = build_poset(n)
    for (u, v), c in p.edges.items():
        assert c == oracle_capacity(n, u, v)
    for u in p.nodes:
        k = p.level(u)
        if 2 * k <= n - 1:
            assert sum(p.capacity(u, v) for v in p.up[u]) == n - k
        if 2 * k >= n + 1:
            assert sum(p.capacity(v, u) for v in p.down[u]) == k


def test_reduce_n6():
    g = reduced_graph(6)
    iso = node("101010")
    assert g.up[iso] == [] and g.down[iso] == []
    assert g.capacity(node("100100"), node("110100")) == 2
    assert len(g.nodes) == 14


@pytest.mark.parametrize("n", range(1, 13))
def test_reduce_only_drops_middle_pointing_edges(n):
    p = build_poset(n)
    g = reduce(p)
    for e, c in g.edges.items():
        assert p.edges[e] == c
    for (u, v) in set(p.edges) - set(g.edges):
        assert p.is_full(u) != p.is_full(v)
        deficient, full = (v, u) if p.is_full(u) else (u, v)
        assert abs(2 * p.level(deficient) - n) < abs(2 * p.level(full) - n)
    if is_prime(n):
        assert g.edges == p.edges


def test_chain_profiles():
    assert necklace_chain_profile(7)[0] == 5
    assert necklace_chain_profile(11)[0] == 42
    c10, sizes = necklace_chain_profile(10)
    assert c10 == 26 and sizes.count(1) == 4
    assert necklace_chain_profile(6) == (4, [7, 3, 3, 1])


def test_poset_dimension_guard():
    with pytest.raises(PreconditionError):
        build_poset(21)
