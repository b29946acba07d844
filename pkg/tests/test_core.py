from math import comb

import pytest
from hypothesis import given, strategies as st

from scdkit.core import (
    Chain,
    ChainDecomposition,
    Subset,
    chain_size_profile,
    complement,
    complement_decomposition,
    count_table,
    rotate,
)
from scdkit.errors import DimensionError
from scdkit.greene_kleitman import standard_scd


def rotate_by_string(bits: str, k: int) -> str:
    # cyclic right rotation of the characteristic string
    k %= len(bits)
    return bits[-k:] + bits[:-k] if k else bits


subsets = st.integers(1, 12).flatmap(
    lambda n: st.builds(Subset, st.just(n), st.integers(0, (1 << n) - 1))
)


def test_rotate_example():
    x = Subset.from_elements(4, [1, 3, 4])
    assert x.bits == "1011"
    y = rotate(x, 1)
    assert y.elements == (1, 2, 4)
    assert y.bits == "1101"


def test_rotate_trivial():
    assert rotate(Subset.empty(9), 3) == Subset.empty(9)
    x = Subset.from_elements(5, [1, 2])
    assert rotate(x, 5) == x


@given(subsets, st.integers(-40, 40))
def test_rotate_matches_string_rotation(x, k):
    assert rotate(x, k).bits == rotate_by_string(x.bits, k)
    assert rotate(x, k).level == x.level


@given(subsets)
def test_rotation_renames_elements(x):
    n = x.n
    expected = sorted(e % n + 1 for e in x.elements)
    assert list(rotate(x, 1).elements) == expected


@given(subsets)
def test_orbit_size_divides_n(x):
    orbit = {rotate(x, k) for k in range(x.n)}
    assert x.n % len(orbit) == 0


def test_rotation_is_bijection_on_levels():
    n = 8
    for k in range(n + 1):
        level = [Subset(n, m) for m in range(1 << n) if bin(m).count("1") == k]
        assert {rotate(x, 1) for x in level} == set(level)


def test_complement_examples():
    assert complement(Subset.empty(7)) == Subset.full(7)
    chain = Chain(5, tuple(Subset.from_elements(5, range(1, k + 1)) for k in range(6)))
    comp = Chain(5, tuple(Subset.from_elements(5, range(6 - k, 6)) for k in range(6)))
    assert chain.complement() == comp


@given(subsets)
def test_complement_involution(x):
    assert complement(complement(x)) == x
    assert complement(x).level == x.n - x.level


def test_complement_decomposition_involution():
    D = standard_scd(6)
    C = complement_decomposition(D)
    assert complement_decomposition(C) == D
    assert all(c.is_saturated() and c.is_symmetric() for c in C)


def test_count_table_examples():
    assert count_table(4).a_n == 6
    assert count_table(11).b_n == 6
    assert count_table(5).a_n == 10


def test_count_table_bound_row():
    expected = [1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13]
    assert [count_table(n).b_n for n in range(1, 26)] == expected
    assert [count_table(n).a_n for n in range(1, 26)] == [comb(n, n // 2) for n in range(1, 26)]


@pytest.mark.parametrize("n", [0, 33, -1])
def test_count_table_rejects(n):
    with pytest.raises(DimensionError):
        count_table(n)


def tally(D: ChainDecomposition):
    out = {}
    for c in D:
        out[len(c)] = out.get(len(c), 0) + 1
    return sorted(out.items(), reverse=True)


def test_chain_size_profile_examples():
    assert chain_size_profile(7) == [(8, 1), (6, 6), (4, 14), (2, 14)]
    assert chain_size_profile(1) == [(2, 1)]
    assert chain_size_profile(4) == [(5, 1), (3, 3), (1, 2)]


@pytest.mark.parametrize("n", range(1, 11))
def test_chain_size_profile_against_tally(n):
    prof = chain_size_profile(n)
    assert prof == tally(standard_scd(n))
    assert sum(s * c for s, c in prof) == 2**n
    assert sum(c for _, c in prof) == comb(n, n // 2)


def test_subset_validation():
    with pytest.raises(ValueError):
        Subset(3, 8)
    with pytest.raises(ValueError):
        Subset.from_bits("0120")
    assert Subset.from_bits("0110").elements == (2, 3)
