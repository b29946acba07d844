import pytest
from hypothesis import given, strategies as st

from scdkit.core import Subset, complement, rotate
from scdkit.errors import PreconditionError
from scdkit.greene_kleitman import (
    INFINITE,
    block_code,
    chain_of,
    match,
    standard_scd,
    tau,
    tau_inverse,
)
from scdkit.verify import check_scd


def oracle_matching(bits: str):
    """Cancel adjacent unmatched '0' '1' pairs until none are left."""
    free = list(range(len(bits)))
    pairs = set()
    changed = True
    while changed:
        changed = False
        for t in range(len(free) - 1):
            a, b = free[t], free[t + 1]
            if bits[a] == "0" and bits[b] == "1":
                pairs.add((a + 1, b + 1))
                del free[t : t + 2]
                changed = True
                break
    u0 = tuple(i + 1 for i in free if bits[i] == "0")
    u1 = tuple(i + 1 for i in free if bits[i] == "1")
    return frozenset(pairs), u0, u1


LONG_X = "0000001001001001100001"


def test_match_long_example():
    m = match(Subset.from_bits(LONG_X))
    assert m.M == {(6, 7), (9, 10), (12, 13), (14, 17), (15, 16), (21, 22)}
    assert m.U0 == (1, 2, 3, 4, 5, 8, 11, 18, 19, 20)
    assert m.U1 == ()


def test_match_small_examples():
    m = match(Subset.from_bits("00000"))
    assert m.M == frozenset() and m.U0 == (1, 2, 3, 4, 5) and m.U1 == ()
    m = match(Subset.from_bits("110"))
    assert m.M == frozenset() and m.U1 == (1, 2) and m.U0 == (3,)


@given(st.text(alphabet="01", min_size=1, max_size=24))
def test_match_against_oracle(bits):
    m = match(Subset.from_bits(bits))
    assert (m.M, m.U0, m.U1) == oracle_matching(bits)
    assert len(bits) == 2 * len(m.M) + len(m.U0) + len(m.U1)
    assert not m.U1 or not m.U0 or max(m.U1) < min(m.U0)
    for i, j in m.M:
        assert bits[i - 1] == "0" and bits[j - 1] == "1"


def test_tau_examples():
    x = Subset.from_bits(LONG_X)
    assert tau(x).bits == "1000001001001001100001"
    y = x
    for _ in range(10):
        y = tau(y)
    assert y.bits == "1111101101101001111101"
    assert tau(Subset.empty(6)).bits == "100000"


def test_tau_preconditions():
    with pytest.raises(PreconditionError):
        tau(Subset.full(4))
    with pytest.raises(PreconditionError):
        tau_inverse(Subset.empty(4))


@pytest.mark.parametrize("n", range(1, 11))
def test_tau_keeps_matching(n):
    for m in range(1 << n):
        x = Subset(n, m)
        mx = match(x)
        if mx.U0:
            y = tau(x)
            assert match(y).M == mx.M
            assert y.level == x.level + 1
            assert tau_inverse(y) == x


def test_chain_of_examples():
    c = chain_of(Subset.from_elements(5, [1, 2]))
    assert [x.elements for x in c] == [(), (1,), (1, 2), (1, 2, 3), (1, 2, 3, 4), (1, 2, 3, 4, 5)]
    c = chain_of(Subset.from_bits("01"))
    assert [x.bits for x in c] == ["01"]
    c = chain_of(Subset.from_bits("1010"))
    assert [x.elements for x in c] == [(3,), (1, 3), (1, 3, 4)]


def test_standard_scd_examples():
    assert len(standard_scd(4)) == 6
    D1 = standard_scd(1)
    assert [[x.bits for x in c] for c in D1] == [["0", "1"]]
    sizes = sorted((len(c) for c in standard_scd(7)), reverse=True)
    assert sizes == [8] + [6] * 6 + [4] * 14 + [2] * 14


@pytest.mark.parametrize("n", range(1, 9))
def test_standard_scd_equals_grouping_by_matching(n):
    groups = {}
    for m in range(1 << n):
        x = Subset(n, m)
        groups.setdefault(oracle_matching(x.bits)[0], []).append(x)
    expected = {tuple(sorted(g, key=lambda x: x.level)) for g in groups.values()}
    got = {c.elements for c in standard_scd(n)}
    assert got == expected


@pytest.mark.parametrize("n", range(1, 13))
def test_standard_scd_valid(n):
    assert check_scd(standard_scd(n)).passed


def test_block_code_examples():
    assert block_code(Subset.from_bits("110100")).parts == (3, 3)
    assert block_code(Subset.from_bits("100110")).parts == (3, 3)
    assert block_code(Subset.from_bits("10")).parts == (2,)
    assert block_code(Subset.from_bits("011")) == INFINITE
    assert not INFINITE.finite


@given(st.text(alphabet="01", min_size=1, max_size=16))
def test_block_code_finite_iff_starts_1_ends_0(bits):
    code = block_code(Subset.from_bits(bits))
    assert code.finite == (bits[0] == "1" and bits[-1] == "0")
    if code.finite:
        assert sum(code.parts) == len(bits)


@pytest.mark.parametrize("n", range(2, 9))
def test_complements_of_a_chain_split_under_rotation(n):
    # distinct finite-block-code sets on one chain of D_n: the rotated
    # complements never share a chain of D_n
    for chain in standard_scd(n):
        finite = [x for x in chain if block_code(x).finite]
        for a in range(len(finite)):
            for b in range(a + 1, len(finite)):
                x, y = complement(finite[a]), complement(finite[b])
                for k in range(n):
                    assert chain_of(rotate(x, k)) != chain_of(rotate(y, k))
