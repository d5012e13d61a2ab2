import pytest

from hwpoly.monomials import (
    canonical_monomial,
    count_weight_monomials,
    enumerate_weight_monomials,
    monomial_content,
)
from hwpoly.tableaux import partitions_of

from oracles import brute_weight_monomials


def test_canonical_is_fixed_point():
    mono = canonical_monomial([[2, 1], [1, 1]])
    assert mono == ((1, 1), (1, 2))
    assert canonical_monomial(mono) == mono


def test_monomial_content():
    mono = ((1, 2, 2), (1, 1, 2), (1, 1, 3), (1, 2, 3))
    assert monomial_content(mono, 3) == (6, 4, 2)


@pytest.mark.parametrize(
    "lam,d,c,expected",
    [
        ((2, 2), 2, 2, {((1, 1), (2, 2)), ((1, 2), (1, 2))}),
        ((4,), 2, 2, {((1, 1), (1, 1))}),
        ((1, 1, 1, 1), 2, 2, {((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))}),
    ],
)
def test_enumerate_frozen(lam, d, c, expected):
    # frozen from the brute-force multiset oracle
    assert set(brute_weight_monomials(lam, d, c)) == expected
    assert set(enumerate_weight_monomials(lam, d, c)) == expected


def test_enumerate_matches_brute_force():
    for dc, d in [(4, 2), (6, 2), (6, 3), (8, 4), (8, 2)]:
        c = dc // d
        for lam in partitions_of(dc, max_parts=4):
            got = enumerate_weight_monomials(lam, d, c)
            want = brute_weight_monomials(lam, d, c)
            assert set(got) == set(want), (lam, d, c)
            assert got == sorted(got)  # deterministic lexicographic order
            assert len(got) == count_weight_monomials(lam, d, c)


def test_count_handles_unsorted_and_zeros():
    assert count_weight_monomials((0, 2, 2), 2, 2) == count_weight_monomials((2, 2), 2, 2)
    assert count_weight_monomials((2, 2, 0), 2, 2) == 2
    assert count_weight_monomials((-1, 5), 2, 2) == 0
    assert count_weight_monomials((3, 2), 2, 2) == 0  # wrong total


def test_big_domain_count_frozen():
    # frozen from the enumeration itself once, cross-checked against the DP
    assert count_weight_monomials((15, 6, 6, 6), 11, 3) == 25459
