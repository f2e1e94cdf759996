from __future__ import annotations

import math
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kellymod.combinatorics import (
    SubsetCode,
    binomial,
    binomial_mod_p_lucas,
    digits_base_p,
    enumerate_subsets,
    is_prime,
    p_divides_binomial,
    pair_index,
    subset_masks,
    subset_rank,
    subset_unrank,
)
from kellymod.errors import PreconditionError

PRIMES = [2, 3, 5, 7, 11, 13]


def colex_oracle(v: int, card: int) -> list[tuple[int, ...]]:
    """Colex order: compare by largest element first."""
    return sorted(combinations(range(v), card), key=lambda s: s[::-1])


@pytest.mark.parametrize("n, r, want", [(6, 2, 15), (6, -1, 0), (52, 26, 495918532948104), (3, 5, 0), (0, 0, 1)])
def test_binomial_values(n, r, want):
    assert binomial(n, r) == want


def test_binomial_matches_pascal():
    row = [1]
    for n in range(1, 40):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
        assert [binomial(n, r) for r in range(n + 1)] == row


@pytest.mark.parametrize("n, p, want", [(10, 3, [1, 0, 1]), (4, 2, [0, 0, 1]), (0, 5, [0])])
def test_digits_examples(n, p, want):
    d = digits_base_p(n, p)
    assert list(d.digits) == want
    assert d.value == n


def test_digits_reject_composite_base():
    with pytest.raises(PreconditionError):
        digits_base_p(10, 4)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("k, t, p, want", [(7, 3, 2, 1), (10, 4, 3, 0), (11, 0, 5, 1)])
def test_lucas_examples(k, t, p, want):
    assert binomial_mod_p_lucas(k, t, p) == want


def test_p_divides_examples():
    assert p_divides_binomial(10, 4, 3)
    assert not p_divides_binomial(7, 3, 2)
    assert not p_divides_binomial(9, 9, 7)


@given(st.integers(0, 300), st.integers(0, 300), st.sampled_from(PRIMES))
def test_lucas_matches_exact_binomial(k, t, p):
    assert binomial_mod_p_lucas(k, t, p) == math.comb(k, t) % p
    if t <= k:
        assert p_divides_binomial(k, t, p) == (math.comb(k, t) % p == 0)


def test_unrank_examples():
    assert subset_unrank(0, 2, 4).elements == (0, 1)
    assert subset_unrank(5, 2, 4).elements == (2, 3)


@pytest.mark.parametrize("v", range(0, 8))
def test_enumeration_is_colex(v):
    for card in range(v + 1):
        got = [s.elements for s in enumerate_subsets(v, card)]
        assert got == colex_oracle(v, card)
        assert [subset_rank(s) for s in enumerate_subsets(v, card)] == list(range(len(got)))


def test_enumeration_edge_cases():
    assert [s.elements for s in enumerate_subsets(4, 0)] == [()]
    assert [s.elements for s in enumerate_subsets(5, 5)] == [(0, 1, 2, 3, 4)]
    assert [s.elements for s in enumerate_subsets(4, 2)][-1] == (2, 3)


@given(st.sets(st.integers(0, 30), max_size=8))
def test_rank_unrank_roundtrip(elements):
    s = SubsetCode.of(sorted(elements))
    assert subset_unrank(subset_rank(s), len(elements), 31) == s


def test_masks_are_numerically_sorted():
    for v in range(1, 9):
        for card in range(v + 1):
            masks = subset_masks(v, card)
            assert list(masks) == sorted(masks)


def test_pair_index_matches_colex():
    for idx, (i, j) in enumerate(colex_oracle(7, 2)):
        assert pair_index(i, j) == idx
