from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import inclusion_rows, invariant_factors_by_minors, rank_fraction, rank_mod

from kellymod.errors import PreconditionError
from kellymod.incidence import build_inclusion_matrix, kneser_adjacency
from kellymod.linalg import (
    DiagonalSpec,
    IntegerMatrix,
    ResidueMatrix,
    diagonal_specs_equivalent,
    gf2_left_kernel,
    gf2_rank,
    in_span_mod_p,
    left_kernel_mod_p,
    rank_mod_p,
    rank_rational,
    smith_normal_form,
)

small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_rank_mod_p_examples():
    assert rank_mod_p(ResidueMatrix.identity(5, 3)) == 5
    assert rank_mod_p(ResidueMatrix.from_rows([[1, 1, 1]] * 3, 2)) == 1
    assert rank_mod_p(build_inclusion_matrix(6, 2, 3).mod(2)) == 10


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@given(rows=small_matrices)
@settings(max_examples=60, deadline=None)
def test_rank_mod_p_matches_oracle(p, rows):
    assert rank_mod_p(ResidueMatrix.from_rows(rows, p)) == rank_mod(rows, p)


@given(rows=small_matrices)
@settings(max_examples=80, deadline=None)
def test_rank_rational_matches_fraction_oracle(rows):
    assert rank_rational(IntegerMatrix(rows)) == rank_fraction(rows)


def test_rank_rational_examples():
    assert rank_rational(build_inclusion_matrix(6, 2, 3).integer) == 15
    assert rank_rational(IntegerMatrix.zeros(3, 4)) == 0
    assert rank_rational(kneser_adjacency(2, 5)) == 10


@pytest.mark.parametrize("p", [2, 3, 5])
@given(rows=small_matrices)
@settings(max_examples=40, deadline=None)
def test_left_kernel_is_a_kernel_of_right_dimension(p, rows):
    m = ResidueMatrix.from_rows(rows, p)
    basis = left_kernel_mod_p(m)
    assert len(basis) == len(rows) - rank_mod(rows, p)
    for vec in basis:
        prod = np.array(vec, dtype=np.int64) @ (np.array(rows, dtype=np.int64) % p)
        assert not (prod % p).any()


def test_left_kernel_examples():
    assert left_kernel_mod_p(ResidueMatrix.identity(4, 2)) == []
    assert left_kernel_mod_p(build_inclusion_matrix(6, 2, 4).mod(2)) == [(1,) * 15]
    assert len(left_kernel_mod_p(build_inclusion_matrix(6, 2, 3).mod(2))) == 5


def test_gf2_kernel_of_repeated_rows():
    assert gf2_left_kernel([0b11, 0b11, 0b01], 2) == [0b011]
    assert gf2_rank([0b11, 0b11, 0b01]) == 2


def test_in_span():
    basis = [(1, 0, 2), (0, 1, 1)]
    assert in_span_mod_p((2, 1, 2), basis, 3)
    assert not in_span_mod_p((0, 0, 1), basis, 3)


def test_residue_matrix_rejects_composite():
    with pytest.raises(PreconditionError):
        ResidueMatrix.from_rows([[1]], 4)


def test_snf_examples():
    assert smith_normal_form(IntegerMatrix([[2, 0], [0, 3]])).invariant_factors() == (1, 6)
    assert smith_normal_form(IntegerMatrix.identity(4)).invariant_factors() == (1, 1, 1, 1)


def test_snf_of_vertex_edge_matrix_of_k4():
    # The inclusion of points in pairs of a 4-set; the last invariant factor is 2, not 3.
    spec = smith_normal_form(build_inclusion_matrix(4, 1, 2).integer)
    assert spec.invariant_factors() == (1, 1, 1, 2)
    assert invariant_factors_by_minors(inclusion_rows(4, 1, 2)) == (1, 1, 1, 2)


@given(rows=small_matrices.filter(lambda r: len(r) <= 4 and len(r[0]) <= 4))
@settings(max_examples=60, deadline=None)
def test_snf_matches_determinantal_divisors(rows):
    got = smith_normal_form(IntegerMatrix(rows)).invariant_factors()
    assert got == invariant_factors_by_minors(rows)


def test_diagonal_equivalence():
    d = lambda xs: DiagonalSpec.from_diagonal(xs, (len(xs), len(xs)))  # noqa: E731
    assert diagonal_specs_equivalent(d([2, 3]), d([1, 6]))
    assert not diagonal_specs_equivalent(d([2, 2]), d([1, 4]))
    assert diagonal_specs_equivalent(d([4, 0, 6]), d([4, 0, 6]))
