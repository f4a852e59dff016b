from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactcat.gf2 import BitMatrix, BitVector, DimensionError, kernel_basis, rank, solve
from oracles import dense_rank

matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_rank_identity_and_zero():
    assert rank(BitMatrix.identity(3)) == 3
    assert rank(BitMatrix.zeros(2, 2)) == 0


def test_solve_examples():
    m = BitMatrix.from_rows([[1, 1], [0, 1]])
    assert solve(m, BitVector.from_list([1, 0])).to_list() == [1, 0]
    b = BitVector.from_list([1, 0, 1])
    assert solve(BitMatrix.identity(3), b) == b
    assert solve(BitMatrix.zeros(2, 2), BitVector.from_list([0, 1])) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve(BitMatrix.identity(2), BitVector.from_list([1, 0, 1]))


def test_kernel_examples():
    assert len(kernel_basis(BitMatrix.zeros(2, 2))) == 2
    assert kernel_basis(BitMatrix.identity(4)) == []
    (v,) = kernel_basis(BitMatrix.from_rows([[1, 1]]))
    assert v.to_list() == [1, 1]


@given(matrices)
def test_rank_matches_dense_elimination(rows):
    assert rank(BitMatrix.from_rows(rows)) == dense_rank(rows)


@given(matrices)
def test_rank_nullity(rows):
    m = BitMatrix.from_rows(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert m.apply(v).is_zero()


@given(matrices)
def test_rank_of_transpose(rows):
    m = BitMatrix.from_rows(rows)
    assert rank(m) == rank(m.transpose())


@settings(max_examples=150)
@given(matrices, st.data())
def test_solve_is_consistent(rows, data):
    m = BitMatrix.from_rows(rows)
    x = BitVector.from_list(data.draw(st.lists(st.integers(0, 1), min_size=m.cols, max_size=m.cols)))
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b
