from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from holmaps.linalg import RationalMatrix, RowEchelon, cokernel_dim, image_basis, kernel_basis, rank, rref

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return RationalMatrix.from_dense([[draw(small) for _ in range(c)] for _ in range(r)])


def test_known_rank():
    m = RationalMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    assert cokernel_dim(m) == 1
    (v,) = kernel_basis(m)
    assert m.apply(v) == [0, 0, 0]


def test_floats_rejected():
    with pytest.raises((TypeError, ValueError)):
        RationalMatrix.from_dense([[0.5]])


def test_fractions_allowed():
    m = RationalMatrix.from_dense([[Fraction(1, 2), 1], [1, 2]])
    assert rank(m) == 1


@settings(max_examples=60)
@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert len(ker) + rank(m) == m.ncols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=60)
@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


@settings(max_examples=40)
@given(matrices(), matrices())
def test_rank_of_product(a, b):
    if a.ncols != b.nrows:
        return
    assert rank(a @ b) <= min(rank(a), rank(b))


@settings(max_examples=40)
@given(matrices())
def test_image_basis_spans(m):
    assert len(image_basis(m)) == rank(m)


def test_row_echelon_membership():
    ech = RowEchelon()
    assert ech.insert({0: 1, 1: 1})
    assert ech.insert({1: 2})
    assert ech.contains({0: 3})
    assert not ech.insert({0: 5, 1: -4})
    assert ech.rank == 2


def test_rref_fully_reduced():
    red = rref([{0: 2, 1: 4, 2: 2}, {1: 1, 2: 3}])
    assert set(red) == {0, 1}
    assert red[0].get(1, 0) == 0 and red[0][0] == 1
