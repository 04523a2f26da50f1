from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from e6coset import linalg

small_matrix = st.lists(
    st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3
)


def test_invert_identity_and_known():
    ident = [[1, 0], [0, 1]]
    assert linalg.invert(ident) == [[1, 0], [0, 1]]
    m = [[2, 1], [1, 1]]
    inv = linalg.invert(m)
    assert inv == [[1, -1], [-1, 2]]


def test_invert_singular_raises():
    with pytest.raises(ValueError):
        linalg.invert([[1, 2], [2, 4]])


@given(small_matrix)
def test_invert_roundtrip(m):
    det_zero = False
    try:
        inv = linalg.invert(m)
    except ValueError:
        det_zero = True
    if det_zero:
        return
    n = len(m)
    prod = [
        [sum(Fraction(m[i][k]) * inv[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    assert prod == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def test_ldl_positive_definite():
    A = [[2, -1], [-1, 2]]
    L, D = linalg.ldl(A)
    assert D == [Fraction(2), Fraction(3, 2)]
    assert L[1][0] == Fraction(-1, 2)
    with pytest.raises(ValueError):
        linalg.ldl([[0, 0], [0, 1]])


def test_nullspace_simple():
    rows = [[1, 1, 0], [0, 1, 1]]
    basis = linalg.nullspace_int(rows, 3)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        assert sum(a * b for a, b in zip(row, v)) == 0
    assert v == [1, -1, 1]


def test_nullspace_full_rank():
    rows = [[1, 0], [0, 1]]
    assert linalg.nullspace_int(rows, 2) == []


def test_nullspace_zero_matrix():
    basis = linalg.nullspace_int([[0, 0, 0]], 3)
    assert len(basis) == 3


@given(
    st.lists(
        st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=2, max_size=6
    )
)
def test_nullspace_vectors_annihilate(rows):
    basis = linalg.nullspace_int(rows, 4)
    ech = linalg.IntRowEchelon(4)
    for r in rows:
        ech.insert(r)
    assert len(basis) == 4 - ech.rank
    for v in basis:
        assert any(v)
        first = next(x for x in v if x)
        assert first > 0
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) == 0
