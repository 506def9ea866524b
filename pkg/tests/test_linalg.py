from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzlab.errors import InvalidInput
from syzlab.linalg import (
    Matrix,
    Span,
    column_echelon_basis,
    image_dim,
    kernel_basis,
    quotient_dim,
    rank,
    rref,
)
from syzlab.cyclo import zeta


def M(rows):
    return Matrix.from_rows([[Fraction(x) for x in r] for r in rows])


def test_rref_rank_one():
    red, pivots, rk = rref(M([[1, 2], [2, 4]]))
    assert rk == 1
    assert pivots == (0,)
    assert red == M([[1, 2], [0, 0]])


def test_rref_identity_fixed():
    i3 = Matrix.identity(3)
    red, pivots, rk = rref(i3)
    assert red == i3 and rk == 3 and pivots == (0, 1, 2)


def test_rref_swap():
    red, pivots, rk = rref(M([[0, 1], [1, 0]]))
    assert red == Matrix.identity(2)
    assert rk == 2


def test_rref_idempotent():
    m = M([[2, 4, 1], [3, 1, 0], [5, 5, 1]])
    red, _, _ = rref(m)
    red2, _, _ = rref(red)
    assert red == red2


def test_kernel_basis_examples():
    k = kernel_basis(M([[1, 2], [2, 4]]))
    assert k.cols == 1
    # proportional to (-2, 1)
    assert k.at(0, 0) * 1 == -2 * k.at(1, 0)
    assert kernel_basis(Matrix.identity(4)).cols == 0
    assert kernel_basis(Matrix.zeros(2, 3)).cols == 3


def test_kernel_is_annihilated():
    m = M([[1, 2, 3], [4, 5, 6]])
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert m.cols == rank(m) + k.cols


def test_image_dim():
    assert image_dim(M([[1, 2], [2, 4]])) == 1
    assert image_dim(Matrix.zeros(3, 3)) == 0


def test_quotient_dim():
    amb = Matrix.identity(3)
    sub = M([[1], [0], [0]])
    assert quotient_dim(amb, sub) == 2
    assert quotient_dim(amb, amb) == 0
    two = M([[1, 0], [0, 1], [0, 0]])
    s = M([[1], [1], [0]])
    assert quotient_dim(two, s) == 1


def test_quotient_dim_containment_error():
    amb = M([[1], [0], [0]])
    sub = M([[0], [1], [0]])
    with pytest.raises(InvalidInput):
        quotient_dim(amb, sub)


def test_column_echelon_basis_canonical():
    m = M([[2, 4], [4, 8], [2, 5]])
    b = column_echelon_basis(m)
    assert b.cols == 2
    # same column space regardless of generating columns
    b2 = column_echelon_basis(M([[2, 6], [4, 12], [3, 7]]))
    assert b == b2


def test_cyclotomic_entries():
    z = zeta(4)
    m = Matrix.from_rows([[z, 1], [1, -z]])
    # second row is -z times the first
    assert rank(m) == 1
    k = kernel_basis(m)
    assert k.cols == 1
    assert (m @ k).is_zero()


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=1, max_value=8),
    st.data(),
)
def test_rank_equals_transpose_rank(r, c, data):
    rows = [
        [Fraction(data.draw(st.integers(-3, 3)), data.draw(st.integers(1, 3))) for _ in range(c)]
        for _ in range(r)
    ]
    m = Matrix.from_rows(rows)
    assert rank(m) == rank(m.transpose())
    k = kernel_basis(m)
    assert m.cols == rank(m) + k.cols
    assert (m @ k).is_zero()


def test_span_rank_and_membership():
    s = Span()
    assert s.add({(1, 0): Fraction(2)})
    assert s.add({(0, 1): Fraction(1), (1, 0): Fraction(1)})
    assert not s.add({(1, 0): Fraction(1), (0, 1): Fraction(2)})
    assert s.dim == 2
    assert s.contains({(0, 1): Fraction(7)})
    assert not s.contains({(2, 0): Fraction(1)})
