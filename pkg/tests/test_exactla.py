import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relit.exactla import (
    FieldError,
    FpMatrix,
    Inconsistent,
    ShapeError,
    column_space,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve,
)

PRIMES = [2, 3, 5, 7, 65521]


@st.composite
def matrices(draw, max_dim=6):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return FpMatrix(np.array(entries, dtype=np.int64).reshape(r, c), p)


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert k.cols == m.cols - rank(m)
    assert (m @ k).is_zero()


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rref_is_idempotent_and_keeps_rank(m):
    r, piv = rref(m)
    assert rank(r) == rank(m) == len(piv)
    assert rref(r)[0] == r


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_column_space_spans_columns(m):
    c = column_space(m)
    assert c.cols == rank(m)
    if m.cols and m.rows:
        x = solve(c, m) if c.cols else None
        if x is not None:
            assert c @ x == m


@given(matrices(max_dim=5))
@settings(max_examples=100, deadline=None)
def test_inverse_of_invertible(m):
    if m.rows != m.cols or rank(m) != m.rows:
        return
    assert inverse(m) @ m == FpMatrix.identity(m.rows, m.p)


def test_deterministic_rref():
    m = FpMatrix([[0, 2, 4], [1, 1, 1], [2, 2, 2]], 5)
    assert rref(m) == rref(FpMatrix(m.tolist(), 5))
    assert rref(m)[1] == [0, 1]


def test_entries_reduced_and_read_only():
    m = FpMatrix([[7, -1]], 5)
    assert m.tolist() == [[2, 4]]
    with pytest.raises(ValueError):
        m.a[0, 0] = 1


def test_errors():
    with pytest.raises(FieldError):
        FpMatrix([[1]], 4)
    with pytest.raises(FieldError):
        FpMatrix([[1]], 2) @ FpMatrix([[1]], 3)
    with pytest.raises(ShapeError):
        FpMatrix([[1, 0]], 2) @ FpMatrix([[1, 0]], 2)
    with pytest.raises(Inconsistent):
        solve(FpMatrix([[1], [1]], 2), [0, 1])
    with pytest.raises(Inconsistent):
        inverse(FpMatrix([[1, 1], [1, 1]], 3))
