"""Exact linear algebra kernel."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isopairs.exactlin import (
    DimensionMismatch,
    Matrix,
    intersect_spans,
    invert,
    kernel_basis,
    rank_of,
    rref,
    scalar_from_str,
    scalar_to_str,
    solve_in_span,
    span_basis,
    unit_vec,
    vec,
)

F = Fraction

rationals = st.fractions(
    min_value=-8, max_value=8, max_denominator=6
)


def small_matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r
            ).map(Matrix.from_rows)
        )
    )


def test_rref_identity():
    rank, red, pivots = rref(Matrix.identity(3))
    assert rank == 3
    assert pivots == (0, 1, 2)
    assert red == Matrix.identity(3)


def test_rref_zero():
    rank, red, pivots = rref(Matrix.zeros(2, 4))
    assert rank == 0
    assert pivots == ()


def test_rref_rank_one():
    rank, red, pivots = rref(Matrix.from_rows([[1, 2], [2, 4]]))
    assert rank == 1
    assert pivots == (0,)
    assert red.row(0) == vec([1, 2])


@given(small_matrices())
@settings(max_examples=60)
def test_rref_idempotent(m):
    _, red, _ = rref(m)
    _, red2, _ = rref(red)
    assert red2 == red


def test_solve_in_span_trivial():
    e1, e2 = unit_vec(2, 0), unit_vec(2, 1)
    assert solve_in_span([e1], [3, 0]) == (F(3),)
    assert solve_in_span([e1], e2) is None


def test_solve_in_span_two_by_two():
    basis = [vec([1, 1]), vec([0, 1])]
    assert solve_in_span(basis, [1, 0]) == (F(1), F(-1))


def test_solve_in_span_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_in_span([vec([1, 0])], [1, 0, 0])


def test_intersect_spans_trivial():
    e1, e2 = unit_vec(2, 0), unit_vec(2, 1)
    assert intersect_spans([e1], [e1]) == [e1]
    assert intersect_spans([e1], [e2]) == []


def test_intersect_symmetric_antisymmetric():
    # 2x2 matrices flattened row-major; symmetric vs antisymmetric.
    sym = [vec([1, 0, 0, 0]), vec([0, 1, 1, 0]), vec([0, 0, 0, 1])]
    antisym = [vec([0, 1, -1, 0])]
    assert intersect_spans(sym, antisym) == []


@given(
    st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=3),
    st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=3),
)
@settings(max_examples=60)
def test_span_dimension_formula(a, b):
    inter = intersect_spans(a, b)
    assert len(inter) + rank_of([*a, *b]) == rank_of(a) + rank_of(b)


@given(rationals.filter(lambda x: x != 0))
def test_exact_reciprocal(x):
    assert x * (1 / x) == 1


def test_kernel_basis():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    ker = kernel_basis(m)
    assert len(ker) == 2
    for k in ker:
        assert all(x == 0 for x in m.apply(k))


def test_invert_round_trip():
    m = Matrix.from_rows([[1, 2], [3, 5]])
    assert invert(m) @ m == Matrix.identity(2)
    with pytest.raises(ValueError):
        invert(Matrix.from_rows([[1, 2], [2, 4]]))


def test_scalar_wire_format():
    assert scalar_to_str(F(3)) == "3"
    assert scalar_to_str(F(-1, 2)) == "-1/2"
    assert scalar_from_str("7/3") == F(7, 3)
    assert scalar_from_str("-4") == F(-4)


@given(rationals)
def test_scalar_round_trip(x):
    assert scalar_from_str(scalar_to_str(x)) == x


def test_span_basis_canonical():
    b1 = span_basis([vec([2, 4]), vec([1, 2])])
    b2 = span_basis([vec([1, 2])])
    assert b1 == b2
