from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from toricvortex import exact_lattice as el
from toricvortex.errors import DimensionMismatch


def matrices(max_rows=3, max_cols=4, bound=6):
    return st.integers(1, max_cols).flatmap(lambda c: st.lists(
        st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=1, max_size=max_rows))


# ---------------------------------------------------------------------------
# fixed values


def test_normal_form_small():
    H, U = el.lattice_normal_form([[2, 3]])
    assert H == ((1, 0),)
    assert el.matmul([[2, 3]], U) == H
    assert abs(el.determinant(U)) == 1


def test_kernel_of_all_ones():
    assert el.integer_kernel_basis([[1, 1, 1]]) == ((1, 0, -1), (0, 1, -1))


def test_kernel_is_saturated():
    # 2x - 4y = 0 has kernel generated by (2, 1), not (4, 2)
    assert el.integer_kernel_basis([[2, -4]]) == ((2, 1),)


def test_det_and_primitive():
    assert el.det_abs_in_lattice([(1, 0), (1, 2)]) == 2
    assert el.primitive_vector((4, -6, 0)) == (2, -3, 0)
    assert el.primitive_integer_direction((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)
    with pytest.raises(ValueError):
        el.primitive_vector((0, 0))


def test_solve_linear():
    assert el.solve_linear([(1, 0), (1, 1)], (3, 2)) == (1, 2)
    assert el.solve_linear([(1, 1)], (1, 0)) is None


def test_ragged_matrix_rejected():
    with pytest.raises(DimensionMismatch):
        el.lattice_normal_form([[1, 2], [3]])


def test_complete_to_basis():
    B = el.complete_to_basis((2, 3))
    assert B.vectors[0] == (2, 3)
    assert el.determinant(B.vectors) == 1
    with pytest.raises(ValueError):
        el.complete_to_basis((2, 4))


def test_adapted_basis_for_flag():
    B = el.adapted_oriented_basis([[(1, 1, 0)], [(1, 1, 0), (0, 1, 0)]], 3)
    assert el.determinant(B.vectors) == 1
    assert el.dot((1, 1, 0), B.vectors[1]) == el.dot((1, 1, 0), B.vectors[2]) == 0
    assert el.dot((0, 1, 0), B.vectors[2]) == 0
    assert el.dot((1, 1, 0), B.vectors[0]) != 0


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_normal_form_properties(M):
    H, U = el.lattice_normal_form(M)
    cols = len(M[0])
    assert el.matmul(M, U) == H
    assert abs(el.determinant(U)) == 1
    r = el.rank_of_hnf(H, cols)
    assert r == el.rank(M)
    # column echelon with positive pivots
    last = -1
    for j in range(r):
        pivot_row = next(i for i, row in enumerate(H) if row[j])
        assert pivot_row > last and H[pivot_row][j] > 0
        for jj in range(j):
            assert 0 <= H[pivot_row][jj] < H[pivot_row][j]
        last = pivot_row


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_properties(M):
    cols = len(M[0])
    K = el.integer_kernel_basis(M)
    assert len(K) == cols - el.rank(M)
    for v in K:
        assert all(el.dot(row, v) == 0 for row in M)
    if K:
        # saturated: the gcd of the maximal minors of the basis is 1
        g = 0
        for cols_ in combinations(range(cols), len(K)):
            g = gcd(g, int(el.determinant([[v[c] for c in cols_] for v in K])))
        assert g == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4).filter(lambda v: any(v)))
def test_complete_to_basis_property(v):
    p = el.primitive_vector(v)
    B = el.complete_to_basis(p)
    assert B.vectors[0] == p
    assert abs(el.determinant(B.vectors)) == 1
    inv = el.inverse_unimodular(B.matrix())
    assert el.matmul(B.matrix(), inv) == el.identity(len(p))
