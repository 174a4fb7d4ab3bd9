from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doublecat.ratmat import (
    RationalMatrix,
    factor_permutation_matrix,
    frac,
    kron_all,
    permutation_matrix,
)

small_entries = st.integers(-4, 4).map(Q)


def matrices(rows, cols):
    return st.lists(
        st.lists(small_entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    ).map(RationalMatrix.from_rows)


def test_frac_parses_strings():
    assert frac("3/7") == Q(3, 7)
    assert frac(5) == Q(5)
    with pytest.raises(TypeError):
        frac(0.5)


def test_matmul_shapes_and_values():
    a = RationalMatrix.from_rows([[1, 2], [3, 4]])
    b = RationalMatrix.from_rows([["1/2", 0], [0, 1]])
    assert (a @ b).entries == ((Q(1, 2), Q(2)), (Q(3, 2), Q(4)))
    with pytest.raises(ValueError):
        a @ RationalMatrix.identity(3)


@given(matrices(3, 2), matrices(2, 4))
@settings(max_examples=40)
def test_transpose_reverses_products(a, b):
    assert (a @ b).transpose() == b.transpose() @ a.transpose()


@given(matrices(2, 2), matrices(3, 3))
@settings(max_examples=40)
def test_kron_respects_identity(a, b):
    eye = RationalMatrix.identity(2).kron(RationalMatrix.identity(3))
    assert eye == RationalMatrix.identity(6)
    assert a.kron(b).rows == 6 and a.kron(b).cols == 6


def test_rref_rank_and_pivots():
    m = RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    red, pivots = m.rref()
    assert pivots == (0, 1)
    assert m.rank() == 2
    assert red.entries[2] == (Q(0), Q(0), Q(0))


def test_inverse_round_trip():
    m = RationalMatrix.from_rows([[2, 1], [1, 1]])
    assert m @ m.inverse() == RationalMatrix.identity(2)
    with pytest.raises(ValueError):
        RationalMatrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_nullspace_spans_kernel():
    m = RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    basis = m.nullspace()
    assert len(basis) == 2
    for vec in basis:
        assert all(x == 0 for x in m.apply(vec))


def test_permutation_matrix_moves_basis():
    p = permutation_matrix([2, 0, 1])
    assert p.apply((Q(1), Q(0), Q(0))) == (Q(0), Q(0), Q(1))


def test_factor_permutation_swaps_tensor_slots():
    # swap two 2-dimensional factors: basis e_i (x) e_j -> e_j (x) e_i
    p = factor_permutation_matrix([1, 0], 2)
    vec = [Q(0)] * 4
    vec[0 * 2 + 1] = Q(1)  # e_0 (x) e_1
    assert p.apply(tuple(vec))[1 * 2 + 0] == Q(1)


def test_kron_all_empty_is_scalar_identity():
    assert kron_all([]) == RationalMatrix.identity(1)
