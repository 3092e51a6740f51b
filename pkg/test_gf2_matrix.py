#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Testes da álgebra linear sobre GF(2)
"""

import sys
from pathlib import Path

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

# Adicionar o diretório do projeto ao path
sys.path.append(str(Path(__file__).parent))

from core.errors import DimensionMismatchError, LCDToolkitError
from core.gf2_matrix import (
    Gf2Matrix,
    Gf2Vector,
    batch_rank,
    det,
    mul,
    popcount_array,
    principal_submatrix,
    rank,
    rank_of_row_ints,
    transpose,
)


def bit_matrices(max_rows=8, max_cols=8, min_rows=1, min_cols=1):
    return st.integers(min_rows, max_rows).flatmap(
        lambda r: st.integers(min_cols, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def square_matrices(max_order=12):
    return st.integers(1, max_order).flatmap(
        lambda k: st.lists(st.lists(st.integers(0, 1), min_size=k, max_size=k), min_size=k, max_size=k)
    )


def reference_product(a, b):
    return (np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)) % 2


def test_identity_times_matrix():
    m = Gf2Matrix.from_strings(["101", "011", "110"])
    assert mul(Gf2Matrix.identity(3), m) == m


def test_ones_row_times_ones_column_is_zero():
    assert mul(Gf2Matrix.from_bits([[1, 1]]), Gf2Matrix.from_bits([[1], [1]])) == Gf2Matrix.from_bits([[0]])


def test_gram_of_two_dim_block_generator():
    g = Gf2Matrix.from_strings(["1111000", "0001111"])
    assert g.mul(g.transpose()) == Gf2Matrix.from_bits([[0, 1], [1, 0]])


def test_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        mul(Gf2Matrix.identity(2), Gf2Matrix.identity(3))


def test_rank_examples():
    assert rank(Gf2Matrix.identity(5)) == 5
    assert rank(Gf2Matrix.zeros(3, 4)) == 0
    assert rank(Gf2Matrix.from_bits([[1, 1], [1, 1]])) == 1


def test_det_examples():
    assert det(Gf2Matrix.identity(4)) == 1
    assert det(Gf2Matrix.from_bits([[0, 1], [1, 0]])) == 1
    assert det(Gf2Matrix.from_bits([[1, 1], [1, 1]])) == 0
    assert det(Gf2Matrix.zeros(0, 0)) == 1


def test_det_rejects_non_square():
    with pytest.raises(DimensionMismatchError):
        det(Gf2Matrix.zeros(2, 3))


def test_transpose_examples():
    assert transpose(Gf2Matrix.identity(4)) == Gf2Matrix.identity(4)
    column = transpose(Gf2Matrix.from_bits([[1] * 5]))
    assert column.shape == (5, 1)
    assert column.to_array().sum() == 5


def test_principal_submatrix_examples():
    assert principal_submatrix(Gf2Matrix.identity(4), {2}) == Gf2Matrix.identity(3)
    m = Gf2Matrix.from_strings(["110", "101", "011"])
    assert principal_submatrix(m, set()) == m
    assert principal_submatrix(m, {1, 2, 3}).shape == (0, 0)


def test_principal_submatrix_out_of_range():
    with pytest.raises(DimensionMismatchError):
        principal_submatrix(Gf2Matrix.identity(3), {4})
    with pytest.raises(DimensionMismatchError):
        principal_submatrix(Gf2Matrix.identity(3), {0})


def test_rejects_non_binary_entries():
    with pytest.raises(LCDToolkitError):
        Gf2Matrix.from_bits([[0, 2]])


def test_rows_longer_than_one_word():
    bits = np.zeros((3, 130), dtype=np.uint8)
    bits[0, [0, 64, 129]] = 1
    bits[1, [63, 64]] = 1
    bits[2, [0, 63]] = 1
    m = Gf2Matrix.from_bits(bits)
    assert np.array_equal(m.to_array(), bits)
    assert m.row(0).weight() == 3
    assert m.rank() == 3
    assert m.transpose().transpose() == m


def test_vector_basics():
    u = Gf2Vector.from_string("10110")
    v = Gf2Vector.from_string("01100")
    assert u.weight() == 3
    assert str(u + v) == "11010"
    assert u.dot(v) == 1
    assert u[0] == 1 and u[1] == 0
    assert Gf2Vector.ones(70).weight() == 70
    assert Gf2Vector.zeros(5).weight() == 0


def test_vector_length_mismatch():
    with pytest.raises(DimensionMismatchError):
        Gf2Vector.from_string("101") + Gf2Vector.from_string("10")


def test_popcount_array_matches_python():
    values = np.array([0, 1, 3, 255, 2 ** 63, 2 ** 64 - 1, 0x5555], dtype=np.uint64)
    assert list(popcount_array(values)) == [bin(int(v)).count("1") for v in values]


def test_column_values_roundtrip():
    m = Gf2Matrix.from_column_values([1, 6, 7, 0], 3)
    assert m.to_strings() == ["1010", "0110", "0110"]
    assert m.column_values() == [1, 6, 7, 0]


@given(bit_matrices(), st.data())
def test_mul_matches_reference(a, data):
    inner = len(a[0])
    cols = data.draw(st.integers(1, 8))
    b = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=inner, max_size=inner))
    product = mul(Gf2Matrix.from_bits(a), Gf2Matrix.from_bits(b))
    assert np.array_equal(product.to_array(), reference_product(a, b))


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.data())
def test_mul_associative_and_distributive(p, q, r, s, data):
    def draw(rows, cols):
        bits = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
        return Gf2Matrix.from_bits(bits)

    a, b, c = draw(p, q), draw(q, r), draw(r, s)
    assert (a @ b) @ c == a @ (b @ c)
    b2 = draw(q, r)
    assert a @ (b + b2) == a @ b + a @ b2


@given(bit_matrices())
def test_transpose_is_involution(bits):
    m = Gf2Matrix.from_bits(bits)
    assert m.transpose().transpose() == m


@given(bit_matrices(max_rows=10, max_cols=10))
def test_rank_bounds(bits):
    m = Gf2Matrix.from_bits(bits)
    assert 0 <= m.rank() <= min(m.rows, m.cols)
    assert m.rank() == rank_of_row_ints(m.row_ints())


@given(square_matrices())
def test_det_iff_full_rank(bits):
    m = Gf2Matrix.from_bits(bits)
    assert (det(m) == 1) == (rank(m) == m.rows)


@given(square_matrices(max_order=5))
def test_det_matches_integer_determinant(bits):
    assert det(Gf2Matrix.from_bits(bits)) == int(sympy.Matrix(bits).det()) % 2


@given(square_matrices(max_order=8), st.data())
def test_principal_submatrices_of_symmetric_stay_symmetric(bits, data):
    m = Gf2Matrix.from_bits(bits)
    symmetric = m + m.transpose()
    removed = data.draw(st.sets(st.integers(1, m.rows)))
    assert symmetric.principal_submatrix(removed).is_symmetric()


@given(st.lists(st.integers(0, 1), min_size=1, max_size=150), st.data())
def test_weight_of_sum(bits_u, data):
    bits_v = data.draw(st.lists(st.integers(0, 1), min_size=len(bits_u), max_size=len(bits_u)))
    u, v = Gf2Vector.from_bits(bits_u), Gf2Vector.from_bits(bits_v)
    assert (u + v).weight() == u.weight() + v.weight() - 2 * (u & v).weight()


def test_rank_does_not_mutate_input():
    m = Gf2Matrix.from_strings(["11", "11"])
    before = m.words.copy()
    m.rank()
    assert np.array_equal(m.words, before)


@settings(max_examples=30)
@given(st.integers(1, 7), st.integers(1, 9), st.integers(0, 2 ** 16))
def test_batch_rank_matches_single_rank(rows, cols, seed):
    rng = np.random.default_rng(seed)
    stack = rng.integers(0, 2, size=(20, rows, cols), dtype=np.uint8)
    expected = [Gf2Matrix.from_bits(m).rank() for m in stack]
    assert list(batch_rank(stack)) == expected
