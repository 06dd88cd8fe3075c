from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pathcoherence.gf2 import (
    AffineMap,
    BitMatrix,
    BitVector,
    generalized_inverse,
    inverse,
    is_invertible,
    kernel_basis,
    random_invertible,
    random_matrix,
    rank,
    rref,
    solve_affine,
)

from conftest import all_bitvectors, bit_matrices, brute_rank


def test_bitvector_string_roundtrip():
    v = BitVector.from_str("1101")
    assert list(v) == [1, 1, 0, 1]
    assert str(v) == "1101"
    assert v.popcount() == 3
    with pytest.raises(ValueError):
        BitVector.from_str("10a")


def test_bitvector_words_little_endian():
    v = BitVector(70, (1 << 69) | 5)
    assert v.words == [5, 1 << 5]


def test_bitvector_rejects_overflow():
    with pytest.raises(ValueError):
        BitVector(2, 4)


@given(st.integers(0, 40), st.data())
def test_dot_matches_numpy(n, data):
    a = BitVector(n, data.draw(st.integers(0, (1 << n) - 1)))
    b = BitVector(n, data.draw(st.integers(0, (1 << n) - 1)))
    assert a.dot(b) == int(a.to_array().astype(int) @ b.to_array().astype(int)) % 2


@given(bit_matrices(), st.data())
def test_matmul_matches_numpy(m, data):
    k = data.draw(st.integers(1, 6))
    other = BitMatrix(m.cols, k, tuple(data.draw(st.integers(0, (1 << k) - 1)) for _ in range(m.cols)))
    expect = (m.to_array().astype(int) @ other.to_array().astype(int)) % 2
    assert np.array_equal((m @ other).to_array(), expect)


@given(bit_matrices())
def test_transpose_involution(m):
    assert m.T.T == m
    assert np.array_equal(m.T.to_array(), m.to_array().T)


@given(bit_matrices())
def test_rank_matches_span_enumeration(m):
    assert rank(m) == brute_rank(m) == brute_rank(m.T)


@given(bit_matrices())
def test_rref_transform(m):
    rows, pivots, transform = rref(m)
    assert len(pivots) == rank(m)
    p = BitMatrix(m.rows, m.rows, tuple(transform))
    assert (p @ m).data == tuple(rows)
    assert is_invertible(p)


@given(bit_matrices())
def test_generalized_inverse_identity(m):
    g = generalized_inverse(m)
    assert g.shape == (m.cols, m.rows)
    assert m @ g @ m == m


@given(bit_matrices())
def test_kernel_basis(m):
    basis = kernel_basis(m)
    assert len(basis) == m.cols - rank(m)
    for v in basis:
        assert (m @ v).bits == 0
    if basis:
        assert rank(BitMatrix(len(basis), m.cols, tuple(v.bits for v in basis))) == len(basis)


@given(bit_matrices(max_rows=5, max_cols=5), st.data())
def test_solve_affine_agrees_with_enumeration(m, data):
    rhs = BitVector(m.rows, data.draw(st.integers(0, (1 << m.rows) - 1)))
    solutions = [x for x in all_bitvectors(m.cols) if m @ x == rhs]
    got = solve_affine(m, rhs)
    if not solutions:
        assert got is None
    else:
        assert m @ got == rhs
        assert len(solutions) == 2 ** (m.cols - rank(m))


def test_identity_and_inverse(rng):
    for n in range(1, 9):
        m = random_invertible(n, rng)
        assert m @ inverse(m) == BitMatrix.identity(n)
        assert inverse(m) @ m == BitMatrix.identity(n)


def test_inverse_rejects_singular():
    with pytest.raises(ValueError):
        inverse(BitMatrix.from_rows(["11", "11"]))


def test_random_invertible_uniform_on_gl2(rng):
    # |GL_2(F_2)| = 6; chi-squared with 5 dof, 99.9% quantile is 20.5
    draws = 6000
    tally = Counter(random_invertible(2, rng).data for _ in range(draws))
    assert len(tally) == 6
    chi2 = sum((c - draws / 6) ** 2 / (draws / 6) for c in tally.values())
    assert chi2 < 20.5


def test_random_matrix_shape(rng):
    m = random_matrix(3, 70, rng)
    assert m.shape == (3, 70)
    assert all(r >> 70 == 0 for r in m.data)


def test_affine_map_compose():
    f = AffineMap(BitMatrix.from_rows(["11", "01"]), BitVector.from_str("10"))
    g = AffineMap(BitMatrix.from_rows(["01", "10"]), BitVector.from_str("01"))
    for v in all_bitvectors(2):
        assert g.compose(f).apply(v) == g.apply(f.apply(v))


def test_stack_and_select():
    a = BitMatrix.from_rows(["10", "01"])
    b = BitMatrix.from_rows(["1", "1"])
    ab = a.hstack(b)
    assert ab.to_strings() == ["101", "011"]
    assert ab.select_columns([2, 0]).to_strings() == ["11", "10"]
    assert a.vstack(a).rows == 4
