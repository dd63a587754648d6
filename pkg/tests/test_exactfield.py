import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tatebetti.exactfield import PrimeField, is_prime

from oracles import kernel_count, rank_mod_p

F5 = PrimeField(5)
F101 = PrimeField(101)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p", [0, 1, 4, 100, 2**31 + 11])
def test_field_rejects_bad_modulus(p):
    with pytest.raises(ValueError):
        PrimeField(p)


def test_rref_identity():
    R, piv = F5.rref(np.eye(2, dtype=np.int64))
    assert R.tolist() == [[1, 0], [0, 1]] and piv == [0, 1]


def test_rref_already_reduced():
    R, piv = F5.rref([[1, 1]])
    assert R.tolist() == [[1, 1]] and piv == [0]


def test_rref_hand_example():
    # 2*3 = 6 = 1 mod 5 scales row 0 to (1, 2); row 1 becomes zero
    R, piv = F5.rref([[2, 4], [1, 2]])
    assert R.tolist() == [[1, 2], [0, 0]] and piv == [0]


def test_kernel_examples():
    assert F5.kernel(np.eye(3, dtype=np.int64)).shape == (3, 0)
    assert F5.kernel(np.zeros((2, 3), dtype=np.int64)).shape == (3, 3)
    K = F5.kernel([[1, 1]])
    assert K.shape == (2, 1)
    v = K[:, 0]
    assert (v[1] * pow(int(v[0]), -1, 5)) % 5 == 4


def test_solve_examples():
    B = np.array([[3, 1], [4, 0]])
    assert np.array_equal(F5.solve(np.eye(2, dtype=np.int64), B), B)
    assert F5.solve(np.zeros((1, 1), dtype=np.int64), [[1]]) is None
    assert F5.solve([[2]], [[3]]).tolist() == [[4]]


def test_solve_row_mismatch():
    with pytest.raises(ValueError):
        F5.solve(np.eye(2, dtype=np.int64), np.zeros((3, 1), dtype=np.int64))


def test_inverse():
    A = np.array([[1, 2], [3, 4]])
    Ainv = F101.inv(A)
    assert np.array_equal(F101.matmul(A, Ainv), np.eye(2, dtype=np.int64))
    with pytest.raises(ZeroDivisionError):
        F101.inv([[1, 2], [2, 4]])


def test_matmul_large_entries_exact():
    p = 2_147_483_647
    F = PrimeField(p)
    rng = np.random.default_rng(3)
    A = rng.integers(0, p, size=(4, 7))
    B = rng.integers(0, p, size=(7, 3))
    expected = [[sum(int(A[i, k]) * int(B[k, j]) for k in range(7)) % p for j in range(3)] for i in range(4)]
    assert F.matmul(A, B).tolist() == expected


small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 100), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_kernel_invariants(rows):
    A = np.array(rows, dtype=np.int64)
    K = F101.kernel(A)
    assert not F101.matmul(A, K).any()
    assert F101.rank(A) + K.shape[1] == A.shape[1]
    assert F101.rank(A) == rank_mod_p(rows, 101)
    K2, free = F101.kernel_with_free(A)
    assert np.array_equal(K2, K) and np.array_equal(K[free], np.eye(len(free), dtype=np.int64))


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rref_idempotent(rows):
    R, piv = F101.rref(rows)
    R2, piv2 = F101.rref(R)
    assert np.array_equal(R, R2) and piv == piv2
    assert piv == sorted(piv) and len(piv) == F101.rank(rows)


@settings(max_examples=60, deadline=None)
@given(small_matrices, st.integers(1, 3), st.integers(0, 2**32))
def test_solve_soundness(rows, k, seed):
    A = np.array(rows, dtype=np.int64)
    rng = np.random.default_rng(seed)
    X0 = rng.integers(0, 101, size=(A.shape[1], k))
    B = F101.matmul(A, X0)
    X = F101.solve(A, B)
    assert X is not None and np.array_equal(F101.matmul(A, X), B)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32))
def test_kernel_dimension_matches_enumeration(r, c, seed):
    rows = np.random.default_rng(seed).integers(0, 3, size=(r, c)).tolist()
    F3 = PrimeField(3)
    assert 3 ** F3.kernel(rows).shape[1] == kernel_count(rows, 3)
