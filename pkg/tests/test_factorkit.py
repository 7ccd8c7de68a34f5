import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from admesh.errors import SingularMatrixError
from admesh.factorkit import (
    inf_norm_rows, lu_row_pivot, qr_column_pivot, qr_householder, solve_upper,
)


def crandn(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def rel_inf(A, B):
    return np.abs(A - B).sum(1).max() / np.abs(B).sum(1).max()


# --- Householder QR ---------------------------------------------------------

def test_qr_identity():
    Q, R = qr_householder(np.eye(2))
    assert np.allclose(Q, np.eye(2), atol=1e-15) and np.allclose(R, np.eye(2), atol=1e-15)


def test_qr_single_column():
    Q, R = qr_householder([[3.0], [4.0]])
    assert R[0, 0] == pytest.approx(5.0, rel=1e-15)
    assert np.allclose(Q[:, 0], [0.6, 0.8], atol=1e-15)


def test_qr_random_reconstruction():
    rng = np.random.default_rng(1)
    A = crandn(rng, 50, 11)
    Q, R = qr_householder(A)
    assert rel_inf(Q @ R, A) <= 1e-12
    assert np.abs(Q.conj().T @ Q - np.eye(11)).max() <= 1e-12
    assert np.all(np.diag(R).imag == 0) and np.all(np.diag(R).real > 0)
    assert np.allclose(np.tril(R, -1), 0)
    # same R as LAPACK up to the diagonal phase convention
    _, R_np = np.linalg.qr(A)
    assert np.allclose(np.abs(np.diag(R_np)), np.diag(R).real, rtol=1e-12)


def test_qr_rank_deficient():
    rng = np.random.default_rng(2)
    a = crandn(rng, 8, 1)
    A = np.hstack([a, crandn(rng, 8, 1), 2 * a])
    with pytest.raises(SingularMatrixError) as info:
        qr_householder(A)
    assert info.value.index == 2


def test_qr_seeded_batch():
    rng = np.random.default_rng(3)
    for _ in range(200):
        cols = int(rng.integers(1, 61))
        rows = int(rng.integers(cols, 501))
        A = crandn(rng, rows, cols)
        Q, R = qr_householder(A)
        assert rel_inf(Q @ R, A) <= 1e-10
        assert np.abs(Q.conj().T @ Q - np.eye(cols)).max() <= 1e-12


# --- pivoted QR ----------------------------------------------------------------

def test_qrcp_first_pivot_is_largest_column():
    A = np.zeros((3, 3))
    A[0, 0], A[1, 1], A[2, 2] = 1, 3, 2
    assert qr_column_pivot(A).perm[0] == 1


def test_qrcp_identity_ties():
    assert list(qr_column_pivot(np.eye(3)).perm) == [0, 1, 2]


def test_qrcp_random_invariants():
    rng = np.random.default_rng(4)
    A = crandn(rng, 30, 5)
    f = qr_column_pivot(A)
    d = np.abs(np.diag(f.R))
    assert f.rank == 5
    assert np.all(np.diff(d) <= 1e-12 * d[0])
    assert rel_inf(f.Q @ f.R, A[:, f.perm]) <= 1e-10


def test_qrcp_wide_matrix():
    rng = np.random.default_rng(5)
    A = crandn(rng, 6, 40)
    f = qr_column_pivot(A)
    assert f.Q.shape == (6, 6) and f.R.shape == (6, 40)
    assert rel_inf(f.Q @ f.R, A[:, f.perm]) <= 1e-12
    # greedy: the second pivot maximizes the residual norm after removing the first
    q = A[:, f.perm[0]] / np.linalg.norm(A[:, f.perm[0]])
    res = np.linalg.norm(A - np.outer(q, q.conj() @ A), axis=0)
    assert f.perm[1] == int(np.argmax(res))


def test_qrcp_duplicate_columns():
    rng = np.random.default_rng(6)
    B = crandn(rng, 10, 4)
    A = np.hstack([B, B[:, :1] * 1.0])            # column 4 duplicates column 0
    f = qr_column_pivot(A)
    first4 = set(f.perm[:4].tolist())
    assert not ({0, 4} <= first4)                  # never both copies among the independent pivots
    assert f.rank == 4


def test_qrcp_early_stop_reports_rank():
    rng = np.random.default_rng(7)
    B = crandn(rng, 8, 2)
    A = B @ crandn(rng, 2, 6)
    f = qr_column_pivot(A)
    assert f.rank == 2


# --- LU ---------------------------------------------------------------------------

def test_lu_swap():
    f = lu_row_pivot([[0, 1], [1, 0]])
    assert list(f.perm[:2]) == [1, 0]
    assert np.allclose(f.U, np.eye(2)) and np.allclose(f.L, np.eye(2))


def test_lu_identity():
    f = lu_row_pivot(np.eye(3))
    assert list(f.perm) == [0, 1, 2]
    assert np.allclose(f.L, np.eye(3)) and np.allclose(f.U, np.eye(3))


def test_lu_random():
    rng = np.random.default_rng(8)
    A = crandn(rng, 40, 8)
    f = lu_row_pivot(A)
    assert rel_inf(f.L @ f.U, A[f.perm]) <= 1e-12
    assert np.abs(f.L).max() <= 1 + 1e-12
    assert np.all(np.diag(f.L) == 1)


def test_lu_zero_column():
    with pytest.raises(SingularMatrixError) as info:
        lu_row_pivot([[1, 2, 0], [3, 6, 0], [1, 1, 0]])
    assert info.value.index == 2


def test_lu_seeded_batch():
    rng = np.random.default_rng(9)
    for _ in range(200):
        cols = int(rng.integers(1, 61))
        rows = int(rng.integers(cols, 501))
        A = crandn(rng, rows, cols)
        f = lu_row_pivot(A)
        assert rel_inf(f.L @ f.U, A[f.perm]) <= 1e-10
        assert np.abs(f.L).max() <= 1 + 1e-12


@settings(max_examples=60, deadline=None)
@given(rows=st.integers(1, 40), cols=st.integers(1, 12), seed=st.integers(0, 2**20))
def test_factorizations_deterministic(rows, cols, seed):
    rng = np.random.default_rng(seed)
    A = crandn(rng, max(rows, cols), cols)
    for fn in (qr_column_pivot, lu_row_pivot):
        a, b = fn(A), fn(A.copy())
        assert np.array_equal(a.perm, b.perm)
    Q1, R1 = qr_householder(A)
    Q2, R2 = qr_householder(A.copy())
    assert np.array_equal(R1, R2) and np.array_equal(Q1, Q2)


# --- triangular solve and norms ----------------------------------------------

def test_solve_upper_diag():
    assert np.allclose(solve_upper(np.diag([2.0, 4.0]), np.array([2.0, 8.0])), [1, 2])


def test_solve_upper_random():
    rng = np.random.default_rng(10)
    R = np.triu(crandn(rng, 12, 12)) + 5 * np.eye(12)
    B = crandn(rng, 12, 3)
    X = solve_upper(R, B)
    assert np.abs(R @ X - B).max() <= 1e-10 * np.abs(B).max()


def test_solve_upper_singular():
    with pytest.raises(SingularMatrixError):
        solve_upper(np.array([[1.0, 2.0], [0.0, 0.0]]), np.ones(2))


def test_inf_norm_rows():
    assert inf_norm_rows([[1, -2], [3, 4]]) == 7
    assert inf_norm_rows([[1j, 1]]) == 2
