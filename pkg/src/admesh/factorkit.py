"""Dense complex factorizations with deterministic pivoting.

Householder QR (thin, sign-normalized), Householder QR with column pivoting,
LU with partial row pivoting, back substitution and the induced infinity
norm. Matrices are plain 2-D numpy arrays.

Pivot ties are resolved toward the lowest index. Two candidates count as
tied when their magnitudes agree to ``PIVOT_TIE_RTOL`` relative, so that
mathematically equal pivots (symmetric point sets) do not get decided by
rounding noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError

RANK_RTOL = 1e-13
EARLY_STOP_RTOL = 1e-15
PIVOT_TIE_RTOL = 1e-12


def as_matrix(A) -> np.ndarray:
    """Copy ``A`` into a complex 2-D array, rejecting non-finite entries."""
    M = np.array(A, dtype=complex, copy=True)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def argmax_lowest(values: np.ndarray, rtol: float = PIVOT_TIE_RTOL) -> int:
    """Index of the maximum of ``values``; near-ties go to the lowest index."""
    vmax = values.max()
    return int(np.flatnonzero(values >= vmax * (1.0 - rtol))[0])


def _reflector(x: np.ndarray):
    """Householder vector ``v`` (unit norm) and ``alpha`` with ``(I - 2vv^H)x = alpha e_1``."""
    norm = np.linalg.norm(x)
    if norm == 0.0:
        return None, 0.0
    x0 = x[0]
    phase = x0 / abs(x0) if x0 != 0 else 1.0
    alpha = -phase * norm
    v = x.copy()
    v[0] -= alpha
    v /= np.linalg.norm(v)
    return v, alpha


def _accumulate_q(vs, rows: int, cols: int) -> np.ndarray:
    """Thin ``Q`` (rows x cols) from the stored reflectors."""
    Q = np.zeros((rows, cols), dtype=complex)
    Q[np.arange(cols), np.arange(cols)] = 1.0
    for k in range(len(vs) - 1, -1, -1):
        v = vs[k]
        if v is None:
            continue
        Q[k:, :] -= 2.0 * np.outer(v, v.conj() @ Q[k:, :])
    return Q


def qr_householder(A):
    """Thin QR factorization ``A = Q R`` with ``diag(R)`` real positive.

    Parameters
    ----------
    A : array_like, shape (M, c), M >= c

    Returns
    -------
    Q : ndarray, shape (M, c)
        Orthonormal columns.
    R : ndarray, shape (c, c)
        Upper triangular with real positive diagonal.

    Raises
    ------
    SingularMatrixError
        If ``|R[k, k]| < 1e-13 |R[0, 0]|``; ``index`` is ``k``.
    """
    A = as_matrix(A)
    rows, cols = A.shape
    if rows < cols:
        raise ValueError(f"qr_householder needs rows >= cols, got {A.shape}")
    vs = []
    for k in range(cols):
        v, alpha = _reflector(A[k:, k])
        vs.append(v)
        if v is not None:
            A[k:, k:] -= 2.0 * np.outer(v, v.conj() @ A[k:, k:])
        A[k, k] = alpha
        A[k + 1:, k] = 0.0
    R = np.triu(A[:cols, :])
    d = np.abs(np.diag(R))
    for k in range(cols):
        if d[k] < RANK_RTOL * d[0] or d[0] == 0.0:
            raise SingularMatrixError(
                f"matrix is numerically rank deficient at column {k} "
                f"(|R_kk| = {d[k]:.3e}, |R_00| = {d[0]:.3e})", k)
    Q = _accumulate_q(vs, rows, cols)
    phase = np.diag(R) / d
    R = phase.conj()[:, None] * R
    Q = Q * phase[None, :]
    R[np.arange(cols), np.arange(cols)] = d
    return Q, R


@dataclass(frozen=True, eq=False)
class PivotedQR:
    """``A[:, perm] = Q R`` with ``Q`` (rows x rank) and ``R`` (rank x cols).

    ``rank`` is below ``min(rows, cols)`` when the pivoting stopped early
    because every remaining column was negligible.
    """

    Q: np.ndarray
    R: np.ndarray
    perm: np.ndarray
    rank: int


def qr_column_pivot(A) -> PivotedQR:
    """Householder QR with greedy column pivoting.

    Step ``k`` moves the remaining column of largest residual 2-norm into
    position ``k``; ties go to the lowest original column index. Stops
    early once every residual norm is below ``1e-15`` times the largest
    initial column norm.
    """
    A = as_matrix(A)
    rows, cols = A.shape
    r = min(rows, cols)
    perm = np.arange(cols)
    vs = []
    initial = np.linalg.norm(A, axis=0).max()
    rank = r
    for k in range(r):
        res = np.linalg.norm(A[k:, k:], axis=0)
        if initial == 0.0 or res.max() <= EARLY_STOP_RTOL * initial:
            rank = k
            break
        # tie-break on original indices: among near-maximal residuals take the lowest perm entry
        cand = np.flatnonzero(res >= res.max() * (1.0 - PIVOT_TIE_RTOL))
        j = k + int(cand[np.argmin(perm[k + cand])])
        if j != k:
            A[:, [k, j]] = A[:, [j, k]]
            perm[[k, j]] = perm[[j, k]]
        v, alpha = _reflector(A[k:, k])
        vs.append(v)
        A[k:, k:] -= 2.0 * np.outer(v, v.conj() @ A[k:, k:])
        A[k, k] = alpha
        A[k + 1:, k] = 0.0
    R = np.triu(A[:rank, :])
    Q = _accumulate_q(vs, rows, rank)
    return PivotedQR(Q, R, perm, rank)


@dataclass(frozen=True, eq=False)
class PivotedLU:
    """``A[perm[:rows]] = L U`` with ``L`` unit lower trapezoidal (rows x c)."""

    L: np.ndarray
    U: np.ndarray
    perm: np.ndarray


def lu_row_pivot(A) -> PivotedLU:
    """Gaussian elimination with partial (row) pivoting on a tall matrix.

    The pivot in column ``k`` is the remaining row of largest modulus,
    ties to the lowest original row index. ``perm[:c]`` lists the selected
    pivot rows in order.

    Raises
    ------
    SingularMatrixError
        When an entire pivot column is exactly zero (``index`` = column).
    """
    A = as_matrix(A)
    rows, cols = A.shape
    if rows < cols:
        raise ValueError(f"lu_row_pivot needs rows >= cols, got {A.shape}")
    perm = np.arange(rows)
    for k in range(cols):
        mag = np.abs(A[k:, k])
        if mag.max() == 0.0:
            raise SingularMatrixError(f"zero pivot column {k}", k)
        cand = np.flatnonzero(mag >= mag.max() * (1.0 - PIVOT_TIE_RTOL))
        p = k + int(cand[np.argmin(perm[k + cand])])
        if p != k:
            A[[k, p], :] = A[[p, k], :]
            perm[[k, p]] = perm[[p, k]]
        A[k + 1:, k] /= A[k, k]
        A[k + 1:, k + 1:] -= np.outer(A[k + 1:, k], A[k, k + 1:])
    L = np.tril(A, -1)
    L[np.arange(cols), np.arange(cols)] = 1.0
    U = np.triu(A[:cols, :])
    return PivotedLU(L, U, perm)


def solve_upper(R, B) -> np.ndarray:
    """Back substitution for ``R X = B`` with ``R`` upper triangular."""
    R = np.asarray(R)
    B = np.asarray(B)
    vector = B.ndim == 1
    X = np.array(B.reshape(len(B), -1), dtype=np.result_type(R, B, float), copy=True)
    n = R.shape[0]
    if R.shape != (n, n) or X.shape[0] != n:
        raise ValueError(f"shape mismatch: R {R.shape}, B {B.shape}")
    diag = np.diag(R)
    zero = np.flatnonzero(diag == 0)
    if len(zero):
        raise SingularMatrixError(f"zero diagonal entry at {zero[0]}", int(zero[0]))
    for k in range(n - 1, -1, -1):
        if k + 1 < n:
            X[k] -= R[k, k + 1:] @ X[k + 1:]
        X[k] /= diag[k]
    return X[:, 0] if vector else X


def inf_norm_rows(A) -> float:
    """Induced infinity norm: max over rows of the sum of moduli."""
    A = np.asarray(A)
    if A.ndim == 1:
        A = A[None, :]
    return float(np.abs(A).sum(axis=1).max())
