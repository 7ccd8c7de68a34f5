"""Shifted-scaled polynomial basis and its discrete orthonormalization.

The reference basis is ``q_j(z) = ((z - z_b) / delta) ** (j - 1)``,
``j = 1..n+1``, with ``z_b`` the barycenter of a point cloud and ``delta`` its
largest distance from ``z_b``. :func:`orthonormalize` produces polynomials
``pi_1..pi_{n+1}`` spanning the same nested spaces, orthonormal for the
discrete inner product on the source points.

Two routes are available:

``"arnoldi"`` (default)
    Gram-Schmidt (two passes) on the Krylov sequence ``w * pi_k``,
    ``w = (z - z_b)/delta``. Evaluation at new points replays the stored
    Hessenberg recurrence, so the monomial Vandermonde, whose condition
    number reaches ~1e15 on some domains at degree 50, is never formed.
``"householder"``
    Householder QR of the monomial Vandermonde ``V = Q R``, repeated once
    when ``V R^-1`` has lost orthogonality; ``pi = q R^-1`` with ``R^-1``
    stored explicitly. Fine for moderate degrees; used as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, RankDeficiencyError, SingularMatrixError
from .factorkit import RANK_RTOL, qr_householder, solve_upper

ARNOLDI = "arnoldi"
HOUSEHOLDER = "householder"
REORTH_TOL = 1e-10


@dataclass(frozen=True)
class BasisSpec:
    """Barycenter ``z_b``, scale ``delta > 0`` and degree ``n``."""

    z_b: complex
    delta: float
    n: int

    def __post_init__(self):
        if not self.delta > 0:
            raise GeometryError(f"basis scale delta must be positive, got {self.delta!r}")
        if self.n < 0:
            raise ValueError(f"degree must be >= 0, got {self.n}")

    def scaled(self, z) -> np.ndarray:
        return (np.asarray(z, dtype=complex) - self.z_b) / self.delta


def basis_spec(points, n: int) -> BasisSpec:
    """Barycenter and max-distance scale of ``points``.

    Degree 0 needs no scale; a single point (or identical points) is then
    accepted with ``delta = 1``.
    """
    z = np.asarray(points, dtype=complex).ravel()
    if len(z) == 0:
        raise GeometryError("basis_spec needs at least one point")
    z_b = complex(z.mean())
    delta = float(np.abs(z - z_b).max())
    if delta == 0.0:
        if n >= 1:
            raise GeometryError("degenerate geometry: all points coincide (delta = 0)")
        delta = 1.0
    return BasisSpec(z_b, delta, int(n))


def vandermonde(points, spec: BasisSpec) -> np.ndarray:
    """``M x (n+1)`` matrix with entries ``q_j(z_i)`` (successive powers)."""
    w = spec.scaled(np.ravel(points))
    V = np.empty((len(w), spec.n + 1), dtype=complex)
    V[:, 0] = 1.0
    for j in range(1, spec.n + 1):
        V[:, j] = V[:, j - 1] * w
    return V


@dataclass(frozen=True, eq=False)
class OrthoBasis:
    """Polynomials ``pi_1..pi_{n+1}`` orthonormal on ``source_points``.

    Evaluate with :meth:`evaluate`. For the Arnoldi route the recurrence is
    kept in ``h1``/``h2`` (projection coefficients of the two Gram-Schmidt
    passes) and ``beta`` (normalizations); for the Householder route
    ``r_inv_stages`` holds the inverse triangular factors of each pass.
    """

    spec: BasisSpec
    method: str
    source_points: np.ndarray
    weights: np.ndarray
    pi0: float
    h1: tuple = ()
    h2: tuple = ()
    beta: tuple = ()
    r_inv_stages: tuple = ()

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def dim(self) -> int:
        return self.spec.n + 1

    @property
    def r_inv(self) -> np.ndarray:
        """Upper triangular ``R^-1`` with ``[pi] = [q] R^-1``.

        Explicit for the Householder route; for the Arnoldi route it is
        recovered from ``R = W^H diag(w) V`` on the source points, which is
        only trustworthy while the monomial Vandermonde is well conditioned.
        """
        if self.method == HOUSEHOLDER:
            out = self.r_inv_stages[0]
            for stage in self.r_inv_stages[1:]:
                out = out @ stage
            return out
        W = self.evaluate(self.source_points)
        V = vandermonde(self.source_points, self.spec)
        R = np.triu(W.conj().T @ (self.weights[:, None] * V))
        return solve_upper(R, np.eye(self.dim))

    def evaluate(self, z) -> np.ndarray:
        """Values ``pi_k(z_i)`` as an ``(len(z), n+1)`` array."""
        z = np.ravel(np.asarray(z, dtype=complex))
        if self.method == HOUSEHOLDER:
            P = vandermonde(z, self.spec)
            for stage in self.r_inv_stages:
                P = P @ stage
            return P
        w = self.spec.scaled(z)
        P = np.empty((len(z), self.dim), dtype=complex)
        P[:, 0] = self.pi0
        for k in range(self.spec.n):
            v = w * P[:, k]
            v = v - P[:, :k + 1] @ self.h1[k]
            v = v - P[:, :k + 1] @ self.h2[k]
            P[:, k + 1] = v / self.beta[k]
        return P

    def gram_error(self) -> float:
        """``max |W^H diag(w) W - I|`` on the source points."""
        W = self.evaluate(self.source_points)
        G = W.conj().T @ (self.weights[:, None] * W)
        return float(np.abs(G - np.eye(self.dim)).max())


def _arnoldi(points, spec, weights) -> OrthoBasis:
    w = spec.scaled(points)
    sw = np.sqrt(weights)
    total = float(weights.sum())
    pi0 = 1.0 / math.sqrt(total)
    # Q holds sqrt(weights) * pi_k(points): orthonormal columns in the plain inner product
    Q = np.empty((len(points), spec.n + 1), dtype=complex)
    Q[:, 0] = sw * pi0
    h1, h2, beta = [], [], []
    for k in range(spec.n):
        v = w * Q[:, k]
        scale = float(np.linalg.norm(v))
        a = Q[:, :k + 1].conj().T @ v
        v = v - Q[:, :k + 1] @ a
        b = Q[:, :k + 1].conj().T @ v
        v = v - Q[:, :k + 1] @ b
        nrm = float(np.linalg.norm(v))
        if nrm == 0.0 or nrm < RANK_RTOL * scale:
            raise RankDeficiencyError(
                f"orthonormalization lost rank at degree {k + 1}: the point set does not "
                f"determine polynomials of this degree in double precision", k + 1)
        h1.append(a)
        h2.append(b)
        beta.append(nrm)
        Q[:, k + 1] = v / nrm
    return OrthoBasis(spec, ARNOLDI, points, weights, pi0,
                      tuple(h1), tuple(h2), tuple(beta))


def _householder(points, spec, weights) -> OrthoBasis:
    sw = np.sqrt(weights)
    V = sw[:, None] * vandermonde(points, spec)
    stages = []
    W = V
    for _ in range(2):
        try:
            _, R = qr_householder(W)
        except SingularMatrixError as exc:
            raise RankDeficiencyError(
                f"orthonormalization lost rank at degree {exc.index}: the point set does not "
                f"determine polynomials of this degree in double precision", exc.index) from exc
        R_inv = solve_upper(R, np.eye(spec.n + 1))
        stages.append(R_inv)
        W = W @ R_inv
        if np.abs(W.conj().T @ W - np.eye(spec.n + 1)).max() <= REORTH_TOL:
            break
    return OrthoBasis(spec, HOUSEHOLDER, points, weights, 1.0, r_inv_stages=tuple(stages))


def orthonormalize(points, n: int, weights=None, method: str = ARNOLDI,
                   spec: BasisSpec | None = None) -> OrthoBasis:
    """Discretely orthonormal basis of degree ``n`` on ``points``.

    Parameters
    ----------
    points : array_like of complex
        Source points; at least ``n + 1`` of them, distinct.
    n : int
        Degree.
    weights : array_like, optional
        Positive weights of the discrete inner product (default all ones).
    method : {"arnoldi", "householder"}
    spec : BasisSpec, optional
        Override the barycenter/scale derived from ``points``.

    Raises
    ------
    RankDeficiencyError
        When the points cannot carry degree ``n`` in double precision;
        ``degree`` names the first failing degree.
    """
    z = np.ravel(np.asarray(points, dtype=complex)).copy()
    z.setflags(write=False)
    if len(z) < n + 1:
        raise RankDeficiencyError(
            f"{len(z)} points cannot determine polynomials of degree {n}", len(z))
    if weights is None:
        wts = np.ones(len(z))
    else:
        wts = np.asarray(weights, dtype=float).ravel().copy()
        if wts.shape != z.shape or np.any(~(wts > 0)):
            raise ValueError("weights must be positive and aligned with the points")
    wts.setflags(write=False)
    if spec is None:
        spec = basis_spec(z, n)
    elif spec.n != n:
        spec = BasisSpec(spec.z_b, spec.delta, n)
    if method == ARNOLDI:
        return _arnoldi(z, spec, wts)
    if method == HOUSEHOLDER:
        return _householder(z, spec, wts)
    raise ValueError(f"unknown orthonormalization method {method!r}")
