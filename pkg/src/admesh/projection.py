"""Interpolation and discrete least-squares projections, Lebesgue constants.

A projection ``L f(z) = sum_j f(xi_j) phi_j(z)`` is stored through a basis
``pi`` orthonormal on the sampling points ``xi_j`` (weights ``w_j``):
``phi_j(z) = w_j K(z, xi_j)`` with ``K(z, v) = sum_k pi_k(z) conj(pi_k(v))``.
For ``n + 1`` nodes this is Lagrange interpolation.

The Lebesgue constant on a mesh is computed as the infinity norm of
``W(Z) R^-1 Q^H diag(sqrt(w))``, where ``W`` is the working basis, and
``sqrt(w) W(Xi) = Q R``. The Lebesgue function on arbitrary points is
computed independently (Lagrange system solve / kernel sum), and
:func:`lebesgue_constant` reports both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebmesh import Mesh, norming_constant
from .errors import SingularMatrixError, UsageError
from .extremal import UNISOLVENCE_RTOL, NodeSet
from .factorkit import inf_norm_rows, qr_householder, solve_upper
from .vanderbasis import OrthoBasis, orthonormalize

INTERPOLATION = "interpolation"
LEAST_SQUARES = "least_squares"
FORMULA_RTOL = 1e-10
_BLOCK = 2048


@dataclass(frozen=True, eq=False)
class ProjectionOperator:
    """Linear projection onto polynomials of degree ``n``.

    ``working`` is the basis the operator is expressed in (normally the one
    orthonormal on the extraction mesh); ``Q, R`` factor
    ``sqrt(w) W(points) = Q R`` so that ``pi = W R^-1`` is orthonormal on
    ``(points, weights)``.
    """

    kind: str
    points: np.ndarray
    weights: np.ndarray
    n: int
    working: OrthoBasis
    Q: np.ndarray
    R: np.ndarray
    R_inv: np.ndarray
    boundary_label: str | None = None
    coefficients: np.ndarray | None = None

    def basis_values(self, z) -> np.ndarray:
        """``pi_k(z)``, orthonormal on the sampling points."""
        return self.working.evaluate(z) @ self.R_inv

    def cardinal(self, z) -> np.ndarray:
        """``phi_j(z)`` for every sampling point ``j`` (columns)."""
        return (self.working.evaluate(z) @ self.R_inv @ self.Q.conj().T) * np.sqrt(self.weights)

    def with_samples(self, samples) -> "ProjectionOperator":
        f = np.asarray(samples, dtype=complex).ravel()
        if f.shape != self.weights.shape:
            raise UsageError(f"expected {len(self.weights)} samples, got {f.size}")
        c = self.Q.conj().T @ (np.sqrt(self.weights) * f)
        return ProjectionOperator(self.kind, self.points, self.weights, self.n, self.working,
                                  self.Q, self.R, self.R_inv, self.boundary_label, c)

    def __call__(self, z):
        if self.coefficients is None:
            raise UsageError("operator has no samples; use with_samples() first")
        scalar = np.ndim(z) == 0
        out = self.basis_values(z) @ self.coefficients
        return complex(out[0]) if scalar else out.reshape(np.shape(z))


def _build(kind, points, weights, n, working, label, samples) -> ProjectionOperator:
    points = np.ravel(np.asarray(points, dtype=complex)).copy()
    weights = np.asarray(weights, dtype=float).ravel().copy()
    for arr in (points, weights):
        arr.setflags(write=False)
    A = np.sqrt(weights)[:, None] * working.evaluate(points)
    try:
        Q, R = qr_householder(A)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            f"sampling points are not unisolvent for degree {n} "
            f"(rank lost at column {exc.index})", exc.index) from exc
    d = np.diag(R).real
    if np.any(d < UNISOLVENCE_RTOL * d[0]):
        k = int(np.flatnonzero(d < UNISOLVENCE_RTOL * d[0])[0])
        raise SingularMatrixError(f"sampling points are not unisolvent for degree {n}", k)
    R_inv = solve_upper(R, np.eye(n + 1))
    op = ProjectionOperator(kind, points, weights, n, working, Q, R, R_inv, label)
    return op if samples is None else op.with_samples(samples)


def make_interpolant(nodes, samples=None, basis: OrthoBasis | None = None) -> ProjectionOperator:
    """Lagrange interpolation at ``nodes`` (a :class:`NodeSet` or point array).

    The working basis is ``basis``, else the basis attached to the node set,
    else one orthonormalized on the nodes themselves.
    """
    if isinstance(nodes, NodeSet):
        z, label = nodes.nodes, nodes.boundary_label
        basis = basis or nodes.basis
    else:
        z, label = np.ravel(np.asarray(nodes, dtype=complex)), None
    n = len(z) - 1
    if n < 0:
        raise UsageError("interpolation needs at least one node")
    if basis is None:
        basis = orthonormalize(z, n)
    if basis.n != n:
        raise UsageError(f"basis degree {basis.n} does not match {len(z)} nodes")
    return _build(INTERPOLATION, z, np.ones(len(z)), n, basis, label, samples)


def make_least_squares(mesh, samples=None, n: int | None = None, weights=None,
                       basis: OrthoBasis | None = None) -> ProjectionOperator:
    """Discrete (weighted) least squares of degree ``n`` on the points of ``mesh``.

    ``mesh`` may be a :class:`Mesh` (``n`` defaults to its degree) or a plain
    point array (``n`` required).
    """
    if isinstance(mesh, Mesh):
        z, label = mesh.points, mesh.boundary_label
        n = mesh.n if n is None else n
    else:
        z, label = np.ravel(np.asarray(mesh, dtype=complex)), None
        if n is None:
            raise UsageError("n is required when sampling on a bare point array")
    w = np.ones(len(z)) if weights is None else np.asarray(weights, dtype=float)
    if np.any(~(w > 0)):
        raise UsageError("least-squares weights must be positive")
    if basis is None:
        basis = orthonormalize(z, n, weights=w)
    if basis.n != n:
        raise UsageError(f"basis degree {basis.n} does not match n = {n}")
    return _build(LEAST_SQUARES, z, w, n, basis, label, samples)


def lebesgue_function(op: ProjectionOperator, z):
    """``lambda(z) = sum_j |phi_j(z)|`` evaluated directly.

    Interpolation solves the Lagrange system ``W(Xi)^T l(z) = W(z)^T``;
    least squares sums ``w_j |K(z, xi_j)|``. Neither touches ``Q``.
    """
    scalar = np.ndim(z) == 0
    zz = np.ravel(np.asarray(z, dtype=complex))
    out = np.empty(len(zz))
    if op.kind == INTERPOLATION:
        A = op.working.evaluate(op.points).T
        lu_solve = np.linalg.solve
        for s in range(0, len(zz), _BLOCK):
            ell = lu_solve(A, op.working.evaluate(zz[s:s + _BLOCK]).T)
            out[s:s + _BLOCK] = np.abs(ell).sum(axis=0)
    else:
        P_xi = op.basis_values(op.points)
        for s in range(0, len(zz), _BLOCK):
            K = op.basis_values(zz[s:s + _BLOCK]) @ P_xi.conj().T
            out[s:s + _BLOCK] = (np.abs(K) * op.weights).sum(axis=1)
    return float(out[0]) if scalar else out.reshape(np.shape(z))


def lebesgue_matrix_norm(op: ProjectionOperator, points) -> float:
    """``|| W(Z) R^-1 Q^H diag(sqrt(w)) ||_inf`` over ``points``."""
    z = np.ravel(np.asarray(points, dtype=complex))
    right = op.R_inv @ (op.Q.conj().T * np.sqrt(op.weights))
    best = 0.0
    for s in range(0, len(z), _BLOCK):
        best = max(best, inf_norm_rows(op.working.evaluate(z[s:s + _BLOCK]) @ right))
    return best


def certified_interval(value: float, m: float) -> tuple[float, float]:
    """Enclosure ``(value, c_m value)`` of the true Lebesgue constant."""
    if value < 0:
        raise ValueError(f"Lebesgue value must be nonnegative, got {value}")
    return float(value), float(norming_constant(m) * value)


@dataclass(frozen=True)
class LebesgueReport:
    """Mesh Lebesgue value with certified bounds ``[value, c_m value]``."""

    value: float
    lower: float
    upper: float
    relative_budget: float
    direct_value: float
    n: int
    m: float
    c: float
    boundary_label: str
    kind: str
    family: str = ""
    eval_points: int = 0

    @property
    def formula_gap(self) -> float:
        """Relative disagreement between the matrix and direct evaluations."""
        return abs(self.value - self.direct_value) / max(self.value, self.direct_value)


def lebesgue_constant(op: ProjectionOperator, eval_mesh: Mesh, family: str = "") -> LebesgueReport:
    """Certified Lebesgue constant of ``op`` from an admissible mesh.

    Raises
    ------
    UsageError
        If ``op`` carries a boundary label different from the mesh's.
    """
    if op.boundary_label is not None and op.boundary_label != eval_mesh.boundary_label:
        raise UsageError(
            f"operator built on {op.boundary_label!r} evaluated on mesh of "
            f"{eval_mesh.boundary_label!r}")
    value = lebesgue_matrix_norm(op, eval_mesh.points)
    direct = float(np.max(lebesgue_function(op, eval_mesh.points)))
    lower, upper = certified_interval(value, eval_mesh.m)
    c = eval_mesh.c
    return LebesgueReport(value, lower, upper, c - 1.0, direct, op.n, eval_mesh.m, c,
                          eval_mesh.boundary_label, op.kind, family, len(eval_mesh))
