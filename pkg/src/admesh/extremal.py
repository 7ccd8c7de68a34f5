"""Fekete-like and Leja-like node extraction from admissible meshes.

* approximate Fekete points: QR with column pivoting on the transposed
  mesh Vandermonde (greedy determinant maximization);
* discrete Leja points: LU with row pivoting on the mesh Vandermonde;
* pseudo-Leja sequence: the j-th node maximizes ``prod |z - xi_k|`` over the
  degree ``j - 1`` mesh, so the nodes for degree ``l`` are a prefix of the
  nodes for any degree ``n > l``.

All extractions run in the basis orthonormalized on the extraction mesh.
Two exhaustive oracles, :func:`greedy_leja_oracle` and
:func:`brute_force_fekete`, validate the factorization-based routes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .chebmesh import ZEROS, Mesh, MeshParams, boundary_mesh
from .errors import ExtractionError, SingularMatrixError, UsageError
from .factorkit import PIVOT_TIE_RTOL, lu_row_pivot, qr_column_pivot, qr_householder
from .geometry import Boundary
from .vanderbasis import OrthoBasis, orthonormalize

AFP = "afp"
DISCRETE_LEJA = "discrete_leja"
PSEUDO_LEJA = "pseudo_leja"
FAMILIES = (AFP, DISCRETE_LEJA, PSEUDO_LEJA)

UNISOLVENCE_RTOL = 1e-12
BRUTE_FORCE_MAX_POINTS = 20
BRUTE_FORCE_MAX_DEGREE = 4
_LOG_TIE = math.log1p(-PIVOT_TIE_RTOL)


@dataclass(frozen=True, eq=False)
class NodeSet:
    """Extracted interpolation nodes in selection order.

    ``indices[j]`` locates ``nodes[j]`` in its source mesh; for pseudo-Leja
    the source of node ``j`` (0-based) is the degree ``max(j, 1)`` mesh.
    ``mesh`` is the degree-``n`` mesh of the extraction (the natural
    evaluation mesh), ``basis`` the basis orthonormal on it.
    """

    nodes: np.ndarray
    family: str
    n: int
    indices: np.ndarray
    source: dict = field(default_factory=dict)
    basis: OrthoBasis | None = None
    mesh: Mesh | None = None

    def __post_init__(self):
        for name in ("nodes", "indices"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self):
        return len(self.nodes)

    @property
    def boundary_label(self):
        return self.source.get("boundary_label")


def _source(mesh: Mesh) -> dict:
    return {"boundary_label": mesh.boundary_label, "m": mesh.params.m, "kind": mesh.params.kind}


def _mesh_basis(mesh: Mesh, n: int, basis: OrthoBasis | None) -> OrthoBasis:
    if len(mesh) < n + 1:
        raise ExtractionError(f"mesh has {len(mesh)} points, fewer than n + 1 = {n + 1}")
    if basis is None:
        return orthonormalize(mesh.points, n)
    if basis.n != n:
        raise UsageError(f"basis degree {basis.n} does not match n = {n}")
    return basis


def approximate_fekete(mesh: Mesh, n: int | None = None, basis: OrthoBasis | None = None) -> NodeSet:
    """Approximate Fekete points of degree ``n`` (defaults to ``mesh.n``).

    The first ``n + 1`` column pivots of ``V^T``, with ``V`` the mesh
    Vandermonde in the mesh-orthonormal basis, select the nodes.
    """
    n = mesh.n if n is None else n
    basis = _mesh_basis(mesh, n, basis)
    W = basis.evaluate(mesh.points)
    qr = qr_column_pivot(W.T)
    if qr.rank < n + 1:
        raise ExtractionError(f"numerical rank {qr.rank} < n + 1 = {n + 1} on this mesh")
    idx = qr.perm[:n + 1].copy()
    return NodeSet(mesh.points[idx], AFP, n, idx, _source(mesh), basis, mesh)


def discrete_leja(mesh: Mesh, n: int | None = None, basis: OrthoBasis | None = None) -> NodeSet:
    """Discrete Leja points: the first ``n + 1`` LU row pivots of the mesh Vandermonde."""
    n = mesh.n if n is None else n
    basis = _mesh_basis(mesh, n, basis)
    W = basis.evaluate(mesh.points)
    try:
        lu = lu_row_pivot(W)
    except SingularMatrixError as exc:
        raise ExtractionError(f"Vandermonde lost rank at column {exc.index}") from exc
    idx = lu.perm[:n + 1].copy()
    return NodeSet(mesh.points[idx], DISCRETE_LEJA, n, idx, _source(mesh), basis, mesh)


def _argmax_log(values: np.ndarray) -> int:
    """Lowest index whose log-value is within the pivot tie tolerance of the max."""
    vmax = values.max()
    if vmax == -np.inf:
        raise ExtractionError("every candidate coincides with a selected node")
    return int(np.flatnonzero(values >= vmax + _LOG_TIE)[0])


def greedy_leja_oracle(points, n: int, first: int = 0) -> NodeSet:
    """Literal greedy Leja selection on a fixed point list.

    ``xi_1 = points[first]``; then ``xi_j`` maximizes ``sum_k log|z - xi_k|``
    over the points, ties to the lowest index.
    """
    z = np.ravel(np.asarray(points, dtype=complex))
    if n + 1 > len(z):
        raise ExtractionError(f"need n + 1 = {n + 1} <= {len(z)} points")
    if not 0 <= first < len(z):
        raise IndexError(f"first index {first} out of range")
    idx = [int(first)]
    logs = np.zeros(len(z))
    with np.errstate(divide="ignore"):
        for _ in range(n):
            logs += np.log(np.abs(z - z[idx[-1]]))
            logs[idx[-1]] = -np.inf
            idx.append(_argmax_log(logs))
    idx = np.array(idx)
    return NodeSet(z[idx], DISCRETE_LEJA, n, idx, {"oracle": "greedy_leja"})


def _first_pseudo_leja(points: np.ndarray) -> int:
    # largest imaginary part, then largest real part, then lowest index
    scale = max(1.0, float(np.abs(points).max()))
    tol = PIVOT_TIE_RTOL * scale
    cand = np.flatnonzero(points.imag >= points.imag.max() - tol)
    best = cand[points.real[cand] >= points.real[cand].max() - tol]
    return int(best[0])


def pseudo_leja_points(boundary: Boundary, n: int, m: float = 4, kind: str = ZEROS):
    """Pseudo-Leja nodes and their per-degree mesh indices.

    Returns ``(nodes, indices)`` with node ``j`` (0-based) taken from the
    degree ``max(j, 1)`` mesh.
    """
    if n < 1:
        raise ExtractionError(f"pseudo-Leja sequences need n >= 1, got {n}")
    mesh = boundary_mesh(boundary, MeshParams(1, m, kind))
    first = _first_pseudo_leja(mesh.points)
    nodes = [complex(mesh.points[first])]
    indices = [first]
    with np.errstate(divide="ignore"):
        for j in range(1, n + 1):
            if j > 1:
                mesh = boundary_mesh(boundary, MeshParams(j, m, kind))
            z = mesh.points
            logs = np.zeros(len(z))
            for xi in nodes:
                logs += np.log(np.abs(z - xi))
            k = _argmax_log(logs)
            nodes.append(complex(z[k]))
            indices.append(k)
    return np.array(nodes), np.array(indices)


def pseudo_leja(boundary: Boundary, n: int, m: float = 4, kind: str = ZEROS,
                points=None) -> NodeSet:
    """Pseudo-Leja nodes of degree ``n`` on ``boundary``.

    ``points`` may pass a precomputed ``(nodes, indices)`` pair from
    :func:`pseudo_leja_points` of degree ``>= n``; its prefix is used.
    """
    if points is None:
        nodes, indices = pseudo_leja_points(boundary, n, m, kind)
    else:
        nodes, indices = points[0][:n + 1], points[1][:n + 1]
        if len(nodes) < n + 1:
            raise UsageError(f"precomputed sequence has {len(nodes)} nodes, need {n + 1}")
    mesh = boundary_mesh(boundary, MeshParams(n, m, kind))
    basis = orthonormalize(mesh.points, n)
    return NodeSet(nodes, PSEUDO_LEJA, n, indices, _source(mesh), basis, mesh)


def node_basis_factor(nodes: NodeSet | np.ndarray, basis: OrthoBasis) -> np.ndarray:
    """``R`` of the QR factorization of the node Vandermonde in ``basis``."""
    z = nodes.nodes if isinstance(nodes, NodeSet) else np.asarray(nodes)
    _, R = qr_householder(basis.evaluate(z))
    return R


def is_unisolvent(nodes: NodeSet, basis: OrthoBasis | None = None,
                  rtol: float = UNISOLVENCE_RTOL) -> bool:
    """``|R_kk| >= rtol |R_11|`` for the node Vandermonde QR."""
    basis = basis or nodes.basis or orthonormalize(nodes.nodes, len(nodes.nodes) - 1)
    if len(nodes.nodes) != basis.dim:
        return False
    try:
        d = np.abs(np.diag(node_basis_factor(nodes, basis)))
    except SingularMatrixError:
        return False
    return bool(np.all(d >= rtol * d[0]))


def vandermonde_abs_det(points, basis: OrthoBasis) -> float:
    """``|det|`` of the square Vandermonde of ``points`` in ``basis``."""
    W = basis.evaluate(points)
    if W.shape[0] != W.shape[1]:
        raise UsageError(f"need {basis.dim} points for a square Vandermonde, got {W.shape[0]}")
    return float(abs(np.linalg.det(W)))


def brute_force_fekete(points, n: int, basis: OrthoBasis | None = None) -> tuple[int, ...]:
    """Exact discrete Fekete subset by exhaustive search (tiny instances only).

    Maximizes ``|det|`` of the Vandermonde in the basis orthonormal on
    ``points`` over every ``(n+1)``-subset; ties go to the lexicographically
    smallest index tuple. Refuses more than 20 points or ``n > 4``.
    """
    z = np.ravel(np.asarray(points, dtype=complex))
    if len(z) > BRUTE_FORCE_MAX_POINTS or n > BRUTE_FORCE_MAX_DEGREE:
        raise UsageError(
            f"brute force limited to <= {BRUTE_FORCE_MAX_POINTS} points and n <= "
            f"{BRUTE_FORCE_MAX_DEGREE}; got {len(z)} points, n = {n}")
    if n + 1 > len(z):
        raise ExtractionError(f"need n + 1 = {n + 1} <= {len(z)} points")
    basis = basis or orthonormalize(z, n)
    W = basis.evaluate(z)
    combos = np.array(list(itertools.combinations(range(len(z)), n + 1)))
    dets = np.abs(np.linalg.det(W[combos]))
    best = int(np.flatnonzero(dets >= dets.max() * (1.0 - PIVOT_TIE_RTOL))[0])
    return tuple(int(i) for i in combos[best])
