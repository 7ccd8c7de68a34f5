"""Chebyshev-type admissible polynomial meshes on arcs and boundaries.

For an arc of degree ``k`` and polynomial degree ``n`` the mesh is the image
under ``z(t)`` of ``N`` Chebyshev points mapped into the parameter interval,
with ``N = ceil(m n k)`` for algebraic arcs and ``N = ceil(2 m n k)`` for
trigonometric ones. Every ``p`` of degree ``n`` then satisfies
``max_Gamma |p| <= c_m max_mesh |p|`` with ``c_m = 1 / cos(pi / (2m))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError
from .geometry import TWO_PI, Arc, Boundary, eval_arc

ZEROS = "zeros"
EXTREMA = "extrema"
POINT_KINDS = (ZEROS, EXTREMA)

DEDUP_RTOL = 1e-12


@dataclass(frozen=True)
class MeshParams:
    """Degree ``n >= 1``, oversampling factor ``m > 1`` and Chebyshev point kind."""

    n: int
    m: float = 4
    kind: str = ZEROS

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"mesh degree n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not (math.isfinite(self.m) and self.m > 1):
            raise DomainError(f"oversampling factor m must be > 1, got {self.m!r}")
        if self.kind not in POINT_KINDS:
            raise DomainError(f"kind must be one of {POINT_KINDS}, got {self.kind!r}")


@dataclass(frozen=True, eq=False)
class Mesh:
    """Finite norming set with per-point provenance.

    ``points[i] == eval_arc(boundary.arcs[arc_index[i]], t[i])``. The arrays
    are read-only.
    """

    points: np.ndarray
    params: MeshParams
    boundary_label: str
    arc_index: np.ndarray
    t: np.ndarray
    c: float

    def __post_init__(self):
        for name in ("points", "arc_index", "t"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self):
        return len(self.points)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def m(self) -> float:
        return self.params.m

    def __eq__(self, other):
        if not isinstance(other, Mesh):
            return NotImplemented
        return (self.params == other.params and self.boundary_label == other.boundary_label
                and self.c == other.c
                and np.array_equal(self.points, other.points)
                and np.array_equal(self.arc_index, other.arc_index)
                and np.array_equal(self.t, other.t))

    __hash__ = None


def chebyshev_points(N: int, kind: str = ZEROS) -> np.ndarray:
    """Chebyshev zeros (``N`` points) or extrema (``N + 1`` points), decreasing.

    Examples
    --------
    >>> chebyshev_points(2, "extrema")
    array([ 1.,  0., -1.])
    """
    if isinstance(N, bool) or int(N) != N or N < 1:
        raise DomainError(f"number of Chebyshev points must be a positive integer, got {N!r}")
    N = int(N)
    if kind == ZEROS:
        j = np.arange(1, N + 1)
        x = np.cos((2 * j - 1) * np.pi / (2 * N))
    elif kind == EXTREMA:
        j = np.arange(N + 1)
        x = np.cos(j * np.pi / N)
    else:
        raise DomainError(f"kind must be one of {POINT_KINDS}, got {kind!r}")
    # exact symmetry: mirror the upper half, pin the center
    half = len(x) // 2
    x[len(x) - half:] = -x[:half][::-1]
    if len(x) % 2:
        x[half] = 0.0
    return x


def map_algebraic(u, a: float, b: float):
    """Affine map of ``[-1, 1]`` onto ``[a, b]``."""
    if not b > a:
        raise DomainError(f"need b > a, got [{a}, {b}]")
    uu = np.asarray(u, dtype=float)
    t = (b - a) / 2 * uu + (b + a) / 2
    t = np.clip(t, a, b)
    return float(t) if np.ndim(u) == 0 else t


def map_trigonometric(u, a: float, b: float):
    """Subperiodic arcsine map of ``[-1, 1]`` onto ``[a, b]`` (``b - a <= 2 pi``).

    ``t = 2 arcsin(u sin((b - a) / 4)) + (b + a) / 2``; strictly increasing.
    """
    if not b > a:
        raise DomainError(f"need b > a, got [{a}, {b}]")
    if b - a > TWO_PI * (1 + 1e-14):
        raise DomainError(f"trigonometric interval longer than 2*pi: {b - a!r}")
    uu = np.asarray(u, dtype=float)
    s = math.sin((b - a) / 4)
    t = 2 * np.arcsin(np.clip(uu * s, -1.0, 1.0)) + (b + a) / 2
    t = np.clip(t, a, b)
    return float(t) if np.ndim(u) == 0 else t


def norming_constant(m: float) -> float:
    """``c_m = 1 / cos(pi / (2m))`` for ``m > 1``."""
    if not (math.isfinite(m) and m > 1):
        raise DomainError(f"norming constant needs m > 1, got {m!r}")
    return 1.0 / math.cos(math.pi / (2 * m))


def parameter_count(arc: Arc, params: MeshParams) -> int:
    """Number ``N`` of Chebyshev parameters for ``arc`` at ``params``."""
    nu = params.n * arc.degree
    factor = 2 * params.m if arc.is_trigonometric else params.m
    return math.ceil(factor * nu)


def arc_parameters(arc: Arc, params: MeshParams) -> np.ndarray:
    """Mapped Chebyshev parameters of ``arc``, increasing in ``t``."""
    u = chebyshev_points(parameter_count(arc, params), params.kind)[::-1]
    a, b = arc.interval
    sigma = map_trigonometric if arc.is_trigonometric else map_algebraic
    return sigma(u, a, b)


def arc_mesh(arc: Arc, params: MeshParams, arc_index: int = 0, label: str = "") -> Mesh:
    """Admissible mesh ``z(sigma(T_N))`` of a single arc (no deduplication)."""
    t = arc_parameters(arc, params)
    z = eval_arc(arc, t)
    return Mesh(z, params, label, np.full(len(t), arc_index, dtype=int), t,
                norming_constant(params.m))


def _dedup_mask(points: np.ndarray) -> np.ndarray:
    """Keep-mask removing points within the dedup tolerance of an earlier point."""
    if len(points) < 2:
        return np.ones(len(points), dtype=bool)
    xy = np.column_stack([points.real, points.imag])
    diam = float(np.max(np.ptp(xy, axis=0)) * math.sqrt(2))
    tol = DEDUP_RTOL * max(1.0, diam)
    pairs = cKDTree(xy).query_pairs(tol, output_type="ndarray")
    keep = np.ones(len(points), dtype=bool)
    if len(pairs):
        # visit pairs by (first, second); drop the later index unless its partner was dropped
        order = np.lexsort((pairs[:, 1], pairs[:, 0]))
        for i, j in pairs[order]:
            if keep[i]:
                keep[j] = False
    return keep


def boundary_mesh(boundary: Boundary, params: MeshParams) -> Mesh:
    """Union of the arc meshes of ``boundary``, duplicates removed.

    The first occurrence of a repeated point is kept (arc order, then
    increasing parameter).
    """
    zs, idx, ts = [], [], []
    for j, arc in enumerate(boundary.arcs):
        t = arc_parameters(arc, params)
        zs.append(eval_arc(arc, t))
        idx.append(np.full(len(t), j, dtype=int))
        ts.append(t)
    z = np.concatenate(zs)
    arc_index = np.concatenate(idx)
    t = np.concatenate(ts)
    keep = _dedup_mask(z)
    return Mesh(z[keep], params, boundary.label, arc_index[keep], t[keep],
                norming_constant(params.m))


def mesh_for(boundary: Boundary, n: int, m: float = 4, kind: str = ZEROS) -> Mesh:
    """Shorthand for ``boundary_mesh(boundary, MeshParams(n, m, kind))``."""
    return boundary_mesh(boundary, MeshParams(n, m, kind))
