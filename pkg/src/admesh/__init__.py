"""Chebyshev admissible meshes on complex curves, extremal interpolation
nodes and certified Lebesgue constants of polynomial projections."""

__version__ = "0.1.0"

from .chebmesh import (
    Mesh,
    MeshParams,
    arc_mesh,
    boundary_mesh,
    chebyshev_points,
    map_algebraic,
    map_trigonometric,
    mesh_for,
    norming_constant,
)
from .errors import (
    AdmeshError,
    BoundaryParseError,
    DomainError,
    ExtractionError,
    GeometryError,
    RankDeficiencyError,
    SingularMatrixError,
    UsageError,
)
from .extremal import (
    NodeSet,
    approximate_fekete,
    brute_force_fekete,
    discrete_leja,
    greedy_leja_oracle,
    pseudo_leja,
)
from .geometry import (
    GALLERY_NAMES,
    Arc,
    Boundary,
    eval_arc,
    gallery,
    load_boundary,
    loads_boundary,
    save_boundary,
)
from .projection import (
    LebesgueReport,
    ProjectionOperator,
    certified_interval,
    lebesgue_constant,
    lebesgue_function,
    make_interpolant,
    make_least_squares,
)
from .vanderbasis import BasisSpec, OrthoBasis, basis_spec, orthonormalize, vandermonde
