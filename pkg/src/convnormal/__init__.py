"""Exact polyhedral workbench for convex-normality and integer decomposition checks."""
from .covering import (
    ConvexCell,
    CoverVerdict,
    KConvexReport,
    convex_normal_at,
    is_covered,
    k_convex_normal,
    pair_convex_normal,
    subtract,
)
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    Empty,
    EmptyInput,
    GenerationBudgetExceeded,
    GeometryError,
    NonPositiveScale,
    NotAVertex,
    NotFullDimensional,
    NotLatticePolytope,
    NotRefining,
    NotTwoDimensional,
    Unbounded,
    UnknownExample,
)
from .fan import Cone, Fan, FaceMap, cone_in_vertex_cone, edge_hypothesis, normal_fan, phi, phi_table, refines
from .geometry import (
    Edge,
    Face,
    Halfspace,
    Polytope,
    contains,
    edges,
    faces,
    facets_to_vertices,
    hull,
    lattice_length,
    minkowski_sum,
    polytope_contained,
    primitive_direction,
    scale,
    translate,
    volume,
)
from .lattice import IdpVerdict, PointSet, g_set, idp_pair, idp_single, lattice_points, sumset

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Cone",
    "ConvexCell",
    "CoverVerdict",
    "DimensionMismatch",
    "Edge",
    "Empty",
    "EmptyInput",
    "Face",
    "FaceMap",
    "Fan",
    "GenerationBudgetExceeded",
    "GeometryError",
    "Halfspace",
    "IdpVerdict",
    "KConvexReport",
    "NonPositiveScale",
    "NotAVertex",
    "NotFullDimensional",
    "NotLatticePolytope",
    "NotRefining",
    "NotTwoDimensional",
    "PointSet",
    "Polytope",
    "Unbounded",
    "UnknownExample",
    "cone_in_vertex_cone",
    "contains",
    "convex_normal_at",
    "edge_hypothesis",
    "edges",
    "faces",
    "facets_to_vertices",
    "g_set",
    "hull",
    "idp_pair",
    "idp_single",
    "is_covered",
    "k_convex_normal",
    "lattice_length",
    "lattice_points",
    "minkowski_sum",
    "normal_fan",
    "pair_convex_normal",
    "phi",
    "phi_table",
    "polytope_contained",
    "primitive_direction",
    "refines",
    "scale",
    "subtract",
    "sumset",
    "translate",
    "volume",
]
