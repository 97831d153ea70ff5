"""Exact rigidity matrices and rigidity matroids over the rationals."""

from __future__ import annotations

__version__ = "0.1.0"

from .builders import (Basis, BarJointBasis, CofactorBasis, Custom, Monomial, RigidityMatrix,
                       affine_rigidity, bar_joint, build, cofactor, hyperconnectivity,
                       polynomial_matrix, quadric_matrix, skew_jacobian)
from .errors import ParseError, PreconditionError, RigidLabError
from .exact_linalg import Matrix, left_nullspace, nullspace, rank
from .geometry import (Params, PointConfig, homogenize, lift_bipartite, moment_curve,
                       monomial_vectors, parabola, random_generic, random_params)
from .graph import (Bipartition, Graph, complete, complete_bipartite, cone, diamond_split,
                    parse_graph_spec, vertex_split)
from .matroid import (Exhaustive, LinearMatroid, Sampled, freer_than, generic_matroid,
                      generic_rank, matroids_equal)

__all__ = [
    "Basis", "BarJointBasis", "CofactorBasis", "Custom", "Monomial", "RigidityMatrix",
    "affine_rigidity", "bar_joint", "build", "cofactor", "hyperconnectivity",
    "polynomial_matrix", "quadric_matrix", "skew_jacobian",
    "ParseError", "PreconditionError", "RigidLabError",
    "Matrix", "left_nullspace", "nullspace", "rank",
    "Params", "PointConfig", "homogenize", "lift_bipartite", "moment_curve",
    "monomial_vectors", "parabola", "random_generic", "random_params",
    "Bipartition", "Graph", "complete", "complete_bipartite", "cone", "diamond_split",
    "parse_graph_spec", "vertex_split",
    "Exhaustive", "LinearMatroid", "Sampled", "freer_than", "generic_matroid",
    "generic_rank", "matroids_equal",
    "__version__",
]
