"""Exact Ehrhart series and special-simplex verification for integer polytopes."""

from .ehrhart import (
    EhrhartSeries,
    PipelineReport,
    count_points,
    magic_labeling_series,
    magic_square_series,
    series_by_counting,
    series_by_triangulation,
    verify_stanley_pipeline,
)
from .families import MultiGraph, Poset, birkhoff, matching_polytope, order_polytope
from .polytope import IntegerPolytope, faces_of, find_special_simplex, validate_polytope, verify_special_simplex
from .triangulation import SimplicialComplex, VertexOrder, pulling_triangulation

__version__ = "0.1.0"

__all__ = [
    "EhrhartSeries",
    "PipelineReport",
    "count_points",
    "magic_labeling_series",
    "magic_square_series",
    "series_by_counting",
    "series_by_triangulation",
    "verify_stanley_pipeline",
    "MultiGraph",
    "Poset",
    "birkhoff",
    "matching_polytope",
    "order_polytope",
    "IntegerPolytope",
    "faces_of",
    "find_special_simplex",
    "validate_polytope",
    "verify_special_simplex",
    "SimplicialComplex",
    "VertexOrder",
    "pulling_triangulation",
]
