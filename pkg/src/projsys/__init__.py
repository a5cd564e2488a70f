"""Workbench for linear codes viewed as projective systems over small fields."""

from .gf import GF, field
from .geometry import Flat, ProjectiveGeometry, geometry, rank, span_flat, theta
from .projsystem import (
    CodeParams,
    ProjectiveSystem,
    dual_distance,
    from_generator_matrix,
    min_distance,
    params,
    quotient_shorten,
    read_gm,
    to_generator_matrix,
    weight_distribution,
    write_gm,
)

__all__ = [
    "GF",
    "field",
    "Flat",
    "ProjectiveGeometry",
    "geometry",
    "rank",
    "span_flat",
    "theta",
    "CodeParams",
    "ProjectiveSystem",
    "dual_distance",
    "from_generator_matrix",
    "min_distance",
    "params",
    "quotient_shorten",
    "read_gm",
    "to_generator_matrix",
    "weight_distribution",
    "write_gm",
]

__version__ = "0.1.0"
