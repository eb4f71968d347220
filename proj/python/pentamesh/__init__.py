"""4D anisotropic Delaunay meshing."""

from ._pentamesh import (
    DuplicateVertexError,
    FlipError,
    GhostPointError,
    Mesh,
    MetricField,
    ParseError,
    bounding_mesh,
    delaunay_2d,
    eta1,
    eta2,
    eta3,
    flip_kinds,
    flip_table,
    hypercylinder_points,
    hypervolume,
    hypervolume_exact,
    inhypersphere,
    lop,
    orientation,
    project_to_3d,
    regular_pentatope,
    relative_roughness,
    subdivision_table,
    theta,
    triangulate,
)

__all__ = [
    "DuplicateVertexError",
    "FlipError",
    "GhostPointError",
    "Mesh",
    "MetricField",
    "ParseError",
    "bounding_mesh",
    "delaunay_2d",
    "eta1",
    "eta2",
    "eta3",
    "flip_kinds",
    "flip_table",
    "hypercylinder_points",
    "hypervolume",
    "hypervolume_exact",
    "inhypersphere",
    "lop",
    "orientation",
    "project_to_3d",
    "regular_pentatope",
    "relative_roughness",
    "subdivision_table",
    "theta",
    "triangulate",
]
