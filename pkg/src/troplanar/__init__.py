"""Lattice polygons, unimodular triangulations and the combinatorics of
tropically planar trivalent graphs."""

from .errors import TroplanarError
from .graphs import Multigraph
from .lattice_geom import LatticePolygon, PointConfiguration, convex_hull, genus, lattice_points
from .subdivision import Triangulation, enumerate_triangulations, is_regular, validate
from .skeleton import skeleton_of, skeletonize
from .graphcat import canonical_form, enumerate_trivalent, is_isomorphic, is_planar
from .obstructions import ObstructionReport, classify
from .antihoney import AntiHoneycombType, build_polygon, build_triangulation

__version__ = "0.1.0"

__all__ = [
    "TroplanarError", "Multigraph", "LatticePolygon", "PointConfiguration", "convex_hull",
    "genus", "lattice_points", "Triangulation", "enumerate_triangulations", "is_regular",
    "validate", "skeleton_of", "skeletonize", "canonical_form", "enumerate_trivalent",
    "is_isomorphic", "is_planar", "ObstructionReport", "classify", "AntiHoneycombType",
    "build_polygon", "build_triangulation",
]
