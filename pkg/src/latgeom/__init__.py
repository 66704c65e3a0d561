"""Geometry-of-numbers toolkit: lattice invariants, Voronoi cells,
passability certificates, exact polytope arithmetic, and density bounds."""

from .lattice import Lattice, catalog, determinant, dual, reduce

__all__ = ["Lattice", "catalog", "determinant", "dual", "reduce"]
__version__ = "0.1.0"
