# -*- coding: utf-8 -*-
from lattice.base import (
    Bipartition,
    Edge,
    EdgeColoring,
    HeavyHexLattice,
    LatticeError,
    canonical_edge,
    load_lattice,
    save_lattice,
)
from lattice.coloring import bipartition, is_proper_edge_coloring, three_edge_coloring
from lattice.heavy_hex import fragment, hexgrid, make_heavy_hex, parse_kind, resolve_lattice

__all__ = [
    "Bipartition",
    "Edge",
    "EdgeColoring",
    "HeavyHexLattice",
    "LatticeError",
    "bipartition",
    "canonical_edge",
    "fragment",
    "hexgrid",
    "is_proper_edge_coloring",
    "load_lattice",
    "make_heavy_hex",
    "parse_kind",
    "resolve_lattice",
    "save_lattice",
    "three_edge_coloring",
]
