"""Curvature, Poincare-Hopf indices and topology of finite simple graphs.

Everything is exact: counts are Python ints and curvatures are Fractions.
"""
from __future__ import annotations

from .graph import Graph, GraphError, cliques, euler_characteristic, fvector, unit_sphere
from .morse import Coloring, index_vector, ph_index
from .measure import Measure

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "Graph",
    "GraphError",
    "Measure",
    "cliques",
    "euler_characteristic",
    "fvector",
    "index_vector",
    "ph_index",
    "unit_sphere",
]
