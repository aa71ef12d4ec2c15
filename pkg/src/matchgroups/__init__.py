"""Dimer complexes, dimer groups and matching groups of finite graphs and hypergraphs."""

from .cubecomplex import CubeComplex, build_complex, nonpositively_curved
from .dimer import DimerGroup, EdgePath, dimer_presentation
from .gliding import GlidingSystem, even_cycle_system, power_group_system
from .incidence import EdgeSet, Hypergraph, perfect_matchings
from .words import Presentation, abelianization, tietze_simplify

__all__ = [
    "CubeComplex",
    "DimerGroup",
    "EdgePath",
    "EdgeSet",
    "GlidingSystem",
    "Hypergraph",
    "Presentation",
    "abelianization",
    "build_complex",
    "dimer_presentation",
    "even_cycle_system",
    "nonpositively_curved",
    "perfect_matchings",
    "power_group_system",
    "tietze_simplify",
]
