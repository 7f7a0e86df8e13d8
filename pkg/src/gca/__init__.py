"""Cellular automata over finitely generated groups with group alphabets.

The modules build on each other bottom-up: ``lattice`` (exact integer
algebra), ``alphabet`` (finite and symbolic alphabets, homomorphisms),
``groups`` (universes, balls, Følner boxes), ``automaton``, ``shifts``,
``deciders``, ``sofic``, ``meandim`` and the ``cli``.
"""

from .alphabet import AbelianGroup, SymbolicAlphabet, TableGroup, cyclic, hom_check, image_and_kernel, pi0, pi0_hom
from .automaton import CellularAutomaton, apply_patch, compose, find_inverse, identity_ca, induced_component_ca, linear_ca, table_ca
from .deciders import (
    certify_post_surjective,
    decide_preinjective,
    decide_surjective,
    restriction_hom,
    star_preinjective,
    starstar_preinjective,
)
from .groups import FiniteUniverse, FreeGroup, Lattice, ball, cayley_ball_graph, folner_box
from .lattice import kernel_invariants, rank, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "SymbolicAlphabet", "TableGroup", "cyclic", "hom_check", "image_and_kernel", "pi0", "pi0_hom",
    "CellularAutomaton", "apply_patch", "compose", "find_inverse", "identity_ca", "induced_component_ca",
    "linear_ca", "table_ca",
    "certify_post_surjective", "decide_preinjective", "decide_surjective", "restriction_hom",
    "star_preinjective", "starstar_preinjective",
    "FiniteUniverse", "FreeGroup", "Lattice", "ball", "cayley_ball_graph", "folner_box",
    "kernel_invariants", "rank", "smith_normal_form",
]
