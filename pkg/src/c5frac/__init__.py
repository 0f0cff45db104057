"""Exact verification tools for the inducibility of the 5-cycle.

Colorings of complete graphs are stored as bitset adjacency rows of the red
relation.  Submodules cover induced counting and canonical forms, iterated
blow-ups of C5, funky-edge bookkeeping, the size program and its residual
placements, the two adaptive-mesh programs, balance and threshold checks, and
the C5 versus C•• inequality.
"""

__version__ = "0.1.0"

from .blowup import CycleTable, balanced_tree, classify_small, cycle_table, materialize, partition_cycle_count, shared_table
from .constants import DEFAULT, Constants
from .graphs import C5, ColoredGraph, complement, count_induced_c5, make_graph, mobius_ladder

__all__ = [
    "C5",
    "ColoredGraph",
    "Constants",
    "CycleTable",
    "DEFAULT",
    "balanced_tree",
    "classify_small",
    "complement",
    "count_induced_c5",
    "cycle_table",
    "make_graph",
    "materialize",
    "mobius_ladder",
    "partition_cycle_count",
    "shared_table",
]
