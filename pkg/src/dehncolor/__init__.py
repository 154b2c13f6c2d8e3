"""Dehn colorings and vertex-weight invariants of spatial-graph diagrams."""

from .coloring import brute_force_count, count_colorings, enumerate_colorings, is_coloring
from .diagram import Diagram, DiagramError, load, parse
from .doubling import count_r, double, doublable_sets, is_doublable, phi_r
from .moves import MoveError, MoveSite, find_sites, random_walk
from .tuples import INF, evaluate, parse_spec
from .weights import phi, phi_equal

__version__ = "0.1.0"
