"""Radials and semiradials of bidirected graphs: reach sets, grounds, decompositions and constructions."""

from .bdg import emit_bdg, parse_bdg, read_bdg
from .classify import class_report, classify_vertex, vertex_table
from .ditrail import Ditrail, find_ditrail, oracle_reach_profile, reach_profile
from .graph import MINUS, PLUS, BidirectedGraph, Edge, GraphError, HypothesisError, RootedGraph, Sign
from .grounds import Ground, ground

__version__ = "0.1.0"

__all__ = [
    "BidirectedGraph",
    "Ditrail",
    "Edge",
    "GraphError",
    "Ground",
    "HypothesisError",
    "MINUS",
    "PLUS",
    "RootedGraph",
    "Sign",
    "class_report",
    "classify_vertex",
    "emit_bdg",
    "find_ditrail",
    "ground",
    "oracle_reach_profile",
    "parse_bdg",
    "reach_profile",
    "read_bdg",
    "vertex_table",
]
