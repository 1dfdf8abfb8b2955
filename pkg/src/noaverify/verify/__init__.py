"""Grounding, satisfiability checking and core extraction for one case."""

from .encode import Encoding, encode
from .engine import VerificationReport, anchor_citations, build_items, verify_assertions, verify_case
from .export import result_json, to_dot, to_graphml, violation_graph
from .ground import ground, load_tables, simplify, substitute
from .items import ConstraintItem, Tag, item
from .solver import SAT, UNSAT, SolveResult, TraceEvent, is_sat, minimize_core, solve

__all__ = [
    "ConstraintItem", "Tag", "item", "ground", "load_tables", "simplify", "substitute",
    "Encoding", "encode", "SAT", "UNSAT", "SolveResult", "TraceEvent", "solve", "is_sat",
    "minimize_core", "VerificationReport", "verify_case", "verify_assertions", "build_items",
    "anchor_citations", "result_json", "to_dot", "to_graphml", "violation_graph",
]
