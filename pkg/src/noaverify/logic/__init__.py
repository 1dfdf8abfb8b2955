"""The restricted first-order rule fragment shared by statutes and explanations."""

from .canonical import canonicalize, desugar_applied
from .evaluate import evaluate
from .nodes import (And, BoolConst, BoolVar, Cmp, Expr, FuncApp, Implies, Kind, Not, NumConst,
                    NumVar, Or, TextConst, TextVar, Var, free_symbols, is_ground, variables, walk)
from .parser import parse
from .printer import format_number, unparse
from .typecheck import DEFAULT_FUNCTIONS, FunctionSig, as_vocab, resolve_kinds, typecheck

__all__ = [
    "And", "BoolConst", "BoolVar", "Cmp", "Expr", "FuncApp", "Implies", "Kind", "Not",
    "NumConst", "NumVar", "Or", "TextConst", "TextVar", "Var", "free_symbols", "is_ground",
    "variables", "walk", "parse", "unparse", "format_number", "typecheck", "resolve_kinds",
    "as_vocab", "FunctionSig", "DEFAULT_FUNCTIONS", "canonicalize", "desugar_applied",
    "evaluate",
]
