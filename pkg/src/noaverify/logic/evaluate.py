"""Direct recursive evaluation under a total assignment.

Used as the independent check on grounding and on every SAT witness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import MissingTableEntry
from .canonical import compare_constants
from .nodes import And, BoolConst, Cmp, Expr, FuncApp, Implies, Not, NumConst, Or, TextConst, Var


def lookup(tables: Mapping, name: str, arg) -> Fraction:
    table = (tables or {}).get(name)
    if table is None:
        raise MissingTableEntry(name, arg)
    try:
        key = Fraction(arg)
    except (TypeError, ValueError):
        raise MissingTableEntry(name, arg) from None
    if key not in table:
        raise MissingTableEntry(name, arg)
    return table[key]


def evaluate(e: Expr, env: Mapping, tables: Mapping | None = None):
    if isinstance(e, Var):
        return env[e.label]
    if isinstance(e, (NumConst, TextConst, BoolConst)):
        return e.value
    if isinstance(e, FuncApp):
        if len(e.args) != 1:
            raise MissingTableEntry(e.name, tuple(evaluate(a, env, tables) for a in e.args))
        return lookup(tables, e.name, evaluate(e.args[0], env, tables))
    if isinstance(e, Cmp):
        return compare_constants(e.op, evaluate(e.lhs, env, tables), evaluate(e.rhs, env, tables))
    if isinstance(e, Not):
        return not evaluate(e.arg, env, tables)
    if isinstance(e, And):
        return all(evaluate(a, env, tables) for a in e.args)
    if isinstance(e, Or):
        return any(evaluate(a, env, tables) for a in e.args)
    if isinstance(e, Implies):
        return (not evaluate(e.antecedent, env, tables)) or bool(evaluate(e.consequent, env, tables))
    raise TypeError(f"not a logic node: {e!r}")
