"""Substitution of case facts and partial evaluation of the constraint set."""

from __future__ import annotations

import json
from dataclasses import replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping

from ..logic import (And, BoolConst, Cmp, Expr, FuncApp, Implies, Not, NumConst, Or, TextConst,
                     Var, canonicalize)
from ..logic.canonical import compare_constants
from ..logic.evaluate import lookup
from .items import ConstraintItem


def load_tables(path: str | Path | None = None) -> dict[str, dict[Fraction, Fraction]]:
    """Read lookup tables ``{"FPL": {"1": "1632", ...}}``; keys starting with "_" are notes."""
    if path is None:
        text = resources.files("noaverify.data").joinpath("fpl_table.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    raw = json.loads(text)
    return {name: {Fraction(k): Fraction(str(v)) for k, v in table.items()}
            for name, table in raw.items() if not name.startswith("_")}


def _const(value) -> Expr:
    if isinstance(value, bool):
        return BoolConst(value)
    if isinstance(value, str):
        return TextConst(value)
    return NumConst(Fraction(value))


def substitute(e: Expr, facts: Mapping, tables: Mapping | None, used: set) -> Expr:
    if isinstance(e, Var):
        if e.label in facts:
            used.add(e.label)
            return _const(facts[e.label])
        return e
    if isinstance(e, FuncApp):
        args = tuple(substitute(a, facts, tables, used) for a in e.args)
        if len(args) == 1 and isinstance(args[0], NumConst):
            return NumConst(lookup(tables, e.name, args[0].value))
        return FuncApp(e.name, args)
    if isinstance(e, Cmp):
        return Cmp(e.op, substitute(e.lhs, facts, tables, used), substitute(e.rhs, facts, tables, used))
    if isinstance(e, Not):
        return Not(substitute(e.arg, facts, tables, used))
    if isinstance(e, (And, Or)):
        return type(e)(tuple(substitute(a, facts, tables, used) for a in e.args))
    if isinstance(e, Implies):
        return Implies(substitute(e.antecedent, facts, tables, used),
                       substitute(e.consequent, facts, tables, used))
    return e


def simplify(e: Expr) -> Expr:
    """Bottom-up constant folding; the result is either a BoolConst or constant-free."""
    if isinstance(e, Cmp):
        l, r = e.lhs, e.rhs
        if isinstance(l, (NumConst, TextConst)) and isinstance(r, (NumConst, TextConst)):
            if type(l) is not type(r):
                return BoolConst(e.op == "!=")
            return BoolConst(compare_constants(e.op, l.value, r.value))
        return e
    if isinstance(e, Not):
        inner = simplify(e.arg)
        if isinstance(inner, BoolConst):
            return BoolConst(not inner.value)
        return Not(inner)
    if isinstance(e, (And, Or)):
        absorbing = isinstance(e, Or)
        kept = []
        for child in e.args:
            child = simplify(child)
            if isinstance(child, BoolConst):
                if child.value == absorbing:
                    return BoolConst(absorbing)
                continue
            kept.append(child)
        if not kept:
            return BoolConst(not absorbing)
        return kept[0] if len(kept) == 1 else type(e)(tuple(kept))
    if isinstance(e, Implies):
        a, c = simplify(e.antecedent), simplify(e.consequent)
        if isinstance(a, BoolConst):
            return c if a.value else BoolConst(True)
        if isinstance(c, BoolConst):
            return BoolConst(True) if c.value else simplify(Not(a))
        return Implies(a, c)
    return e


def ground(items: list[ConstraintItem], facts: Mapping, tables: Mapping | None = None
           ) -> list[ConstraintItem]:
    """Substitute ``facts``, evaluate table lookups and fold.

    Items that fold to True are dropped; items folding to False stay (with
    their tag) so the solver can report them. ``facts_used`` records which
    facts each surviving item consumed.
    """
    out = []
    for it in items:
        used: set[str] = set()
        expr = canonicalize(simplify(substitute(it.expr, facts, tables, used)))
        if expr == BoolConst(True):
            continue
        out.append(replace(it, expr=expr, facts_used=tuple(sorted(set(it.facts_used) | used))))
    return out
