"""Normal form under which equivalent explanation variants compare equal."""

from __future__ import annotations

from .nodes import (FLIPPED, And, BoolConst, Cmp, Expr, FuncApp, Implies, Not, Var,
                    NumConst, Or, TextConst)
from .printer import unparse


def compare_constants(op: str, lhs, rhs) -> bool:
    if op == "=":
        return lhs == rhs
    if op == "!=":
        return lhs != rhs
    if op == ">":
        return lhs > rhs
    if op == ">=":
        return lhs >= rhs
    if op == "<":
        return lhs < rhs
    if op == "<=":
        return lhs <= rhs
    raise ValueError(op)


def _is_const(e: Expr) -> bool:
    return isinstance(e, (NumConst, TextConst))


def _cmp(op: str, lhs: Expr, rhs: Expr) -> Expr:
    if op == "!=":
        return Not(_cmp("=", lhs, rhs))
    if _is_const(lhs) and _is_const(rhs):
        if type(lhs) is not type(rhs):
            return BoolConst(False)
        return BoolConst(compare_constants(op, lhs.value, rhs.value))
    if _is_const(lhs) and not _is_const(rhs):
        return Cmp(FLIPPED[op], rhs, lhs)
    if not _is_const(lhs) and not _is_const(rhs) and unparse(lhs) > unparse(rhs):
        return Cmp(FLIPPED[op], rhs, lhs)
    return Cmp(op, lhs, rhs)


def _step(e: Expr) -> Expr:
    if isinstance(e, Cmp):
        return _cmp(e.op, _step(e.lhs), _step(e.rhs))
    if isinstance(e, FuncApp):
        return FuncApp(e.name, tuple(_step(a) for a in e.args))
    if isinstance(e, Not):
        inner = _step(e.arg)
        if isinstance(inner, Not):
            return inner.arg
        if isinstance(inner, BoolConst):
            return BoolConst(not inner.value)
        return Not(inner)
    if isinstance(e, (And, Or)):
        flat = []
        for child in e.args:
            child = _step(child)
            if type(child) is type(e):
                flat.extend(child.args)
            else:
                flat.append(child)
        return type(e)(tuple(sorted(flat, key=unparse)))
    if isinstance(e, Implies):
        return Implies(_step(e.antecedent), _step(e.consequent))
    return e


def canonicalize(e: Expr) -> Expr:
    """Rewrite ``e`` to fixpoint.

    Double negations vanish, nested And/Or flatten and their children sort by
    printed form, ``a != b`` becomes ``Not(a = b)``, ground comparisons fold,
    and comparison operands are oriented (variable before constant, otherwise
    by printed form). Implications keep their shape.
    """
    while True:
        nxt = _step(e)
        if nxt == e:
            return e
        e = nxt



def desugar_applied(e: Expr, entities) -> Expr:
    """Rewrite ``Attr(Entity)`` applications into flat ``Entity_Attr`` variables.

    ``ResidenceCounty(Applicant)`` becomes ``Applicant_ResidenceCounty`` when
    ``Applicant`` is one of ``entities``; kinds are left for re-resolution.
    """
    entities = set(entities)

    def go(node: Expr) -> Expr:
        if isinstance(node, FuncApp):
            if (len(node.args) == 1 and isinstance(node.args[0], Var)
                    and node.args[0].label in entities):
                return Var(f"{node.args[0].label}_{node.name}")
            return FuncApp(node.name, tuple(go(a) for a in node.args))
        if isinstance(node, Cmp):
            return Cmp(node.op, go(node.lhs), go(node.rhs))
        if isinstance(node, Not):
            return Not(go(node.arg))
        if isinstance(node, (And, Or)):
            return type(node)(tuple(go(a) for a in node.args))
        if isinstance(node, Implies):
            return Implies(go(node.antecedent), go(node.consequent))
        return node

    return go(e)
