"""Tseitin translation of grounded constraints into clauses plus theory atoms."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import FragmentExceeded
from ..logic import (And, BoolConst, Cmp, Expr, FuncApp, Implies, Kind, Not, NumConst, Or,
                     TextConst, Var, unparse, walk)

_CONST = (NumConst, TextConst)


def normalize_atom(e: Cmp) -> Expr:
    """Orient a comparison and reduce it to ``=``, ``<`` or ``<=``, possibly negated."""
    for node in walk(e):
        if isinstance(node, FuncApp):
            raise FragmentExceeded(f"non-ground function application {unparse(node)}")
    op, lhs, rhs = e.op, e.lhs, e.rhs
    flip = {">": "<", ">=": "<=", "<": ">", "<=": ">=", "=": "=", "!=": "!="}
    if isinstance(lhs, _CONST) and not isinstance(rhs, _CONST):
        op, lhs, rhs = flip[op], rhs, lhs
    elif not isinstance(rhs, _CONST) and unparse(lhs) > unparse(rhs):
        op, lhs, rhs = flip[op], rhs, lhs
    if op == "!=":
        return Not(Cmp("=", lhs, rhs))
    if op == ">":
        return Not(Cmp("<=", lhs, rhs))
    if op == ">=":
        return Not(Cmp("<", lhs, rhs))
    return Cmp(op, lhs, rhs)


def infer_kinds(exprs: list[Expr]) -> list[Expr]:
    """Give untyped comparison operands the kind of the terms they meet.

    Variables joined by comparisons form classes; a class is Text when any
    member is Text-typed or compared with a string, Numeric otherwise. Typed
    input passes through unchanged.
    """
    parent: dict[str, str] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    text: set[str] = set()
    for e in exprs:
        for node in walk(e):
            if not isinstance(node, Cmp):
                continue
            labels = [t.label for t in (node.lhs, node.rhs) if isinstance(t, Var)]
            for lab in labels:
                find(lab)
            if len(labels) == 2:
                parent[find(labels[0])] = find(labels[1])
            if any(isinstance(t, TextConst) or (isinstance(t, Var) and t.kind is Kind.TEXT)
                   for t in (node.lhs, node.rhs)):
                text.update(labels)
    text_roots = {find(lab) for lab in text}
    if not parent:
        return list(exprs)

    def kind(label):
        return Kind.TEXT if find(label) in text_roots else Kind.NUMERIC

    def term(t):
        if isinstance(t, Var) and t.kind is None:
            return Var(t.label, kind(t.label))
        return t

    def go(e):
        if isinstance(e, Cmp):
            return Cmp(e.op, term(e.lhs), term(e.rhs))
        if isinstance(e, Not):
            return Not(go(e.arg))
        if isinstance(e, (And, Or)):
            return type(e)(tuple(go(c) for c in e.args))
        if isinstance(e, Implies):
            return Implies(go(e.antecedent), go(e.consequent))
        return e

    return [go(e) for e in exprs]


def _atoms(e: Expr, out: dict) -> None:
    if isinstance(e, Var):
        if e.kind not in (None, Kind.BOOLEAN):
            raise FragmentExceeded(f"{e.label} used as a proposition")
        out.setdefault(unparse(e), e)
    elif isinstance(e, Cmp):
        a = normalize_atom(e)
        a = a.arg if isinstance(a, Not) else a
        out.setdefault(unparse(a), a)
    elif isinstance(e, Not):
        _atoms(e.arg, out)
    elif isinstance(e, (And, Or)):
        for c in e.args:
            _atoms(c, out)
    elif isinstance(e, Implies):
        _atoms(e.antecedent, out)
        _atoms(e.consequent, out)
    elif isinstance(e, BoolConst):
        pass
    else:
        raise FragmentExceeded(f"unexpected node {unparse(e)}")


@dataclass
class Encoding:
    atoms: list = field(default_factory=list)          # atom for variable i + 1
    clauses: list = field(default_factory=list)
    roots: list = field(default_factory=list)          # root literal per input (0 = constant true)
    n_vars: int = 0
    _ids: dict = field(default_factory=dict)
    _memo: dict = field(default_factory=dict)
    _true: int = 0

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def theory_atoms(self) -> dict[int, Cmp]:
        return {i + 1: a for i, a in enumerate(self.atoms) if isinstance(a, Cmp)}

    @property
    def bool_atoms(self) -> dict[int, str]:
        return {i + 1: a.label for i, a in enumerate(self.atoms) if isinstance(a, Var)}

    @property
    def order(self) -> list[int]:
        return list(range(1, self.n_vars + 1))

    def atom_var(self, e: Expr) -> int:
        return self._ids[unparse(e)]

    def _aux(self) -> int:
        self.n_vars += 1
        return self.n_vars

    def literal(self, e: Expr) -> int:
        if isinstance(e, Var):
            return self.atom_var(e)
        if isinstance(e, Cmp):
            a = normalize_atom(e)
            if isinstance(a, Not):
                return -self.atom_var(a.arg)
            return self.atom_var(a)
        if isinstance(e, Not):
            return -self.literal(e.arg)
        if isinstance(e, BoolConst):
            if not self._true:
                self._true = self._aux()
                self.clauses.append([self._true])
            return self._true if e.value else -self._true
        if e in self._memo:
            return self._memo[e]
        if isinstance(e, Implies):
            kids = [-self.literal(e.antecedent), self.literal(e.consequent)]
            conj = False
        else:
            kids = [self.literal(c) for c in e.args]
            conj = isinstance(e, And)
        x = self._aux()
        if conj:
            self.clauses.extend([-x, k] for k in kids)
            self.clauses.append([x] + [-k for k in kids])
        else:
            self.clauses.append([-x] + kids)
            self.clauses.extend([x, -k] for k in kids)
        self._memo[e] = x
        return x


def encode(exprs: list[Expr]) -> Encoding:
    """Clauses asserting every expression in ``exprs``.

    Atoms take variables ``1..n`` in order of their printed form; Tseitin
    auxiliaries follow. A constant-true input asserts nothing and a
    constant-false one adds the empty clause.
    """
    exprs = infer_kinds(exprs)
    found: dict[str, Expr] = {}
    for e in exprs:
        _atoms(e, found)
    enc = Encoding()
    for key in sorted(found):
        enc.atoms.append(found[key])
        enc._ids[key] = len(enc.atoms)
    enc.n_vars = len(enc.atoms)
    for e in exprs:
        if isinstance(e, BoolConst):
            enc.roots.append(0)
            if not e.value:
                enc.clauses.append([])
            continue
        root = enc.literal(e)
        enc.roots.append(root)
        enc.clauses.append([root])
    return enc
