"""Typed AST for the rule fragment.

Nodes are frozen dataclasses so structural equality and hashing come for free.
Variables carry an optional :class:`Kind`; ``None`` means the parser could not
infer it from context and no vocabulary was supplied.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class Kind(str, enum.Enum):
    BOOLEAN = "Boolean"
    NUMERIC = "Numeric"
    TEXT = "Text"
    ENTITY = "Entity"

    @classmethod
    def parse(cls, raw: str) -> "Kind":
        # Appendix-style ontology files spell text concepts "String".
        aliases = {"string": cls.TEXT, "text": cls.TEXT, "boolean": cls.BOOLEAN,
                   "bool": cls.BOOLEAN, "numeric": cls.NUMERIC, "number": cls.NUMERIC,
                   "real": cls.NUMERIC, "int": cls.NUMERIC, "entity": cls.ENTITY}
        try:
            return aliases[raw.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown concept type {raw!r}") from None


@dataclass(frozen=True)
class Var:
    label: str
    kind: Kind | None = None


@dataclass(frozen=True)
class NumConst:
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class TextConst:
    value: str


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class FuncApp:
    name: str
    args: tuple


@dataclass(frozen=True)
class Cmp:
    op: str
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Implies:
    antecedent: "Expr"
    consequent: "Expr"


Expr = Union[Var, NumConst, TextConst, BoolConst, FuncApp, Cmp, Not, And, Or, Implies]
Term = Union[Var, NumConst, TextConst, FuncApp]

CMP_OPS = (">", ">=", "<", "<=", "=", "!=")
ORDER_OPS = frozenset({">", ">=", "<", "<="})
FLIPPED = {">": "<", ">=": "<=", "<": ">", "<=": ">=", "=": "=", "!=": "!="}
NEGATED = {">": "<=", ">=": "<", "<": ">=", "<=": ">", "=": "!=", "!=": "="}

CONSTANTS = (NumConst, TextConst, BoolConst)


def BoolVar(label: str) -> Var:
    return Var(label, Kind.BOOLEAN)


def NumVar(label: str) -> Var:
    return Var(label, Kind.NUMERIC)


def TextVar(label: str) -> Var:
    return Var(label, Kind.TEXT)


def children(e: Expr) -> tuple:
    if isinstance(e, (And, Or, FuncApp)):
        return e.args
    if isinstance(e, Not):
        return (e.arg,)
    if isinstance(e, Implies):
        return (e.antecedent, e.consequent)
    if isinstance(e, Cmp):
        return (e.lhs, e.rhs)
    return ()


def walk(e: Expr):
    """Yield every node of ``e`` in pre-order."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def free_symbols(e: Expr, functions: bool = True) -> set[str]:
    """Labels of every variable in ``e``, plus function names unless disabled."""
    out = set()
    for node in walk(e):
        if isinstance(node, Var):
            out.add(node.label)
        elif functions and isinstance(node, FuncApp):
            out.add(node.name)
    return out


def variables(e: Expr) -> set[Var]:
    return {node for node in walk(e) if isinstance(node, Var)}


def is_ground(e: Expr) -> bool:
    return not any(isinstance(node, Var) for node in walk(e))
