"""Recursive-descent parser for the ``Op(arg, arg)`` rule syntax.

Comparisons are written infix inside argument positions
(``GrossIncome > IncomeThreshold``); ``Equals(a, b)``, ``a = b`` and ``a == b``
all produce the same node.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ArityError, LogicSyntaxError
from .nodes import And, BoolConst, Cmp, Expr, FuncApp, Implies, Not, NumConst, Or, TextConst, Var

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>-?\d+/\d+|-?\d+(?:\.\d+)?)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>>=|<=|!=|==|≠|≥|≤|=|>|<)
  | (?P<punct>[(),])
""", re.VERBOSE)

_OP_ALIASES = {"==": "=", "≠": "!=", "≥": ">=", "≤": "<="}
_CONNECTIVES = {"Implies", "And", "Or", "Not", "Equals"}


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise LogicSyntaxError(pos, {"token"}, source[pos])
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            if kind == "punct":
                kind = text
            elif kind == "op":
                text = _OP_ALIASES.get(text, text)
            tokens.append((kind, text, pos))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


def _number(text: str) -> Fraction:
    # Fraction parses decimal strings exactly; no float round-trip.
    return Fraction(text)


def _unescape(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text[1:-1])


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, *kinds: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] not in kinds:
            raise LogicSyntaxError(tok[2], kinds, tok[1] or "<end>")
        self.i += 1
        return tok

    def expr(self) -> Expr:
        lhs = self.primary()
        if self.peek()[0] == "op":
            op = self.take("op")[1]
            rhs = self.primary()
            return Cmp(op, lhs, rhs)
        return lhs

    def arguments(self) -> list[Expr]:
        self.take("(")
        args = [self.expr()]
        while self.peek()[0] == ",":
            self.take(",")
            args.append(self.expr())
        self.take(")")
        return args

    def primary(self) -> Expr:
        kind, text, pos = self.peek()
        if kind == "number":
            self.i += 1
            return NumConst(_number(text))
        if kind == "string":
            self.i += 1
            return TextConst(_unescape(text))
        if kind != "ident":
            raise LogicSyntaxError(pos, {"ident", "number", "string"}, text or "<end>")
        self.i += 1
        if text in ("True", "False"):
            return BoolConst(text == "True")
        if self.peek()[0] != "(":
            if text in _CONNECTIVES:
                raise LogicSyntaxError(self.peek()[2], {"("}, self.peek()[1] or "<end>")
            return Var(text)
        args = self.arguments()
        n = len(args)
        if text == "Implies":
            if n != 2:
                raise ArityError("Implies", n)
            return Implies(args[0], args[1])
        if text in ("And", "Or"):
            if n < 2:
                raise ArityError(text, n)
            return (And if text == "And" else Or)(tuple(args))
        if text == "Not":
            if n != 1:
                raise ArityError("Not", n)
            return Not(args[0])
        if text == "Equals":
            if n != 2:
                raise ArityError("Equals", n)
            return Cmp("=", args[0], args[1])
        return FuncApp(text, tuple(args))


def parse(source: str, vocab=None, functions=None) -> Expr:
    """Parse ``source`` into an AST.

    Variable kinds come from ``vocab`` (label -> Kind mapping or iterable of
    ``(label, kind)`` pairs) when given; otherwise they are inferred from the
    position the variable occupies, and left as ``None`` where that is
    ambiguous (``A = B`` between two bare variables).
    """
    p = _Parser(source)
    tree = p.expr()
    p.take("end")
    from .typecheck import resolve_kinds

    return resolve_kinds(tree, vocab, functions)
