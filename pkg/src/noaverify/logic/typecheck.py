from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import KindMismatch, NonBooleanRoot, UnknownSymbol
from .nodes import (ORDER_OPS, And, BoolConst, Cmp, Expr, FuncApp, Implies, Kind, Not,
                    NumConst, Or, TextConst, Var)
from .printer import unparse


@dataclass(frozen=True)
class FunctionSig:
    args: tuple[Kind, ...]
    result: Kind


# Lookup tables are the only functions in the fragment.
DEFAULT_FUNCTIONS = {"FPL": FunctionSig((Kind.NUMERIC,), Kind.NUMERIC)}


def as_vocab(vocab) -> dict[str, Kind]:
    if vocab is None:
        return {}
    if isinstance(vocab, Mapping):
        return {k: Kind(v) for k, v in vocab.items()}
    return {label: Kind(kind) for label, kind in vocab}


def resolve_kinds(e: Expr, vocab=None, functions=None) -> Expr:
    """Fill in variable kinds from ``vocab`` and, failing that, from context."""
    v = as_vocab(vocab)
    fns = DEFAULT_FUNCTIONS if functions is None else functions
    return _resolve(e, Kind.BOOLEAN, v, fns)


def _guess(e: Expr, vocab, fns) -> Kind | None:
    if isinstance(e, NumConst):
        return Kind.NUMERIC
    if isinstance(e, TextConst):
        return Kind.TEXT
    if isinstance(e, FuncApp):
        sig = fns.get(e.name)
        return sig.result if sig else None
    if isinstance(e, Var):
        k = vocab.get(e.label, e.kind)
        return k if k in (Kind.NUMERIC, Kind.TEXT) else None
    return None


def _resolve(e: Expr, want, vocab, fns) -> Expr:
    if isinstance(e, Var):
        kind = vocab.get(e.label) or e.kind or want
        return e if kind == e.kind else Var(e.label, kind)
    if isinstance(e, Not):
        return Not(_resolve(e.arg, Kind.BOOLEAN, vocab, fns))
    if isinstance(e, (And, Or)):
        return type(e)(tuple(_resolve(a, Kind.BOOLEAN, vocab, fns) for a in e.args))
    if isinstance(e, Implies):
        return Implies(_resolve(e.antecedent, Kind.BOOLEAN, vocab, fns),
                       _resolve(e.consequent, Kind.BOOLEAN, vocab, fns))
    if isinstance(e, Cmp):
        if e.op in ORDER_OPS:
            sort = Kind.NUMERIC
        else:
            sort = _guess(e.lhs, vocab, fns) or _guess(e.rhs, vocab, fns)
        return Cmp(e.op, _resolve(e.lhs, sort, vocab, fns), _resolve(e.rhs, sort, vocab, fns))
    if isinstance(e, FuncApp):
        sig = fns.get(e.name)
        wants = sig.args if sig and len(sig.args) == len(e.args) else (None,) * len(e.args)
        return FuncApp(e.name, tuple(_resolve(a, w, vocab, fns) for a, w in zip(e.args, wants)))
    return e


def typecheck(e: Expr, vocab, functions=None) -> Kind:
    """Check ``e`` against ``vocab``; returns ``Kind.BOOLEAN`` or raises."""
    v = as_vocab(vocab)
    fns = DEFAULT_FUNCTIONS if functions is None else functions
    got = _sort(e, v, fns)
    if got != Kind.BOOLEAN:
        raise NonBooleanRoot(got)
    return got


def _sort(e: Expr, vocab: dict, fns) -> Kind:
    if isinstance(e, Var):
        if e.label not in vocab:
            raise UnknownSymbol(e.label)
        kind = vocab[e.label]
        if e.kind is not None and e.kind != kind:
            raise KindMismatch(e.label, kind, e.kind)
        return kind
    if isinstance(e, NumConst):
        return Kind.NUMERIC
    if isinstance(e, TextConst):
        return Kind.TEXT
    if isinstance(e, BoolConst):
        return Kind.BOOLEAN
    if isinstance(e, FuncApp):
        sig = fns.get(e.name)
        if sig is None:
            raise UnknownSymbol(e.name)
        if len(sig.args) != len(e.args):
            raise KindMismatch(unparse(e), f"{len(sig.args)} argument(s)", len(e.args))
        for arg, want in zip(e.args, sig.args):
            got = _sort(arg, vocab, fns)
            if got != want:
                raise KindMismatch(unparse(arg), want, got)
        return sig.result
    if isinstance(e, Cmp):
        lhs, rhs = _sort(e.lhs, vocab, fns), _sort(e.rhs, vocab, fns)
        if e.op in ORDER_OPS:
            for side, got in ((e.lhs, lhs), (e.rhs, rhs)):
                if got != Kind.NUMERIC:
                    raise KindMismatch(unparse(side), Kind.NUMERIC, got)
        else:
            if lhs not in (Kind.NUMERIC, Kind.TEXT):
                raise KindMismatch(unparse(e.lhs), "Numeric or Text", lhs)
            if rhs != lhs:
                raise KindMismatch(unparse(e.rhs), lhs, rhs)
        return Kind.BOOLEAN
    if isinstance(e, (Not, And, Or, Implies)):
        parts = (e.arg,) if isinstance(e, Not) else (
            (e.antecedent, e.consequent) if isinstance(e, Implies) else e.args)
        for part in parts:
            got = _sort(part, vocab, fns)
            if got != Kind.BOOLEAN:
                raise KindMismatch(unparse(part), Kind.BOOLEAN, got)
        return Kind.BOOLEAN
    raise TypeError(f"not a logic node: {e!r}")


