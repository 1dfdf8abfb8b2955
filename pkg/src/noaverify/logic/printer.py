from __future__ import annotations

from fractions import Fraction

from .nodes import (And, BoolConst, Cmp, Expr, FuncApp, Implies, Not, NumConst, Or,
                    TextConst, Var)


def format_number(value: Fraction) -> str:
    """Exact decimal when the denominator allows it, ``n/d`` otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    scaled = value * 10 ** digits
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled.numerator), 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def unparse(e: Expr) -> str:
    """Render ``e`` in the function-call surface syntax accepted by ``parse``."""
    if isinstance(e, Var):
        return e.label
    if isinstance(e, NumConst):
        return format_number(e.value)
    if isinstance(e, TextConst):
        return _quote(e.value)
    if isinstance(e, BoolConst):
        return "True" if e.value else "False"
    if isinstance(e, FuncApp):
        return f"{e.name}({', '.join(unparse(a) for a in e.args)})"
    if isinstance(e, Cmp):
        return f"{unparse(e.lhs)} {e.op} {unparse(e.rhs)}"
    if isinstance(e, Not):
        return f"Not({unparse(e.arg)})"
    if isinstance(e, And):
        return f"And({', '.join(unparse(a) for a in e.args)})"
    if isinstance(e, Or):
        return f"Or({', '.join(unparse(a) for a in e.args)})"
    if isinstance(e, Implies):
        return f"Implies({unparse(e.antecedent)}, {unparse(e.consequent)})"
    raise TypeError(f"not a logic node: {e!r}")

