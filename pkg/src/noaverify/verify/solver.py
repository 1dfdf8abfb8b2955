"""Satisfiability of a constraint set, with witness checking and a search trace."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import VerificationError
from ..logic import Expr, Kind, evaluate, unparse, variables
from ..search import EVENT_NAMES, search
from .encode import Encoding, encode
from .ground import simplify, substitute
from .items import ConstraintItem
from .theory import Theory, fresh_token, is_text_atom

SAT, UNSAT = "SAT", "UNSAT"


@dataclass(frozen=True)
class TraceEvent:
    event: str
    detail: str
    level: int

    def __str__(self) -> str:
        return f"{self.event:<9} {self.detail} @{self.level}"

    def to_json(self) -> dict:
        return {"event": self.event, "detail": self.detail, "level": self.level}


@dataclass
class SolveResult:
    status: str
    witness: dict = field(default_factory=dict)
    trace: list[TraceEvent] = field(default_factory=list)
    n_vars: int = 0
    n_clauses: int = 0
    theory_calls: int = 0

    @property
    def sat(self) -> bool:
        return self.status == SAT


def _literal_text(enc: Encoding, lit: int) -> str:
    var = abs(lit)
    if var <= enc.n_atoms:
        text = unparse(enc.atoms[var - 1])
    else:
        text = f"aux{var}"
    return text if lit > 0 else f"!({text})"


def _describe(enc: Encoding, code: int, payload) -> str:
    name = EVENT_NAMES[code]
    if name == "lemma":
        return " | ".join(_literal_text(enc, l) for l in payload) or "(empty)"
    if name == "conflict":
        return ""
    if name == "backtrack":
        return _literal_text(enc, payload)
    return _literal_text(enc, payload)


def _defaults(items, witness: dict) -> None:
    counter = 1000
    for it in items:
        for v in sorted(variables(it.expr), key=lambda v: v.label):
            if v.label in witness:
                continue
            if v.kind is Kind.NUMERIC:
                witness[v.label] = Fraction(0)
            elif v.kind is Kind.TEXT:
                witness[v.label] = fresh_token(counter)
                counter += 1
            else:
                witness[v.label] = False


def prepare(items: list[ConstraintItem], tables=None) -> list[Expr]:
    """Simplified expressions with ground table lookups evaluated."""
    return [simplify(substitute(it.expr, {}, tables, set())) for it in items]


def is_sat(items: list[ConstraintItem], tables=None, backend=None) -> bool:
    return solve(items, tables, trace=False, backend=backend, check=False).sat


def solve(items: list[ConstraintItem], tables=None, trace: bool = False, backend=None,
          check: bool = True) -> SolveResult:
    """Decide the conjunction of ``items``.

    On SAT the witness assigns every variable of the items and is re-checked
    by direct evaluation; a failure there is an internal error, never a
    verdict.
    """
    exprs = prepare(items, tables)
    enc = encode(exprs)
    atoms = enc.theory_atoms
    theory = Theory(atoms) if atoms else None
    sat, values, events = search(enc.n_vars, enc.clauses, enc.order, sorted(atoms), theory,
                                 record=trace, backend=backend)
    steps = [TraceEvent(EVENT_NAMES[c], _describe(enc, c, p), lvl) for c, p, lvl in events]
    result = SolveResult(SAT if sat else UNSAT, trace=steps, n_vars=enc.n_vars,
                         n_clauses=len(enc.clauses), theory_calls=theory.calls if theory else 0)
    if not sat:
        return result
    witness: dict = {}
    for var, label in enc.bool_atoms.items():
        witness[label] = values[var - 1] > 0
    if theory is not None:
        lits = [v if values[v - 1] > 0 else -v for v in sorted(atoms) if values[v - 1] != 0]
        numeric, text = set(), set()
        for a in atoms.values():
            bucket = text if is_text_atom(a) else numeric
            bucket.update(v.label for v in variables(a))
        witness.update(theory.witness(lits, sorted(numeric), sorted(text)))
    _defaults(items, witness)
    if check:
        for it in items:
            if evaluate(it.expr, witness, tables) is not True:
                raise VerificationError(f"witness does not satisfy {it.tag}: {unparse(it.expr)}")
    result.witness = witness
    return result


def minimize_core(items: list[ConstraintItem], tables=None, backend=None) -> list[ConstraintItem]:
    """Deletion-based minimal unsatisfiable subset, scanning ``items`` in order.

    Every proper subset of the result is satisfiable.
    """
    core = list(items)
    if is_sat(core, tables, backend):
        raise ValueError("constraint set is satisfiable; there is no core")
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        if not is_sat(trial, tables, backend):
            core = trial
        else:
            i += 1
    return core


__all__ = ["SAT", "UNSAT", "SolveResult", "TraceEvent", "solve", "is_sat", "minimize_core",
           "prepare"]
