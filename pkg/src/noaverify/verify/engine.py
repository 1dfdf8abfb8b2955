"""End-to-end verification of one case against the retrieved statutes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..abox import OUTCOME, AssertionSet, CaseRecord, assertion_vocabulary, build_assertions
from ..errors import EmptyEnvironment, VerificationError
from ..extraction.concepts import MATCH_FLOOR
from ..logic import Implies, evaluate, free_symbols, format_number, unparse
from ..rulestore import RuleRecord, RuleStore
from .ground import ground
from .items import ConstraintItem, Tag
from .solver import SAT, UNSAT, TraceEvent, minimize_core, solve


def anchor_citations(expr, rules: list[RuleRecord]) -> tuple[str, ...]:
    """Citations of the rules sharing the most non-outcome symbols with ``expr``."""
    symbols = free_symbols(expr, functions=False) - {OUTCOME}
    best, cites = 0, set()
    for r in rules:
        overlap = len(symbols & (r.vocabulary - {OUTCOME}))
        if overlap > best:
            best, cites = overlap, {r.citation}
        elif overlap == best and overlap > 0:
            cites.add(r.citation)
    return tuple(sorted(cites))


def build_items(aset: AssertionSet, rules: list[RuleRecord]) -> list[ConstraintItem]:
    """The constraint set in deletion order: rules, facts, clauses, claims, outcome."""
    items = [ConstraintItem(Tag("Rule", r.id, (r.citation,)), r.logic, r.text)
             for r in sorted(rules, key=lambda r: (r.citation, r.id))]
    for label, expr in zip(sorted(aset.facts), aset.fact_constraints):
        items.append(ConstraintItem(Tag("Fact", label), expr, unparse(expr)))
    per_span: dict[int, int] = {}
    for _, span in aset.explanation_rules:
        per_span[span.index] = per_span.get(span.index, 0) + 1
    seen: dict[int, int] = {}
    clauses, claims = [], []
    for expr, span in aset.explanation_rules:
        k = seen[span.index] = seen.get(span.index, 0) + 1
        key = str(span.index) if per_span[span.index] == 1 else f"{span.index}.{k}"
        cites = anchor_citations(expr, rules)
        clauses.append(ConstraintItem(Tag("ExplanationClause", key, cites), expr, span.text))
        if isinstance(expr, Implies) and expr.consequent == aset.outcome_assertion:
            claims.append(ConstraintItem(Tag("Claim", key, cites), expr.antecedent, span.text))
    items += clauses + claims
    items.append(ConstraintItem(Tag("Outcome"), aset.outcome_assertion, unparse(aset.outcome_assertion)))
    return items


def _value_json(v):
    if isinstance(v, Fraction):
        return format_number(v)
    return v


@dataclass
class VerificationReport:
    case_id: str
    status: str
    witness: dict
    core: list[ConstraintItem]
    items: list[ConstraintItem]
    rules: list[RuleRecord]
    trace: list[TraceEvent] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def citations(self) -> list[str]:
        return sorted({c for it in self.core for c in it.citations})

    @property
    def satisfied(self) -> list[RuleRecord]:
        if self.status == SAT:
            return list(self.rules)
        implicated = set(self.citations) | {it.tag.key for it in self.core if it.tag.kind == "Rule"}
        return [r for r in self.rules if r.id not in implicated and r.citation not in implicated]

    def violated_rules(self) -> list[RuleRecord]:
        ids = {it.tag.key for it in self.core if it.tag.kind == "Rule"}
        cites = set(self.citations)
        return [r for r in self.rules if r.id in ids or r.citation in cites]

    def to_json(self, include_trace: bool = True) -> dict:
        rule_text = {r.citation: r.text for r in reversed(self.rules)}
        out: dict = {"case_id": self.case_id, "status": self.status}
        if self.status == SAT:
            out["witness"] = {k: _value_json(v) for k, v in sorted(self.witness.items())}
        else:
            out["core"] = [{
                "tag": str(it.tag),
                "citation": list(it.citations),
                "rule_text": it.text if it.tag.kind == "Rule" else
                "; ".join(rule_text[c] for c in it.citations if c in rule_text),
                "logic": unparse(it.expr),
                "facts_used": list(it.facts_used),
            } for it in self.core]
        out["citations"] = self.citations
        out["satisfied"] = [{"id": r.id, "citation": r.citation} for r in self.satisfied]
        out["warnings"] = list(self.warnings)
        if include_trace:
            out["trace"] = [t.to_json() for t in self.trace]
        return out


def verify_assertions(aset: AssertionSet, store: RuleStore, tables=None,
                      include_permission: bool = False, trace: bool = True,
                      backend=None) -> VerificationReport:
    vocab = assertion_vocabulary(aset) - {OUTCOME}
    rules = [r for r in store.retrieve(vocab) if include_permission or r.modality != "Permission"]
    if not rules:
        raise EmptyEnvironment(f"{aset.case_id}: no statute shares a symbol with the explanation")
    items = build_items(aset, rules)
    grounded = ground(items, aset.facts, tables)
    result = solve(grounded, tables, trace=trace, backend=backend)
    core = [] if result.sat else minimize_core(grounded, tables, backend)
    witness = {**aset.facts, **result.witness} if result.sat else {}
    for it in items if result.sat else ():
        # the un-grounded set must hold too, now that facts are back in the witness
        if evaluate(it.expr, witness, tables) is not True:
            raise VerificationError(f"witness does not satisfy {it.tag}")
    return VerificationReport(aset.case_id, result.status, witness, core, grounded, rules,
                              result.trace, list(aset.warnings))


def verify_case(case: CaseRecord, store: RuleStore, onto, provider, formalizer, tables=None,
                include_permission: bool = False, trace: bool = True, floor: float = MATCH_FLOOR,
                backend=None) -> VerificationReport:
    """assertions -> retrieval -> grounding -> solving -> (on UNSAT) core minimization."""
    aset = build_assertions(case, onto, provider, formalizer, floor)
    return verify_assertions(aset, store, tables, include_permission, trace, backend)


__all__ = ["VerificationReport", "verify_case", "verify_assertions", "build_items",
           "anchor_citations", "SAT", "UNSAT"]
