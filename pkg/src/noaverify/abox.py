"""Case records and the per-case assertion layer."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from .corpus import normalize_citation
from .errors import CaseFormatError, FactKindMismatch, UnmappableExplanation
from .extraction import (ClauseSpan, FormalizationRequest, formalize, match_concepts, segment)
from .extraction.concepts import MATCH_FLOOR
from .logic import (BoolConst, Cmp, Expr, Kind, Not, NumConst, TextConst, Var, format_number,
                    free_symbols, unparse)
from .ontology import OntologyGraph

log = logging.getLogger(__name__)

OUTCOME = "Applicant_Eligible"
ADVERSE_ACTIONS = ("denial", "termination", "reduction")
ACTIONS = ADVERSE_ACTIONS + ("approval",)
LEGALITIES = ("upheld", "overturned")


@dataclass(frozen=True)
class GroundTruth:
    legality: str
    violated_citations: tuple[str, ...] = ()


@dataclass(frozen=True)
class Expectation:
    """Hand-derived solver outcome committed beside a fixture case."""
    status: str
    core_citations: tuple[str, ...] = ()
    derivation: str = ""


@dataclass
class CaseRecord:
    case_id: str
    action: str
    facts: dict
    explanation: str
    ground_truth: GroundTruth | None = None
    category: str | None = None
    expected: Expectation | None = None
    inconsistent: bool = False

    def to_json(self) -> dict:
        out: dict = {"case_id": self.case_id, "action": self.action,
                     "facts": {k: fact_to_json(v) for k, v in sorted(self.facts.items())},
                     "explanation": self.explanation}
        if self.category is not None:
            out["category"] = self.category
        if self.ground_truth is not None:
            out["ground_truth"] = {"legality": self.ground_truth.legality,
                                   "violated_citations": list(self.ground_truth.violated_citations)}
        if self.expected is not None:
            out["expected"] = {"status": self.expected.status,
                               "core_citations": list(self.expected.core_citations),
                               "derivation": self.expected.derivation}
        return out


def fact_to_json(value):
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        text = format_number(value)
        return float(text) if "/" not in text else text
    return value


def _fact_value(label: str, raw):
    if isinstance(raw, bool) or isinstance(raw, str):
        return raw
    if isinstance(raw, (int, Decimal, Fraction)):
        return Fraction(raw)
    if isinstance(raw, float):
        return Fraction(str(raw))
    raise FactKindMismatch(label, f"unsupported value {raw!r}")


def case_from_json(data: dict) -> CaseRecord:
    try:
        case_id, action = str(data["case_id"]), str(data["action"]).lower()
        facts_raw, explanation = data.get("facts", {}), str(data.get("explanation", ""))
    except KeyError as exc:
        raise CaseFormatError(f"case is missing {exc.args[0]!r}") from None
    if action not in ACTIONS:
        raise CaseFormatError(f"{case_id}: unknown action {action!r}")
    facts = {label: _fact_value(label, v) for label, v in facts_raw.items()}
    truth = None
    inconsistent = False
    if data.get("ground_truth"):
        gt = data["ground_truth"]
        legality = str(gt.get("legality", "")).lower()
        if legality not in LEGALITIES:
            raise CaseFormatError(f"{case_id}: unknown legality {legality!r}")
        cites = tuple(normalize_citation(c) for c in gt.get("violated_citations", ()))
        truth = GroundTruth(legality, cites)
        if cites and legality != "overturned":
            inconsistent = True
            log.warning("%s: violated citations listed for an upheld case", case_id)
    expected = None
    if data.get("expected"):
        ex = data["expected"]
        expected = Expectation(str(ex["status"]).upper(),
                               tuple(normalize_citation(c) for c in ex.get("core_citations", ())),
                               ex.get("derivation", ""))
    return CaseRecord(case_id, action, facts, explanation, truth, data.get("category"),
                      expected, inconsistent)


def load_case(path: str | Path) -> CaseRecord:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh, parse_float=Decimal)
    except OSError as exc:
        raise CaseFormatError(f"cannot read case {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CaseFormatError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise CaseFormatError(f"{path} must hold a JSON object")
    return case_from_json(data)


def load_dataset(directory: str | Path) -> list[CaseRecord]:
    """Every ``*.json`` case file in ``directory``, sorted by case id."""
    cases = [load_case(p) for p in sorted(Path(directory).glob("*.json"))]
    return sorted(cases, key=lambda c: c.case_id)


def validate_facts(facts: dict, onto: OntologyGraph) -> None:
    for label, value in facts.items():
        if label == OUTCOME:
            raise FactKindMismatch(label, "the outcome symbol cannot be a fact")
        kind = onto.kind_of(label)
        if kind is None:
            raise FactKindMismatch(label, "not an ontology concept")
        ok = {Kind.BOOLEAN: isinstance(value, bool),
              Kind.NUMERIC: isinstance(value, Fraction),
              Kind.TEXT: isinstance(value, str)}.get(kind, False)
        if not ok:
            raise FactKindMismatch(label, f"expected a {kind.value} value, got {value!r}")


def fact_constraint(label: str, value) -> Expr:
    """Boolean facts become literals; numeric and text facts become equalities."""
    if isinstance(value, bool):
        return Var(label, Kind.BOOLEAN) if value else Not(Var(label, Kind.BOOLEAN))
    if isinstance(value, str):
        return Cmp("=", Var(label, Kind.TEXT), TextConst(value))
    return Cmp("=", Var(label, Kind.NUMERIC), NumConst(value))


def outcome_assertion(action: str) -> Expr:
    eligible = Var(OUTCOME, Kind.BOOLEAN)
    return Not(eligible) if action in ADVERSE_ACTIONS else eligible


@dataclass
class AssertionSet:
    case_id: str
    facts: dict
    fact_constraints: tuple[Expr, ...]
    explanation_rules: tuple[tuple[Expr, ClauseSpan], ...]
    outcome_assertion: Expr
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "case_id": self.case_id,
            "fact_constraints": [unparse(e) for e in self.fact_constraints],
            "explanation_rules": [{"logic": unparse(e), "span": s.index, "text": s.text}
                                  for e, s in self.explanation_rules],
            "outcome": unparse(self.outcome_assertion),
            "warnings": list(self.warnings),
        }


def build_assertions(case: CaseRecord, onto: OntologyGraph, provider, formalizer,
                     floor: float = MATCH_FLOOR, max_attempts: int = 3) -> AssertionSet:
    validate_facts(case.facts, onto)
    facts = tuple(fact_constraint(k, case.facts[k]) for k in sorted(case.facts))
    rules: list[tuple[Expr, ClauseSpan]] = []
    warnings: list[str] = []
    entities = frozenset(onto.entities())
    for span in segment(case.explanation, "explanation", case.case_id):
        match = match_concepts(span, onto, provider, floor)
        if match.unmappable:
            warnings.append(f"clause {span.index} maps to no concept: {span.text!r}")
            continue
        request = FormalizationRequest(tuple((l, onto.kind_of(l)) for l in match.labels),
                                       span.text, "abox_directed", entities)
        result = formalize(request, formalizer, max_attempts)
        if not result.ok:
            warnings.append(f"clause {span.index} not formalized ({result.failure}): {span.text!r}")
            continue
        for expr in result.parsed:
            if isinstance(expr, BoolConst):
                continue
            rules.append((expr, span))
    if not rules:
        raise UnmappableExplanation(f"{case.case_id}: no explanation clause produced a rule")
    return AssertionSet(case.case_id, dict(case.facts), facts, tuple(rules),
                        outcome_assertion(case.action), warnings)


def assertion_vocabulary(aset: AssertionSet) -> set[str]:
    vocab = set(free_symbols(aset.outcome_assertion))
    for expr, _ in aset.explanation_rules:
        vocab |= free_symbols(expr)
    return vocab
