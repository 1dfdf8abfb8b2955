"""Citation-anchored TBox rules and vocabulary-overlap retrieval."""

from __future__ import annotations

import copy
import json
import logging
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable

from .corpus import validate_citation
from .errors import DuplicateId, DuplicateRule, RuleStoreError, TypecheckError, TypecheckFailed
from .logic import Expr, canonicalize, free_symbols, parse, typecheck, unparse
from .logic.typecheck import as_vocab

log = logging.getLogger(__name__)

MODALITIES = ("Obligation", "Permission", "Prohibition")


@dataclass(frozen=True)
class RuleRecord:
    id: str
    citation: str
    text: str
    logic: Expr
    applies_to: tuple[str, ...] = ()
    determines: tuple[str, ...] = ("Applicant_Eligible",)
    rule_class: str = ""
    subclass: str = ""
    modality: str = "Obligation"
    concept_type: str = "Boolean"

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self.applies_to) | frozenset(self.determines)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "citation": self.citation,
            "hasText": self.text,
            "class": self.rule_class,
            "subclass": self.subclass,
            "appliesTo": list(self.applies_to),
            "determines": list(self.determines),
            "hasLogic": unparse(self.logic),
            "hasModality": self.modality,
            "conceptType": self.concept_type,
        }

    @classmethod
    def from_json(cls, data: dict, vocab=None, functions=None) -> "RuleRecord":
        try:
            logic = parse(data["hasLogic"], vocab, functions)
            return cls(
                id=data["id"],
                citation=validate_citation(data["citation"]),
                text=data.get("hasText", ""),
                logic=logic,
                applies_to=tuple(data.get("appliesTo", ())),
                determines=tuple(data.get("determines", ("Applicant_Eligible",))),
                rule_class=data.get("class", ""),
                subclass=data.get("subclass", ""),
                modality=data.get("hasModality", "Obligation"),
                concept_type=data.get("conceptType", "Boolean"),
            )
        except KeyError as exc:
            raise RuleStoreError(f"rule entry lacks {exc.args[0]!r}") from None


@dataclass
class RuleStore:
    """In-memory rule collection with a symbol index.

    ``vocab`` is the ontology vocabulary every rule must typecheck against.
    ``corpus_citations`` (optional) is used only to warn about rules whose
    citation is not in the ingested corpus.
    """

    vocab: dict = field(default_factory=dict)
    functions: dict | None = None
    corpus_citations: frozenset[str] | None = None
    rules: dict[str, RuleRecord] = field(default_factory=dict)
    index: dict[str, set[str]] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.vocab = as_vocab(self.vocab)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.ordered())

    def ordered(self) -> list[RuleRecord]:
        return sorted(self.rules.values(), key=lambda r: (r.citation, r.id))

    def add_rule(self, record: RuleRecord) -> str:
        if record.id in self.rules:
            raise DuplicateId(record.id)
        if record.modality not in MODALITIES:
            raise TypecheckFailed(f"unknown modality {record.modality!r}")
        try:
            typecheck(record.logic, self.vocab, self.functions)
        except TypecheckError as exc:
            raise TypecheckFailed(str(exc)) from None
        undeclared = free_symbols(record.logic, functions=False) - record.vocabulary
        if undeclared:
            raise TypecheckFailed(f"symbols not listed in appliesTo/determines: {sorted(undeclared)}")
        logic = canonicalize(record.logic)
        for other in self.rules.values():
            if other.citation == record.citation and other.logic == logic:
                raise DuplicateRule(other.id)
        if self.corpus_citations is not None and record.citation not in self.corpus_citations:
            self.warnings.append(f"{record.id} cites {record.citation}, which is not in the corpus")
        stored = replace(record, logic=logic)
        self.rules[record.id] = stored
        for symbol in stored.vocabulary:
            self.index.setdefault(symbol, set()).add(record.id)
        return record.id

    def retrieve(self, assertion_vocab: Iterable[str]) -> list[RuleRecord]:
        """Rules whose ``appliesTo`` or ``determines`` list meets ``assertion_vocab``."""
        hits: set[str] = set()
        for symbol in set(assertion_vocab):
            hits |= self.index.get(symbol, set())
        return sorted((self.rules[i] for i in hits), key=lambda r: (r.citation, r.id))

    def snapshot(self) -> "RuleStore":
        return copy.deepcopy(self)

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.ordered()]

    @classmethod
    def from_json(cls, entries: list[dict], vocab, functions=None,
                  corpus_citations=None) -> "RuleStore":
        store = cls(vocab, functions, corpus_citations)
        for entry in entries:
            store.add_rule(RuleRecord.from_json(entry, store.vocab, functions))
        return store


def load_rules(path: str | Path | None, vocab, functions=None, corpus_citations=None) -> RuleStore:
    """Read a rule file; without a path, the bundled rule set."""
    if path is None:
        text = resources.files("noaverify.data").joinpath("rules.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    entries = json.loads(text)
    if not isinstance(entries, list):
        raise RuleStoreError("rule file must hold a JSON array")
    return RuleStore.from_json(entries, vocab, functions, corpus_citations)


def save_rules(store: RuleStore, path: str | Path) -> None:
    Path(path).write_text(json.dumps(store.to_json(), indent=2) + "\n", encoding="utf-8")
