"""Two-level concept hierarchy: eligibility domains over legally operative concepts."""

from __future__ import annotations

import copy
import itertools
import json
import logging
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

import numpy as np

from .errors import DuplicateLabel, MalformedSeed, MissingEmbedding, UnknownDomain
from .logic import Kind

log = logging.getLogger(__name__)

DUPLICATE_THRESHOLD = 0.85
LABEL_RE = re.compile(r"[A-Za-z]+(?:_[A-Za-z]+)*")

_NUMERIC_SUFFIXES = ("Income", "Threshold", "Resources", "Size", "Age", "Deductions")
_TEXT_SUFFIXES = ("County", "State")


def default_kind(label: str) -> Kind:
    """Kind assigned to a concept whose source gives no ``conceptType``."""
    tail = label.rsplit("_", 1)[-1]
    if tail.endswith(_NUMERIC_SUFFIXES):
        return Kind.NUMERIC
    if tail.endswith(_TEXT_SUFFIXES):
        return Kind.TEXT
    return Kind.BOOLEAN


def valid_label(label: str) -> bool:
    return bool(LABEL_RE.fullmatch(label))


@dataclass
class Concept:
    label: str
    domain: str
    value_kind: Kind
    definition: str = ""
    citation: str = ""
    embedding: tuple | None = None

    def __post_init__(self):
        if not valid_label(self.label):
            raise MalformedSeed(f"invalid concept label {self.label!r}")
        self.value_kind = Kind(self.value_kind)
        if self.embedding is not None:
            self.embedding = tuple(float(x) for x in self.embedding)

    def to_json(self) -> dict:
        kind = "String" if self.value_kind is Kind.TEXT else self.value_kind.value
        out = {"definition": self.definition, "citation": self.citation, "conceptType": kind}
        if self.embedding is not None:
            out["embedding"] = list(self.embedding)
        return out


@dataclass
class Domain:
    label: str
    definition: str = ""
    citation: str = ""
    concept_type: Kind = Kind.ENTITY


@dataclass(frozen=True)
class Added:
    label: str


@dataclass(frozen=True)
class MergedInto:
    existing_label: str
    score: float


IntegrationOutcome = Union[Added, MergedInto]


@dataclass
class OntologyGraph:
    domains: dict[str, Domain] = field(default_factory=dict)
    concepts: dict[str, Concept] = field(default_factory=dict)
    # (source, relation, target) object properties between domains or concepts
    dependencies: set[tuple[str, str, str]] = field(default_factory=set)
    merge_log: list[dict] = field(default_factory=list, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.concepts)

    def add_domain(self, domain: Domain) -> None:
        if domain.label in self.domains or domain.label in self.concepts:
            raise DuplicateLabel(domain.label)
        self.domains[domain.label] = domain

    def add_concept(self, concept: Concept) -> None:
        if concept.domain not in self.domains:
            raise UnknownDomain(concept.domain)
        if concept.label in self.concepts or concept.label in self.domains:
            raise DuplicateLabel(concept.label)
        self.concepts[concept.label] = concept

    def concepts_in(self, domain: str) -> list[Concept]:
        return [c for c in self.concepts.values() if c.domain == domain]

    def entities(self) -> set[str]:
        return {d.label for d in self.domains.values() if d.concept_type is Kind.ENTITY}

    def vocabulary(self) -> list[tuple[str, Kind]]:
        return vocabulary(self)

    def kind_of(self, label: str) -> Kind | None:
        c = self.concepts.get(label)
        return c.value_kind if c else None

    def snapshot(self) -> "OntologyGraph":
        return copy.deepcopy(self)

    def to_json(self) -> dict:
        out: dict = {}
        for name in sorted(self.domains):
            d = self.domains[name]
            out[name] = {
                "definition": d.definition,
                "conceptType": d.concept_type.value,
                "citation": d.citation,
                "subtypes": {c.label: c.to_json()
                             for c in sorted(self.concepts_in(name), key=lambda c: c.label)},
            }
        if self.dependencies:
            out["_dependencies"] = [list(t) for t in sorted(self.dependencies)]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "OntologyGraph":
        onto = cls()
        for name, body in data.items():
            if name == "_dependencies":
                continue
            if not isinstance(body, dict) or not valid_label(name):
                raise MalformedSeed(f"bad domain entry {name!r}")
            onto.add_domain(Domain(name, body.get("definition", ""), body.get("citation", ""),
                                   Kind.parse(body.get("conceptType", "Entity"))))
            for label, spec in (body.get("subtypes") or {}).items():
                kind = Kind.parse(spec["conceptType"]) if "conceptType" in spec else default_kind(label)
                onto.add_concept(Concept(label, name, kind, spec.get("definition", ""),
                                         spec.get("citation", ""), spec.get("embedding")))
        for src, rel, dst in data.get("_dependencies", ()):
            onto.dependencies.add((src, rel, dst))
        return onto

    def to_dot(self) -> str:
        lines = ["digraph ontology {", "  rankdir=LR;"]
        for name in sorted(self.domains):
            lines.append(f'  "{name}" [shape=box, style=filled, fillcolor="#dde6f5"];')
        for label in sorted(self.concepts):
            c = self.concepts[label]
            lines.append(f'  "{label}" [shape=ellipse, tooltip="{c.value_kind.value}"];')
            lines.append(f'  "{c.domain}" -> "{label}" [label="hasCondition"];')
        for src, rel, dst in sorted(self.dependencies):
            lines.append(f'  "{src}" -> "{dst}" [label="{rel}", style=dashed];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def seed_ontology(seed: dict) -> OntologyGraph:
    """Build an ontology from a ``{"Root": {"subclasses": [...]}, Domain: {"attributes": [...]}}`` seed.

    Attributes may be bare labels or objects with ``label``, ``conceptType``,
    ``definition`` and ``citation``. An optional top-level ``dependencies``
    list holds ``[source, relation, target]`` triples.
    """
    if not isinstance(seed, dict) or not isinstance(seed.get("Root"), dict):
        raise MalformedSeed("seed must contain a Root object")
    subclasses = seed["Root"].get("subclasses", [])
    if not isinstance(subclasses, list):
        raise MalformedSeed("Root.subclasses must be a list")
    onto = OntologyGraph()
    for name in subclasses:
        if not isinstance(name, str) or not valid_label(name):
            raise MalformedSeed(f"bad domain label {name!r}")
        onto.add_domain(Domain(name))
    for name, body in seed.items():
        if name in ("Root", "dependencies"):
            continue
        if name not in onto.domains:
            raise MalformedSeed(f"{name!r} has attributes but is not a Root subclass")
        if not isinstance(body, dict) or not isinstance(body.get("attributes", []), list):
            raise MalformedSeed(f"{name!r} must hold an attributes list")
        for attr in body.get("attributes", []):
            if isinstance(attr, str):
                concept = Concept(attr, name, default_kind(attr))
            elif isinstance(attr, dict) and "label" in attr:
                kind = (Kind.parse(attr["conceptType"]) if "conceptType" in attr
                        else default_kind(attr["label"]))
                concept = Concept(attr["label"], name, kind, attr.get("definition", ""),
                                  attr.get("citation", ""))
            else:
                raise MalformedSeed(f"bad attribute in {name!r}: {attr!r}")
            onto.add_concept(concept)
    for dep in seed.get("dependencies", []):
        if isinstance(dep, dict):
            dep = (dep["from"], dep.get("label", "dependsOn"), dep["to"])
        src, rel, dst = dep
        onto.dependencies.add((src, rel, dst))
    return onto


def integrate_concept(onto: OntologyGraph, candidate: Concept, provider,
                      threshold: float = DUPLICATE_THRESHOLD) -> IntegrationOutcome:
    """Add ``candidate`` unless an existing concept scores strictly above ``threshold``.

    On a merge the graph is left untouched; the merge is appended to
    ``onto.merge_log`` (which does not take part in graph equality).
    """
    if candidate.domain not in onto.domains:
        raise UnknownDomain(candidate.domain)
    best_label, best = None, -1.0
    for label in sorted(onto.concepts):
        score = 1.0 if label == candidate.label else float(provider.similarity(candidate.label, label))
        if score > best:
            best_label, best = label, score
    if best_label is not None and best > threshold:
        existing = onto.concepts[best_label]
        onto.merge_log.append({"candidate": candidate.label, "merged_into": best_label,
                               "score": best, "candidate_citation": candidate.citation,
                               "existing_citation": existing.citation})
        log.info("merged %s into %s (%.3f)", candidate.label, best_label, best)
        return MergedInto(best_label, best)
    onto.add_concept(copy.copy(candidate))
    return Added(candidate.label)


def vocabulary(onto: OntologyGraph) -> list[tuple[str, Kind]]:
    return [(label, onto.concepts[label].value_kind) for label in sorted(onto.concepts)]


def embed_concepts(onto: OntologyGraph, provider, overwrite: bool = False) -> None:
    todo = [c for c in onto.concepts.values() if overwrite or c.embedding is None]
    if not todo:
        return
    vectors = provider.embed([c.label for c in todo])
    for c, vec in zip(todo, vectors):
        c.embedding = tuple(float(x) for x in vec)


@dataclass
class ClusterDiagnostics:
    intra: float | None
    inter: float | None
    per_domain: dict[str, dict]

    def to_json(self) -> dict:
        return {"intra": self.intra, "inter": self.inter, "per_domain": self.per_domain}


def _mean(xs: list[float]) -> float | None:
    return float(np.mean(xs)) if xs else None


def cluster_diagnostics(onto: OntologyGraph) -> ClusterDiagnostics:
    """Mean cosine distance within and across domains."""
    concepts = sorted(onto.concepts.values(), key=lambda c: c.label)
    for c in concepts:
        if c.embedding is None:
            raise MissingEmbedding(c.label)
    if not concepts:
        return ClusterDiagnostics(None, None, {})
    mat = np.array([c.embedding for c in concepts], dtype=float)
    norms = np.linalg.norm(mat, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    unit = mat / safe[:, None]
    sim = unit @ unit.T
    sim[norms == 0.0, :] = 0.0
    sim[:, norms == 0.0] = 0.0
    dist = np.clip(1.0 - sim, 0.0, 2.0)
    intra, inter = [], []
    per: dict[str, dict[str, list]] = {}
    for i, j in itertools.combinations(range(len(concepts)), 2):
        a, b = concepts[i].domain, concepts[j].domain
        d = float(dist[i, j])
        if a == b:
            intra.append(d)
            per.setdefault(a, {"intra": [], "inter": []})["intra"].append(d)
        else:
            inter.append(d)
            per.setdefault(a, {"intra": [], "inter": []})["inter"].append(d)
            per.setdefault(b, {"intra": [], "inter": []})["inter"].append(d)
    counts = {}
    for c in concepts:
        counts[c.domain] = counts.get(c.domain, 0) + 1
    table = {
        name: {"count": counts[name],
               "intra": _mean(per.get(name, {}).get("intra", [])),
               "inter": _mean(per.get(name, {}).get("inter", []))}
        for name in sorted(counts)
    }
    return ClusterDiagnostics(_mean(intra), _mean(inter), table)


def export_embeddings(onto: OntologyGraph) -> list[dict]:
    """Raw vectors with their domain labels, for external projection/plotting."""
    return [{"label": c.label, "domain": c.domain,
             "embedding": list(c.embedding) if c.embedding is not None else None}
            for c in sorted(onto.concepts.values(), key=lambda c: c.label)]


def load_ontology(path: str | Path | None = None) -> OntologyGraph:
    """Read an ontology file; without a path, the bundled TBox ontology."""
    if path is None:
        text = resources.files("noaverify.data").joinpath("ontology.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    data = json.loads(text)
    if "Root" in data:
        return seed_ontology(data)
    return OntologyGraph.from_json(data)


def save_ontology(onto: OntologyGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(onto.to_json(), indent=2) + "\n", encoding="utf-8")
