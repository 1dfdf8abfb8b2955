"""Statutory clause records and the directed citation graph linking them."""

from __future__ import annotations

import datetime as dt
import json
import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import DuplicateCitation, EmptyClauseText, MalformedCitation, UnknownCitation

# "MPP" SP digits "-" digits ("." digits)*
CITATION_RE = re.compile(r"MPP \d+-\d+(?:\.\d+)*")


def normalize_citation(raw: str) -> str:
    """Collapse whitespace and drop the section sign / typographic dashes."""
    text = raw.replace("§", " ").replace("\u2013", "-").replace("\u2014", "-")
    text = re.sub(r"\s+", " ", text).strip()
    return re.sub(r"\s*-\s*", "-", text)


def validate_citation(raw: str) -> str:
    citation = normalize_citation(raw)
    if not CITATION_RE.fullmatch(citation):
        raise MalformedCitation(raw)
    return citation


@dataclass(frozen=True)
class ClauseRecord:
    citation: str
    text: str
    effective_date: dt.date | None = None
    references: tuple[str, ...] = ()
    domain_hint: str | None = None

    def to_json(self) -> dict:
        out: dict = {"citation": self.citation, "text": self.text}
        if self.effective_date is not None:
            out["effective_date"] = self.effective_date.isoformat()
        if self.references:
            out["references"] = list(self.references)
        if self.domain_hint is not None:
            out["domain_hint"] = self.domain_hint
        return out


@dataclass
class CorpusGraph:
    nodes: dict[str, ClauseRecord] = field(default_factory=dict)
    edges: frozenset[tuple[str, str]] = frozenset()
    warnings: list[str] = field(default_factory=list)

    def __contains__(self, citation: str) -> bool:
        return citation in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def successors(self, citation: str) -> list[str]:
        return sorted(b for a, b in self.edges if a == citation)

    def to_documents(self) -> list[dict]:
        return [self.nodes[c].to_json() for c in sorted(self.nodes)]

    def to_dot(self) -> str:
        lines = ["digraph corpus {", "  rankdir=LR;", '  node [shape=box, fontname="Helvetica"];']
        for citation in sorted(self.nodes):
            rec = self.nodes[citation]
            label = citation if rec.domain_hint is None else f"{citation}\\n{rec.domain_hint}"
            lines.append(f'  "{citation}" [label="{label}"];')
        for a, b in sorted(self.edges):
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _record(doc: dict) -> ClauseRecord:
    if "citation" not in doc or "text" not in doc:
        raise MalformedCitation(json.dumps(doc, sort_keys=True)[:80])
    citation = validate_citation(str(doc["citation"]))
    text = str(doc["text"])
    if not text.strip():
        raise EmptyClauseText(citation)
    date = doc.get("effective_date")
    if isinstance(date, str):
        date = dt.date.fromisoformat(date)
    refs = tuple(validate_citation(str(r)) for r in doc.get("references") or ())
    return ClauseRecord(citation, text, date, refs, doc.get("domain_hint"))


def ingest_corpus(documents: Iterable[dict]) -> CorpusGraph:
    """Validate clause documents and link their cross-references.

    References to citations outside the corpus are kept on the record but
    produce no edge; each one is reported in ``warnings``.
    """
    nodes: dict[str, ClauseRecord] = {}
    for doc in documents:
        rec = _record(doc)
        if rec.citation in nodes:
            raise DuplicateCitation(rec.citation)
        nodes[rec.citation] = rec
    edges = set()
    warnings = []
    for citation in sorted(nodes):
        for ref in nodes[citation].references:
            if ref in nodes:
                edges.add((citation, ref))
            else:
                warnings.append(f"{citation} references {ref}, which is not in the corpus")
    return CorpusGraph(dict(sorted(nodes.items())), frozenset(edges), warnings)


def load_corpus(path: str | Path) -> CorpusGraph:
    with open(path, encoding="utf-8") as fh:
        docs = json.load(fh)
    if not isinstance(docs, list):
        raise MalformedCitation(f"{path}: expected a JSON array of clauses")
    return ingest_corpus(docs)


def save_corpus(graph: CorpusGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(graph.to_documents(), indent=2) + "\n", encoding="utf-8")


def neighbors(graph: CorpusGraph, citation: str, depth: int) -> set[ClauseRecord]:
    """Clauses reachable from ``citation`` within ``depth`` hops, start excluded."""
    if citation not in graph.nodes:
        raise UnknownCitation(citation)
    adjacency: dict[str, list[str]] = {}
    for a, b in graph.edges:
        adjacency.setdefault(a, []).append(b)
    seen = {citation}
    frontier = deque([(citation, 0)])
    found = set()
    while frontier:
        node, d = frontier.popleft()
        if d >= depth:
            continue
        for nxt in adjacency.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                found.add(nxt)
                frontier.append((nxt, d + 1))
    return {graph.nodes[c] for c in found}
