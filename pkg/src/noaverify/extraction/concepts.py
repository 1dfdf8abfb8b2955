"""Concept matching for explanation clauses and concept extraction for statutes."""

from __future__ import annotations

from dataclasses import dataclass

from ..logic import Kind
from ..ontology import Concept, OntologyGraph, default_kind
from ..similarity import stem
from .segment import ClauseSpan
from .tagger import LEGAL_STOPWORDS, Token, lemma, noun_phrases, tag

MATCH_FLOOR = 0.5
MAX_LABELS = 8


@dataclass(frozen=True)
class ConceptMatch:
    span: ClauseSpan
    labels: tuple[str, ...]
    scores: tuple[float, ...]

    @property
    def unmappable(self) -> bool:
        return not self.labels


def match_concepts(span: ClauseSpan, onto: OntologyGraph, provider,
                   floor: float = MATCH_FLOOR, cap: int = MAX_LABELS) -> ConceptMatch:
    scored = []
    for label in sorted(onto.concepts):
        score = float(provider.similarity(span.text, label))
        if score >= floor:
            scored.append((-score, label))
    scored.sort()
    scored = scored[:cap]
    return ConceptMatch(span, tuple(l for _, l in scored), tuple(-s for s, _ in scored))


# ---------------------------------------------------------------------------
# statute concept extraction

# first keyword (by stem) appearing in the clause picks the label prefix
DOMAIN_KEYWORDS = {
    "resid": "Residency", "resident": "Residency", "residency": "Residency",
    "county": "Residency", "income": "Income", "earn": "Income", "wag": "Income",
    "resourc": "Resources", "asset": "Resources", "citizen": "Citizenship",
    "citizenship": "Citizenship", "noncitizen": "Citizenship", "immigration": "Citizenship",
    "student": "Student", "school": "Student", "ag": "Household", "elderly": "Household",
    "disability": "Household", "disabl": "Household", "work": "Work", "employment": "Work",
}
_ENTITY_NOUNS = {"household", "applicant", "member", "student", "individual", "person"}
_LOCATIVE_VERBS = {"live", "reside", "locate", "stay"}
_FILING_VERBS = {"apply", "file", "submit"}
_STOPWORDS = {"a", "an", "the", "of", "to", "in", "on", "for", "and", "or", "but", "is", "be",
              "shall", "must", "may", "this", "that", "it", "there", "which", "who", "when",
              "any", "all", "each", "such", "other", "same", "than", "as", "by", "with", "not",
              "thing", "way", "part", "day", "month", "year"}


def _camel(words) -> str:
    return "".join(w[:1].upper() + w[1:] for w in words)


def infer_domain(tokens: list[Token]) -> str | None:
    for t in tokens:
        key = stem(t.lower)
        if key in DOMAIN_KEYWORDS:
            return DOMAIN_KEYWORDS[key]
        if t.lower in DOMAIN_KEYWORDS:
            return DOMAIN_KEYWORDS[t.lower]
    return None


def _phrase_words(run: list[Token]) -> list[str]:
    words = [lemma(t.text) for t in run]
    return [w for w in words if w not in _STOPWORDS]


def _nominalizations(tokens: list[Token]) -> list[tuple[int, str]]:
    """Verb-driven concepts: "<entity> ... living" -> EntityLocation,
    "applies ... in that county" -> ApplicationCounty."""
    found = []
    subject = None
    for i, tok in enumerate(tokens):
        lw = lemma(tok.text)
        if tok.tag == "NN" and lw in _ENTITY_NOUNS:
            subject = lw
        if tok.tag not in ("VB", "VBG", "VBN", "NN"):
            continue
        base = lw[:-3] if tok.tag == "VBG" and lw.endswith("ing") else lw
        if tok.tag == "NN" and base not in _FILING_VERBS | _LOCATIVE_VERBS:
            continue
        if tok.tag == "VBG" and base + "e" in _LOCATIVE_VERBS:
            base += "e"
        if base in _LOCATIVE_VERBS and subject:
            found.append((i, _camel([subject, "location"])))
        elif base in _FILING_VERBS:
            target = None
            for j in range(i + 1, min(i + 8, len(tokens))):
                if tokens[j].lower == "in":
                    for k in range(j + 1, min(j + 4, len(tokens))):
                        if tokens[k].tag == "NN":
                            target = lemma(tokens[k].text)
                            break
                    break
            found.append((i, _camel(["application"] + ([target] if target else []))))
    return found


def extract_statute_concepts(clause: ClauseSpan, domain: str | None = None,
                             domain_label: str | None = None) -> list[Concept]:
    """Candidate concepts for one statute clause.

    ``domain`` overrides the inferred label prefix; ``domain_label`` is the
    ontology domain the candidates are attached to (defaults to the prefix).
    Candidates come out in order of first mention, without duplicates.
    """
    tokens = tag(clause.text)
    prefix = domain or infer_domain(tokens)
    if prefix is None:
        return []
    parent = domain_label or prefix
    found: list[tuple] = []
    for start, run in noun_phrases(tokens):
        words = _phrase_words(run)
        if not words:
            continue
        if len(words) == 1 and (words[0] in LEGAL_STOPWORDS or words[0] == prefix.lower()):
            continue
        found.append((start, _camel(words), None))
    # verb-derived concepts name conditions, so they are Boolean
    found.extend((i, tail, Kind.BOOLEAN) for i, tail in _nominalizations(tokens))
    found.sort(key=lambda f: f[0])
    seen, out = set(), []
    for _, tail, kind in found:
        label = f"{prefix}_{tail}"
        if label in seen or not tail.isalpha():
            continue
        seen.add(label)
        out.append(Concept(label, parent, kind or default_kind(label), citation=clause.source_id))
    return out
