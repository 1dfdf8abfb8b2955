"""A small rule-based part-of-speech tagger and noun-phrase chunker.

Good enough for the short, formulaic sentences found in eligibility manuals
and notices. Tags follow a reduced Penn set: DT, IN, PRP, MD, VB, VBG, VBN,
JJ, NN, RB, CC, CD, TO, WRB, PUNCT.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_WORD = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)?|\d+(?:[.,]\d+)*|[^\sA-Za-z\d]")

DETERMINERS = {"a", "an", "the", "this", "that", "these", "those", "each", "every", "any",
               "all", "no", "some", "such", "its", "his", "her", "their", "your", "our", "my"}
PREPOSITIONS = {"of", "in", "on", "at", "for", "from", "by", "with", "within", "under", "into",
                "outside", "over", "above", "below", "than", "as", "about", "after", "before",
                "during", "through", "without", "per", "between", "among", "against", "upon"}
PRONOUNS = {"it", "they", "you", "he", "she", "we", "i", "them", "him", "us", "who", "which",
            "there"}
MODALS = {"shall", "must", "may", "can", "will", "would", "should", "could", "might"}
AUXILIARIES = {"is", "are", "was", "were", "be", "been", "being", "am", "has", "have", "had",
               "do", "does", "did"}
CONJUNCTIONS = {"and", "or", "but", "nor"}
SUBORDINATORS = {"when", "where", "if", "unless", "while", "because", "whether", "until"}
ADVERBS = {"not", "there", "too", "also", "only", "then", "here", "very", "least", "more",
           "less", "otherwise", "never", "already"}
ADJECTIVES = {"gross", "net", "high", "low", "eligible", "ineligible", "different", "other",
              "another", "same", "allowable", "countable", "monthly", "annual", "legal",
              "federal", "elderly", "disabled", "available", "required", "certain", "current",
              "older", "higher", "lower"}
VERBS = {"live", "lives", "reside", "resides", "apply", "applies", "file", "files", "provide",
         "provides", "exceed", "exceeds", "meet", "meets", "receive", "receives", "verify",
         "verifies", "consider", "considered", "determine", "determines", "qualify",
         "qualifies", "participate", "participates", "own", "owns", "earn", "earns",
         "belong", "belongs", "submit", "submits", "report", "reports", "attend", "attends",
         "deny", "denied", "need", "needs", "locate", "located", "make", "makes", "count",
         "counts", "include", "includes", "result", "results", "reduce", "reduces"}

LEGAL_STOPWORDS = {"household", "households", "applicant", "applicants", "benefit", "benefits",
                   "person", "persons", "individual", "individuals", "member", "members",
                   "participation", "program", "section", "provision", "time", "case",
                   "purpose", "purposes", "requirement", "requirements", "resident", "residents",
                   "food", "assistance", "regulation", "regulations"}


@dataclass(frozen=True)
class Token:
    text: str
    tag: str

    @property
    def lower(self) -> str:
        return self.text.lower()


def tokenize(text: str) -> list[str]:
    return _WORD.findall(text)


def _tag_word(word: str, prev: str | None) -> str:
    w = word.lower()
    if not re.match(r"[A-Za-z\d]", w):
        return "PUNCT"
    if w[0].isdigit():
        return "CD"
    if w == "to":
        return "TO"
    if w in DETERMINERS:
        return "DT"
    if w in MODALS:
        return "MD"
    if w in AUXILIARIES:
        return "VB"
    if w in CONJUNCTIONS:
        return "CC"
    if w in SUBORDINATORS:
        return "WRB"
    if w in PRONOUNS:
        return "PRP" if w != "there" or prev in AUXILIARIES else "RB"
    if w in PREPOSITIONS:
        return "IN"
    if w in ADVERBS:
        return "RB"
    if w in ADJECTIVES:
        return "JJ"
    if w in VERBS:
        if prev in DETERMINERS:
            return "NN"
        if w.endswith("ed"):
            return "VBN"
        return "VB"
    if w.endswith("ing") and len(w) > 5:
        return "VBG"
    if w.endswith("ed") and len(w) > 4:
        return "VBN"
    if w.endswith("ly") and len(w) > 4:
        return "RB"
    if w.endswith(("ous", "ible", "able", "ive", "ful", "ic")) and len(w) > 5:
        return "JJ"
    return "NN"


def tag(text: str) -> list[Token]:
    out: list[Token] = []
    prev = None
    for word in tokenize(text):
        t = _tag_word(word, prev)
        out.append(Token(word, t))
        prev = word.lower()
    return out


def lemma(word: str) -> str:
    w = word.lower()
    irregular = {"lives": "live", "children": "child", "people": "person", "is": "be",
                 "are": "be", "was": "be", "were": "be", "has": "have", "applied": "apply",
                 "applies": "apply", "resources": "resource"}
    if w in irregular:
        return irregular[w]
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("s") and not w.endswith(("ss", "us", "is")) and len(w) > 3:
        return w[:-1]
    return w


def noun_phrases(tokens: list[Token]) -> list[tuple[int, list[Token]]]:
    """Maximal runs of JJ/NN ending in NN, with the index of their first token."""
    chunks = []
    i = 0
    while i < len(tokens):
        if tokens[i].tag in ("JJ", "NN"):
            j = i
            while j < len(tokens) and tokens[j].tag in ("JJ", "NN"):
                j += 1
            run = tokens[i:j]
            while run and run[-1].tag != "NN":
                run = run[:-1]
            if run:
                chunks.append((i, run))
            i = j
        else:
            i += 1
    return chunks


def is_verb(tag_: str) -> bool:
    return tag_ in ("VB", "VBG", "VBN", "MD")
