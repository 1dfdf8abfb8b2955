"""Clause segmentation into minimal assertive units."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .tagger import is_verb, tag

_ABBREVIATIONS = ("e.g.", "i.e.", "etc.", "Sec.", "No.", "vs.", "Mr.", "Ms.", "Dr.")
_SENTENCE_END = re.compile(r"(?<=[.!?])[\"'”’)]*\s+(?=[\"“(]?[A-Z0-9])")
_PRONOUN_SUBJECTS = {"you", "it", "they", "he", "she", "we", "i", "there"}
_DETERMINED_SUBJECTS = {"your", "the", "this", "that", "their", "his", "her", "its", "our",
                        "applicant", "applicants"}
_SPLITTERS = {"and", "but"}


@dataclass(frozen=True)
class ClauseSpan:
    source_id: str
    index: int
    text: str


def _sentences(text: str) -> list[str]:
    guarded = text
    for i, abbr in enumerate(_ABBREVIATIONS):
        guarded = guarded.replace(abbr, f"\x00{i}\x00")
    parts = _SENTENCE_END.split(guarded)
    out = []
    for part in parts:
        for i, abbr in enumerate(_ABBREVIATIONS):
            part = part.replace(f"\x00{i}\x00", abbr)
        out.extend(p for p in part.split(";"))
    return [p.strip() for p in out if p.strip()]


def _has_verb(words: list[str]) -> bool:
    return any(is_verb(t.tag) for t in tag(" ".join(words)))


def _split_coordination(sentence: str) -> list[str]:
    """Split on "and"/"but" when each side is a predicate with its own subject."""
    words = sentence.split()
    pieces, start = [], 0
    for i, word in enumerate(words):
        if word.lower().strip(",") not in _SPLITTERS or i == start or i + 1 >= len(words):
            continue
        nxt = re.sub(r"[^a-z']", "", words[i + 1].lower())
        left, right = words[start:i], words[i + 1:]
        if nxt in _PRONOUN_SUBJECTS:
            ok = _has_verb(left)
        elif nxt in _DETERMINED_SUBJECTS:
            ok = _has_verb(left) and _has_verb(right[1:])
        else:
            ok = False
        if ok:
            pieces.append(" ".join(left))
            start = i + 1
    pieces.append(" ".join(words[start:]))
    return pieces


def _finish(piece: str) -> str:
    piece = piece.strip().rstrip(",;:").strip()
    piece = re.sub(r"[.!?]+$", "", piece).strip()
    if not piece:
        return ""
    return piece[0].upper() + piece[1:] + "."


def segment(text: str, mode: str = "explanation", source_id: str = "") -> list[ClauseSpan]:
    """Deterministically split ``text`` into clause spans.

    Both modes share the splitting rules; ``mode`` is recorded for callers and
    kept so statute-specific heuristics can diverge later.
    """
    if mode not in ("statute", "explanation"):
        raise ValueError(f"unknown segmentation mode {mode!r}")
    spans: list[ClauseSpan] = []
    for sentence in _sentences(text or ""):
        for piece in _split_coordination(sentence):
            finished = _finish(piece)
            if finished and re.search(r"[A-Za-z0-9]", finished):
                spans.append(ClauseSpan(source_id, len(spans), finished))
    return spans
