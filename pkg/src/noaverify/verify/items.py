from __future__ import annotations

from dataclasses import dataclass

from ..logic import Expr

TAG_KINDS = ("Rule", "Fact", "ExplanationClause", "Claim", "Outcome")


@dataclass(frozen=True)
class Tag:
    """Identity of one constraint within a verification run.

    ``key`` is the rule id, fact label or span index (empty for the outcome).
    ``citations`` are the statutory anchors reported when the item is violated.
    """
    kind: str
    key: str = ""
    citations: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in TAG_KINDS:
            raise ValueError(f"unknown tag kind {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.kind}({self.key})" if self.key else self.kind


@dataclass(frozen=True)
class ConstraintItem:
    tag: Tag
    expr: Expr
    text: str = ""
    facts_used: tuple[str, ...] = ()

    @property
    def citations(self) -> tuple[str, ...]:
        return self.tag.citations


def item(expr: Expr, kind: str = "Rule", key: str = "", citations=(), text: str = "") -> ConstraintItem:
    """Shorthand used by tests and callers assembling constraint sets by hand."""
    return ConstraintItem(Tag(kind, key, tuple(citations)), expr, text)
