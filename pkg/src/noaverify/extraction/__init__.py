"""Clause segmentation, concept extraction/matching and rule formalization."""

from .concepts import ConceptMatch, extract_statute_concepts, match_concepts
from .formalize import (EchoFormalizer, FormalizationRequest, FormalizationResult, HttpFormalizer,
                        ScriptedFormalizer, formalize, load_template)
from .segment import ClauseSpan, segment

__all__ = [
    "ClauseSpan", "segment", "ConceptMatch", "match_concepts", "extract_statute_concepts",
    "FormalizationRequest", "FormalizationResult", "formalize", "EchoFormalizer",
    "ScriptedFormalizer", "HttpFormalizer", "load_template",
]
