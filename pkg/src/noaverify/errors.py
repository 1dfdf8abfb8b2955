"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class NoaVerifyError(Exception):
    """Base class for all errors raised by this package."""


# -- corpus -----------------------------------------------------------------

class CorpusError(NoaVerifyError):
    pass


class DuplicateCitation(CorpusError):
    def __init__(self, citation: str):
        super().__init__(f"duplicate citation: {citation!r}")
        self.citation = citation


class MalformedCitation(CorpusError):
    def __init__(self, raw: str):
        super().__init__(f"malformed citation: {raw!r}")
        self.raw = raw


class EmptyClauseText(CorpusError):
    def __init__(self, citation: str):
        super().__init__(f"clause {citation!r} has empty text")
        self.citation = citation


class UnknownCitation(CorpusError):
    def __init__(self, citation: str):
        super().__init__(f"citation not in corpus: {citation!r}")
        self.citation = citation


# -- ontology ---------------------------------------------------------------

class OntologyError(NoaVerifyError):
    pass


class MalformedSeed(OntologyError):
    pass


class DuplicateLabel(OntologyError):
    def __init__(self, label: str):
        super().__init__(f"duplicate concept label: {label!r}")
        self.label = label


class UnknownDomain(OntologyError):
    def __init__(self, domain: str):
        super().__init__(f"unknown domain: {domain!r}")
        self.domain = domain


class MissingEmbedding(OntologyError):
    def __init__(self, label: str):
        super().__init__(f"concept {label!r} has no embedding")
        self.label = label


# -- logic ------------------------------------------------------------------

class LogicError(NoaVerifyError):
    pass


class LogicSyntaxError(LogicError):
    def __init__(self, position: int, expected, found: str = ""):
        self.position = position
        self.expected = frozenset(expected)
        self.found = found
        want = ", ".join(sorted(self.expected))
        super().__init__(f"at offset {position}: expected one of {{{want}}}, found {found!r}")


class ArityError(LogicError):
    def __init__(self, operator: str, got: int):
        super().__init__(f"{operator} cannot take {got} argument(s)")
        self.operator = operator
        self.got = got


class TypecheckError(LogicError):
    pass


class UnknownSymbol(TypecheckError):
    def __init__(self, label: str):
        super().__init__(f"unknown symbol: {label}")
        self.label = label


class KindMismatch(TypecheckError):
    def __init__(self, node, expected, got):
        super().__init__(f"kind mismatch at {node}: expected {expected}, got {got}")
        self.node = node
        self.expected = expected
        self.got = got


class NonBooleanRoot(TypecheckError):
    def __init__(self, got):
        super().__init__(f"expression root must be Boolean, got {got}")
        self.got = got


# -- rule store -------------------------------------------------------------

class RuleStoreError(NoaVerifyError):
    pass


class DuplicateId(RuleStoreError):
    def __init__(self, rule_id: str):
        super().__init__(f"rule id already stored: {rule_id!r}")
        self.rule_id = rule_id


class DuplicateRule(RuleStoreError):
    def __init__(self, existing_id: str):
        super().__init__(f"same citation and logic as stored rule {existing_id!r}")
        self.existing_id = existing_id


class TypecheckFailed(RuleStoreError):
    def __init__(self, detail: str):
        super().__init__(f"rule does not typecheck: {detail}")
        self.detail = detail


# -- extraction / abox ------------------------------------------------------

class ClientUnavailable(NoaVerifyError):
    pass


class FactKindMismatch(NoaVerifyError):
    def __init__(self, label: str, reason: str = ""):
        msg = f"fact {label!r} does not match its concept"
        super().__init__(f"{msg}: {reason}" if reason else msg)
        self.label = label


class UnmappableExplanation(NoaVerifyError):
    pass


# -- verification -----------------------------------------------------------

class VerificationError(NoaVerifyError):
    pass


class MissingTableEntry(VerificationError):
    def __init__(self, function: str, argument):
        super().__init__(f"{function} has no entry for {argument}")
        self.function = function
        self.argument = argument


class FragmentExceeded(VerificationError):
    def __init__(self, detail: str):
        super().__init__(f"outside the supported fragment: {detail}")
        self.detail = detail


class EmptyEnvironment(VerificationError):
    pass


class ConfigError(NoaVerifyError):
    pass


class CaseFormatError(NoaVerifyError):
    """A case file is structurally invalid (missing keys, unknown action)."""
