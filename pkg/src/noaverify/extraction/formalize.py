"""Formalizer clients and the validate-and-retry loop around them.

A client turns a rendered prompt into a completion string. The loop treats
every failure (no JSON, bad syntax, off-vocabulary symbol, wrong rule shape)
as data: it appends the reason to the prompt and asks again.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from importlib import resources
from typing import Protocol, Sequence

from ..errors import ClientUnavailable, LogicError
from ..logic import (BoolConst, Expr, Implies, Kind, Not, Var, canonicalize, desugar_applied,
                     free_symbols, parse, resolve_kinds, typecheck, unparse)

OUTCOME = "Applicant_Eligible"
TEMPLATES = ("abox_directed", "tbox_directed", "undirected", "vanilla")


def load_template(name: str) -> str:
    if name not in TEMPLATES:
        raise ValueError(f"unknown prompt template {name!r}")
    return resources.files("noaverify.data").joinpath("prompts", f"{name}.txt").read_text(encoding="utf-8")


@dataclass(frozen=True)
class FormalizationRequest:
    concepts: tuple[tuple[str, Kind], ...]
    clause: str
    template: str = "abox_directed"
    entities: frozenset[str] = frozenset({"Applicant"})

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.concepts)

    def vocab(self) -> dict[str, Kind]:
        v = {label: Kind(kind) for label, kind in self.concepts}
        v.setdefault(OUTCOME, Kind.BOOLEAN)
        return v

    def render(self) -> str:
        listing = "\n".join(f"- {label} ({Kind(kind).value})" for label, kind in self.concepts)
        return (load_template(self.template)
                .replace("{ontology_concepts}", listing)
                .replace("{explanation_clause}", self.clause))


@dataclass
class FormalizationResult:
    raw: str
    parsed: tuple[Expr, ...] | None
    attempts: int
    failure: str | None = None
    transcript: list[str] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return self.parsed is not None


class Formalizer(Protocol):
    def complete(self, prompt: str, request: FormalizationRequest) -> str: ...


# -- validation -------------------------------------------------------------

class _Rejected(Exception):
    pass


def _extract_json(raw: str) -> dict:
    text = re.sub(r"```(?:json)?", "", raw)
    start, end = text.find("{"), text.rfind("}")
    if start < 0 or end <= start:
        raise _Rejected("unparseable")
    try:
        data = json.loads(text[start:end + 1])
    except json.JSONDecodeError:
        raise _Rejected("unparseable") from None
    if not isinstance(data, dict):
        raise _Rejected("unparseable")
    return data


def _is_outcome(e: Expr) -> bool:
    if isinstance(e, Not):
        e = e.arg
    return isinstance(e, Var) and e.label == OUTCOME


def validate_rule(source: str, request: FormalizationRequest) -> Expr:
    """Parse, typecheck and canonicalize one ``hasLogic`` string or raise _Rejected."""
    vocab = request.vocab()
    try:
        expr = parse(source)
    except LogicError as exc:
        raise _Rejected(f"syntax error: {exc}") from None
    expr = resolve_kinds(desugar_applied(expr, request.entities), vocab)
    try:
        typecheck(expr, vocab)
    except LogicError as exc:
        raise _Rejected(f"typecheck failed: {exc}") from None
    if not isinstance(expr, Implies):
        raise _Rejected("rule must be a single Implies(antecedent, consequent)")
    if not _is_outcome(expr.consequent):
        raise _Rejected(f"consequent must be {OUTCOME} or Not({OUTCOME})")
    if OUTCOME in free_symbols(expr.antecedent):
        raise _Rejected(f"{OUTCOME} may appear only in the consequent")
    out = canonicalize(expr)
    if isinstance(out, BoolConst):
        raise _Rejected("rule is trivially constant")
    return out


def _validate(raw: str, request: FormalizationRequest) -> tuple[Expr, ...]:
    data = _extract_json(raw)
    if "hasLogic" not in data:
        raise _Rejected('missing "hasLogic" field')
    logic = data["hasLogic"]
    if isinstance(logic, str):
        logic = [logic]
    if not isinstance(logic, list) or not logic or not all(isinstance(x, str) for x in logic):
        raise _Rejected('"hasLogic" must be a string or a nonempty list of strings')
    return tuple(validate_rule(x, request) for x in logic)


def formalize(request: FormalizationRequest, client: Formalizer,
              max_attempts: int = 3) -> FormalizationResult:
    if not request.concepts:
        raise ValueError("formalization needs at least one concept")
    base = request.render()
    prompt = base
    raw, reason = "", None
    transcript = []
    for attempt in range(1, max_attempts + 1):
        raw = client.complete(prompt, request)
        transcript.append(raw)
        try:
            parsed = _validate(raw, request)
        except _Rejected as exc:
            reason = str(exc)
            prompt = (f"{base}\n\nYour previous answer was rejected ({reason}). "
                      "Reply with corrected JSON only.\n")
            continue
        return FormalizationResult(raw, parsed, attempt, None, transcript)
    return FormalizationResult(raw, None, max_attempts, reason, transcript)


# -- clients ----------------------------------------------------------------

class EchoFormalizer:
    """Deterministic offline client: first template whose required concepts
    were all matched supplies the rule."""

    def __init__(self, templates: Sequence[dict] | None = None):
        if templates is None:
            text = resources.files("noaverify.data").joinpath("echo_templates.json").read_text(encoding="utf-8")
            templates = json.loads(text)
        self.templates = list(templates)

    def complete(self, prompt: str, request: FormalizationRequest) -> str:
        labels = set(request.labels)
        for tpl in self.templates:
            if set(tpl["requires"]) <= labels:
                return json.dumps({"hasLogic": tpl["logic"]})
        return "No formal rule can be produced for this clause."


class ScriptedFormalizer:
    """Replays canned completions, either one global queue or one per clause."""

    def __init__(self, responses):
        self._lock = threading.Lock()
        self.prompts: list[str] = []
        if isinstance(responses, dict):
            self._by_clause = {k: list(v) for k, v in responses.items()}
            self._queue = None
        else:
            self._by_clause = None
            self._queue = list(responses)

    def complete(self, prompt: str, request: FormalizationRequest) -> str:
        with self._lock:
            self.prompts.append(prompt)
            queue = self._queue if self._by_clause is None else self._by_clause.get(request.clause, [])
            if not queue:
                return ""
            return queue.pop(0) if len(queue) > 1 else queue[0]


class HttpFormalizer:
    """Chat-completion style endpoint: POST {"prompt"} and read {"completion"}."""

    def __init__(self, endpoint: str, model: str | None = None, token: str | None = None,
                 timeout: float = 60.0, retries: int = 2, client=None):
        import httpx

        self.endpoint = endpoint
        self.model = model
        self.retries = retries
        self._headers = {"Authorization": f"Bearer {token}"} if token else {}
        self._client = client or httpx.Client(timeout=timeout)

    def complete(self, prompt: str, request: FormalizationRequest) -> str:
        import httpx

        body = {"prompt": prompt}
        if self.model:
            body["model"] = self.model
        last = None
        for _ in range(self.retries + 1):
            try:
                resp = self._client.post(self.endpoint, json=body, headers=self._headers)
                resp.raise_for_status()
                return str(resp.json()["completion"])
            except (httpx.HTTPError, KeyError, ValueError) as exc:
                last = exc
        raise ClientUnavailable(f"formalizer endpoint failed: {last}")


def describe(result: FormalizationResult) -> dict:
    return {
        "attempts": result.attempts,
        "failure": result.failure,
        "hasLogic": [unparse(e) for e in result.parsed] if result.parsed else None,
        "raw": result.raw,
    }
