"""Violation F1 and legality accuracy over a directory of labeled cases."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .abox import CaseRecord, load_case
from .corpus import normalize_citation
from .errors import NoaVerifyError
from .verify.engine import verify_case

log = logging.getLogger(__name__)

LEGALITY_STATUS = {"upheld": "SAT", "overturned": "UNSAT"}
GROUPS = ("SAT", "UNSAT")


def citation_key(citation: str, relaxed: bool = False) -> str:
    """Exact key, or in relaxed mode the prefix before the final dotted component."""
    c = normalize_citation(citation)
    if relaxed and "." in c:
        c = c.rsplit(".", 1)[0]
    return c


def _matches(predicted: Iterable[str], expected: Iterable[str], relaxed: bool):
    pred = sorted({normalize_citation(c) for c in predicted})
    exp = sorted({normalize_citation(c) for c in expected})
    pk = {citation_key(c, relaxed) for c in pred}
    ek = {citation_key(c, relaxed) for c in exp}
    hit_p = sum(1 for c in pred if citation_key(c, relaxed) in ek)
    hit_e = sum(1 for c in exp if citation_key(c, relaxed) in pk)
    return len(pred), hit_p, len(exp), hit_e


def _ratio(hits: int, total: int, other_total: int) -> float:
    if total == 0:
        return 1.0 if other_total == 0 else 0.0
    return hits / total


def _f1(p: float, r: float) -> float | None:
    return None if p + r == 0 else 2 * p * r / (p + r)


def violation_f1(predicted: Iterable[str], expected: Iterable[str], relaxed: bool = False) -> dict:
    n_p, hit_p, n_e, hit_e = _matches(predicted, expected, relaxed)
    p = _ratio(hit_p, n_p, n_e)
    r = _ratio(hit_e, n_e, n_p)
    return {"precision": p, "recall": r, "f1": _f1(p, r)}


def smt_accuracy(results: Sequence[tuple[str, str]]) -> float | None:
    """Share of (predicted status, legality) pairs where upheld <-> SAT, overturned <-> UNSAT."""
    if not results:
        return None
    return sum(1 for status, legality in results if LEGALITY_STATUS.get(legality) == status) / len(results)


def _aggregate(details: list["CaseDetail"], relaxed: bool) -> dict:
    scored = [d for d in details if d.expected_citations and d.error is None]
    n_p = hit_p = n_e = hit_e = 0
    per_case = []
    for d in scored:
        a, b, c, e = _matches(d.predicted_citations, d.expected_citations, relaxed)
        n_p, hit_p, n_e, hit_e = n_p + a, hit_p + b, n_e + c, hit_e + e
        per_case.append(violation_f1(d.predicted_citations, d.expected_citations, relaxed))
    out: dict = {"cases": len(details)}
    if scored:
        p, r = _ratio(hit_p, n_p, n_e), _ratio(hit_e, n_e, n_p)
        out.update(violation_precision=p, violation_recall=r, violation_f1=_f1(p, r))
        out["macro_f1"] = sum(m["f1"] or 0.0 for m in per_case) / len(per_case)
    else:
        out.update(violation_precision=None, violation_recall=None, violation_f1=None, macro_f1=None)
    labeled = [(d.predicted_status, d.legality) for d in details if d.legality is not None]
    out["smt_accuracy"] = smt_accuracy(labeled)
    hand = [d for d in details if d.expected_status is not None]
    out["expectation_agreement"] = (sum(d.predicted_status == d.expected_status for d in hand) / len(hand)
                                    if hand else None)
    return out


@dataclass
class CaseDetail:
    case_id: str
    category: str | None
    legality: str | None
    predicted_status: str
    expected_status: str | None
    predicted_citations: list[str]
    expected_citations: list[str]
    error: str | None = None

    def to_json(self) -> dict:
        return {"case_id": self.case_id, "category": self.category, "legality": self.legality,
                "predicted_status": self.predicted_status, "expected_status": self.expected_status,
                "predicted_citations": self.predicted_citations,
                "expected_citations": self.expected_citations, "error": self.error}


def _round(v):
    return round(v, 4) if isinstance(v, float) else v


@dataclass
class EvaluationReport:
    rows: list[dict] = field(default_factory=list)
    totals: dict = field(default_factory=dict)
    cases: list[CaseDetail] = field(default_factory=list)
    relaxed: bool = False

    @property
    def errors(self) -> list[CaseDetail]:
        return [d for d in self.cases if d.error is not None]

    def to_json(self) -> dict:
        return {"relaxed_citations": self.relaxed,
                "rows": [{k: _round(v) for k, v in row.items()} for row in self.rows],
                "totals": {k: _round(v) for k, v in self.totals.items()},
                "cases": [d.to_json() for d in self.cases]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        def fmt(v, pct=False):
            if v is None:
                return "---"
            return f"{v * 100:.1f}%" if pct else f"{v:.4f}"

        header = f"{'Category':<14} {'Status':<6} {'Cases':>5} {'Violation F1':>12} {'SMT Accuracy':>12}"
        lines = [header, "-" * len(header)]
        for row in self.rows:
            lines.append(f"{row['category']:<14} {row['status_group']:<6} {row['cases']:>5} "
                         f"{fmt(row['violation_f1']):>12} {fmt(row['category_smt_accuracy'], True):>12}")
        lines.append("-" * len(header))
        t = self.totals
        lines.append(f"{'Total':<14} {'---':<6} {t.get('cases', 0):>5} {fmt(t.get('violation_f1')):>12} "
                     f"{fmt(t.get('smt_accuracy'), True):>12}")
        if t.get("smt_accuracy") is not None:
            lines.append(f"smt_accuracy = {t['smt_accuracy']:.4f}")
        return "\n".join(lines) + "\n"


def _status_group(case: CaseRecord) -> str:
    if case.ground_truth is not None:
        return LEGALITY_STATUS[case.ground_truth.legality]
    if case.expected is not None:
        return case.expected.status
    return "SAT"


def _run_one(case: CaseRecord, store, onto, provider, formalizer, tables, include_permission) -> CaseDetail:
    legality = case.ground_truth.legality if case.ground_truth else None
    expected_c = list(case.ground_truth.violated_citations) if case.ground_truth else []
    expected_s = case.expected.status if case.expected else None
    try:
        report = verify_case(case, store, onto, provider, formalizer, tables,
                             include_permission=include_permission, trace=False)
    except NoaVerifyError as exc:
        log.warning("%s failed: %s", case.case_id, exc)
        return CaseDetail(case.case_id, case.category, legality, "ERROR", expected_s, [], expected_c,
                          f"{type(exc).__name__}: {exc}")
    return CaseDetail(case.case_id, case.category, legality, report.status, expected_s,
                      report.citations, expected_c)


def evaluate_cases(cases: Sequence[CaseRecord], store, onto, provider, formalizer, tables=None,
                   relaxed: bool = False, parallelism: int = 1,
                   include_permission: bool = False, load_errors=()) -> EvaluationReport:
    cases = sorted(cases, key=lambda c: c.case_id)
    args = (store, onto, provider, formalizer, tables, include_permission)
    if parallelism > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            details = list(pool.map(lambda c: _run_one(c, *args), cases))
    else:
        details = [_run_one(c, *args) for c in cases]
    groups: dict[tuple[str, str], list[CaseDetail]] = {}
    by_category: dict[str, list[CaseDetail]] = {}
    for case, d in zip(cases, details):
        cat = case.category or "Uncategorized"
        groups.setdefault((cat, _status_group(case)), []).append(d)
        by_category.setdefault(cat, []).append(d)
    rows = []
    for (cat, group) in sorted(groups):
        row = {"category": cat, "status_group": group}
        row.update(_aggregate(groups[(cat, group)], relaxed))
        row["category_smt_accuracy"] = _aggregate(by_category[cat], relaxed)["smt_accuracy"]
        rows.append(row)
    details += list(load_errors)
    details.sort(key=lambda d: d.case_id)
    totals = _aggregate(details, relaxed) if details else {"cases": 0}
    return EvaluationReport(rows, totals, details, relaxed)


def run_dataset(directory: str | Path, store, onto, provider, formalizer, tables=None,
                relaxed: bool = False, parallelism: int = 1,
                include_permission: bool = False) -> EvaluationReport:
    """Verify every case file under ``directory`` and aggregate per category and status group.

    A file that fails to load is recorded as an errored case; the run goes on.
    """
    cases, broken = [], []
    for path in sorted(Path(directory).glob("*.json")):
        try:
            cases.append(load_case(path))
        except (NoaVerifyError, ValueError, KeyError) as exc:
            broken.append(CaseDetail(path.stem, None, None, "ERROR", None, [], [],
                                     f"{type(exc).__name__}: {exc}"))
    return evaluate_cases(cases, store, onto, provider, formalizer, tables,
                          relaxed, parallelism, include_permission, broken)
