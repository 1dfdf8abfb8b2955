"""Audit exports: result JSON and the violation graph as DOT or GraphML."""

from __future__ import annotations

import io
import json

import networkx as nx

from .engine import VerificationReport

RED, GREEN, GRAY = "red", "green", "gray"


def result_json(report: VerificationReport, include_trace: bool = True) -> str:
    return json.dumps(report.to_json(include_trace), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def violation_graph(report: VerificationReport) -> nx.DiGraph:
    """Rule nodes colored by status plus the core items that implicate them."""
    g = nx.DiGraph(case_id=report.case_id, status=report.status)
    violated = {r.id for r in report.violated_rules()}
    for r in report.rules:
        if r.id in violated:
            color = RED
        elif report.status == "SAT":
            color = GREEN
        else:
            color = GRAY
        g.add_node(r.id, kind="Rule", citation=r.citation, color=color, label=f"{r.id}\n{r.citation}")
    for it in report.core:
        if it.tag.kind == "Rule":
            continue
        node = str(it.tag)
        g.add_node(node, kind=it.tag.kind, citation=",".join(it.citations), color=RED, label=node)
        for r in report.rules:
            if r.citation in it.citations:
                g.add_edge(node, r.id, relation="implicates")
    return g


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def to_dot(report: VerificationReport) -> str:
    g = violation_graph(report)
    lines = [f"digraph {_quote(report.case_id)} {{", "  rankdir=LR;",
             f"  label={_quote(report.case_id + ': ' + report.status)};"]
    for node, data in g.nodes(data=True):
        shape = "box" if data["kind"] == "Rule" else "ellipse"
        lines.append(f"  {_quote(node)} [label={_quote(data['label'])}, shape={shape}, "
                     f"style=filled, fillcolor={data['color']}];")
    for a, b, data in g.edges(data=True):
        lines.append(f"  {_quote(a)} -> {_quote(b)} [label={_quote(data['relation'])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_graphml(report: VerificationReport) -> str:
    buf = io.BytesIO()
    nx.write_graphml(violation_graph(report), buf)
    return buf.getvalue().decode("utf-8")
