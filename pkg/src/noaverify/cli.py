"""Command-line entry point.

Exit codes: 0 success, 1 when any case (or the single requested verification)
failed, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path

from .abox import load_case
from .config import Config, load_config
from .corpus import load_corpus, save_corpus
from .errors import ConfigError, NoaVerifyError
from .evaluation import run_dataset
from .extraction import (EchoFormalizer, FormalizationRequest, HttpFormalizer, formalize,
                         match_concepts)
from .extraction.formalize import describe
from .extraction.segment import ClauseSpan
from .logic import Kind, unparse
from .ontology import (Concept, cluster_diagnostics, default_kind, embed_concepts,
                       integrate_concept, load_ontology, save_ontology, seed_ontology)
from .rulestore import RuleRecord, load_rules, save_rules
from .similarity import EmbeddingServiceSimilarity, offline_matcher
from .verify import load_tables, result_json, to_dot, to_graphml, verify_case

log = logging.getLogger("noaverify")


class Session:
    """Resolves the artifacts a command needs from config and workspace."""

    def __init__(self, config: Config):
        self.config = config
        self.ws = config.workspace_path

    def _path(self, configured: str | None, name: str) -> Path | None:
        if configured:
            return Path(configured)
        candidate = self.ws / name
        return candidate if candidate.exists() else None

    def ontology(self):
        return load_ontology(self._path(self.config.ontology, "ontology.json"))

    def corpus_citations(self):
        path = self._path(self.config.corpus, "corpus.json")
        return frozenset(load_corpus(path).nodes) if path else None

    def store(self, onto=None):
        onto = onto or self.ontology()
        return load_rules(self._path(self.config.rules, "rules.json"), onto.vocabulary(),
                          corpus_citations=self.corpus_citations())

    def tables(self):
        return load_tables(self.config.fpl_table)

    def provider(self):
        if self.config.embedding_endpoint:
            return EmbeddingServiceSimilarity(self.config.embedding_endpoint, self.config.api_token,
                                              self.config.timeout)
        return offline_matcher()

    def formalizer(self):
        if self.config.formalizer_endpoint:
            return HttpFormalizer(self.config.formalizer_endpoint, self.config.formalizer_model,
                                  self.config.api_token, self.config.timeout)
        return EchoFormalizer()

    def save(self, name: str) -> Path:
        self.ws.mkdir(parents=True, exist_ok=True)
        return self.ws / name


def _print_json(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))


# -- commands ---------------------------------------------------------------

def cmd_ingest(s: Session, args) -> int:
    graph = load_corpus(args.corpus)
    out = s.save("corpus.json")
    save_corpus(graph, out)
    for w in graph.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"{len(graph)} clauses, {len(graph.edges)} references -> {out}")
    return 0


def cmd_ontology(s: Session, args) -> int:
    if args.action == "seed":
        if args.seed:
            seed = json.loads(Path(args.seed).read_text(encoding="utf-8"))
        else:
            seed = json.loads(resources.files("noaverify.data").joinpath("seed.json").read_text("utf-8"))
        onto = seed_ontology(seed)
        out = s.save("ontology.json")
        save_ontology(onto, out)
        print(f"{len(onto.domains)} domains, {len(onto)} concepts -> {out}")
        return 0
    onto = s.ontology()
    provider = s.provider()
    if args.action == "integrate":
        if not args.label or not args.domain:
            raise ConfigError("ontology integrate needs --label and --domain")
        kind = Kind.parse(args.kind) if args.kind else default_kind(args.label)
        outcome = integrate_concept(onto, Concept(args.label, args.domain, kind, args.definition or "",
                                                  args.citation or ""), provider,
                                    s.config.dedup_threshold)
        out = s.save("ontology.json")
        save_ontology(onto, out)
        print(outcome)
        return 0
    embed_concepts(onto, provider, overwrite=True)
    _print_json(cluster_diagnostics(onto).to_json())
    return 0


def cmd_rules(s: Session, args) -> int:
    onto = s.ontology()
    store = s.store(onto)
    if args.action == "list":
        for r in store:
            print(f"{r.id}\t{r.citation}\t{r.modality}\t{unparse(r.logic)}")
        return 0
    if not args.file:
        raise ConfigError("rules add needs a rule file")
    data = json.loads(Path(args.file).read_text(encoding="utf-8"))
    for entry in data if isinstance(data, list) else [data]:
        rid = store.add_rule(RuleRecord.from_json(entry, store.vocab, store.functions))
        print(f"added {rid}")
    for w in store.warnings:
        print(f"warning: {w}", file=sys.stderr)
    save_rules(store, s.save("rules.json"))
    return 0


def cmd_formalize(s: Session, args) -> int:
    onto = s.ontology()
    if args.concepts:
        labels = tuple(args.concepts)
    else:
        labels = match_concepts(ClauseSpan("cli", 0, args.clause), onto, s.provider(),
                                s.config.match_floor).labels
    request = FormalizationRequest(tuple((l, onto.kind_of(l) or default_kind(l)) for l in labels),
                                   args.clause, args.template, frozenset(onto.entities()))
    result = formalize(request, s.formalizer(), s.config.max_attempts)
    out = describe(result)
    out["concepts"] = list(labels)
    _print_json(out)
    return 0 if result.ok else 1


def cmd_verify(s: Session, args) -> int:
    onto = s.ontology()
    report = verify_case(load_case(args.case), s.store(onto), onto, s.provider(), s.formalizer(),
                         s.tables(), include_permission=s.config.include_permission,
                         trace=bool(args.trace), floor=s.config.match_floor)
    sys.stdout.write(result_json(report, include_trace=False))
    if args.trace:
        Path(args.trace).write_text(json.dumps([t.to_json() for t in report.trace], indent=2) + "\n",
                                    encoding="utf-8")
    if args.export_dot:
        Path(args.export_dot).write_text(to_dot(report), encoding="utf-8")
    if args.export_graphml:
        Path(args.export_graphml).write_text(to_graphml(report), encoding="utf-8")
    return 0


def cmd_evaluate(s: Session, args) -> int:
    onto = s.ontology()
    report = run_dataset(args.dataset, s.store(onto), onto, s.provider(), s.formalizer(), s.tables(),
                         relaxed=args.relaxed_citations, parallelism=s.config.parallelism,
                         include_permission=s.config.include_permission)
    sys.stdout.write(report.to_text())
    if args.report:
        Path(args.report).write_text(report.dumps(), encoding="utf-8")
    for d in report.errors:
        print(f"error: {d.case_id}: {d.error}", file=sys.stderr)
    return 1 if report.errors else 0


def cmd_export_graph(s: Session, args) -> int:
    onto = s.ontology()
    path = Path(args.path)
    if path.suffix == ".json":
        path.write_text(json.dumps(onto.to_json(), indent=2) + "\n", encoding="utf-8")
    else:
        path.write_text(onto.to_dot(), encoding="utf-8")
    print(f"{len(onto)} concepts -> {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="noaverify", description="Verify benefit-decision explanations "
                                "against formalized eligibility rules.")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("ingest", help="validate and store a statutory corpus")
    q.add_argument("corpus")
    q.set_defaults(func=cmd_ingest)

    q = sub.add_parser("ontology", help="seed, extend or inspect the concept ontology")
    q.add_argument("action", choices=["seed", "integrate", "diagnostics"])
    q.add_argument("--seed")
    q.add_argument("--label")
    q.add_argument("--domain")
    q.add_argument("--kind")
    q.add_argument("--definition")
    q.add_argument("--citation")
    q.set_defaults(func=cmd_ontology)

    q = sub.add_parser("rules", help="add or list statutory rules")
    q.add_argument("action", choices=["add", "list"])
    q.add_argument("file", nargs="?")
    q.set_defaults(func=cmd_rules)

    q = sub.add_parser("formalize", help="formalize one clause")
    q.add_argument("clause")
    q.add_argument("--concepts", nargs="*")
    q.add_argument("--template", default="abox_directed")
    q.set_defaults(func=cmd_formalize)

    q = sub.add_parser("verify", help="verify one case file")
    q.add_argument("case")
    q.add_argument("--export-dot")
    q.add_argument("--export-graphml")
    q.add_argument("--trace")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("evaluate", help="evaluate a dataset directory")
    q.add_argument("dataset")
    q.add_argument("--relaxed-citations", action="store_true")
    q.add_argument("--report")
    q.set_defaults(func=cmd_evaluate)

    q = sub.add_parser("export-graph", help="write the ontology graph (DOT, or JSON for .json)")
    q.add_argument("path")
    q.set_defaults(func=cmd_export_graph)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        session = Session(load_config(args.config))
        return args.func(session, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NoaVerifyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
