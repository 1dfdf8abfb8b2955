"""Acceptance criteria 1-10, each timed against its budget.

Every test records a one-line verdict in ``conftest.ACCEPTANCE``; the
terminal summary prints them after the run.
"""

import functools
import random
import time
from fractions import Fraction

import numpy as np

from noaverify.abox import CaseRecord, build_assertions, load_case, load_dataset
from noaverify.evaluation import run_dataset, smt_accuracy, violation_f1
from noaverify.logic import Kind, canonicalize, parse, typecheck, unparse
from noaverify.ontology import (Concept, Domain, MergedInto, OntologyGraph, cluster_diagnostics,
                                default_kind, integrate_concept, seed_ontology)
from noaverify.similarity import TrigramSimilarity
from noaverify.verify import minimize_core, result_json, solve, to_dot, verify_case
from noaverify.verify.solver import is_sat

from .conftest import ACCEPTANCE, DATASET, FIXTURES
from .oracles import (accuracy_oracle, f1_oracle, grid_sat, random_bool_formula, random_mixed_formula,
                      truth_table_sat)
from .rule_strings import ALL_RULE_STRINGS, COUNTY_MISMATCH_VARIANTS
from .test_solver import items_of


def criterion(number, budget):
    """Run the body, time it, and record pass/fail with the elapsed time."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            ok, detail = False, "raised"
            try:
                detail = fn(*args, **kwargs) or ""
                ok = True
            finally:
                elapsed = time.perf_counter() - start
                within = elapsed < budget
                ACCEPTANCE[number] = (ok and within, f"{detail} ({elapsed:.2f}s, budget {budget}s)".strip())
            assert within, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"
        return run
    return wrap


@criterion(1, 1.0)
def test_c1_rule_strings_round_trip(vocab):
    for src in ALL_RULE_STRINGS:
        e = parse(src, vocab)
        assert typecheck(e, vocab) is Kind.BOOLEAN, src
        assert parse(unparse(e), vocab) == e, src
    return f"{len(ALL_RULE_STRINGS)} rule strings"


@criterion(2, 1.0)
def test_c2_scenarios(scenario_store, onto, provider, formalizer):
    a = verify_case(load_case(FIXTURES / "scenario_a.json"), scenario_store, onto, provider, formalizer)
    b = verify_case(load_case(FIXTURES / "scenario_b.json"), scenario_store, onto, provider, formalizer)
    assert a.status == "SAT"
    assert b.status == "UNSAT"
    assert any("MPP 63-301.1" in it.citations for it in b.core)
    assert not any("Residency" in unparse(it.expr) or "MPP 63-401.1" in it.citations for it in b.core)
    return f"A={a.status}, B={b.status} core={[str(it.tag) for it in b.core]}"


@criterion(3, 1.0)
def test_c3_normalization(onto, provider, formalizer):
    facts = {"Applicant_ResidenceCounty": "Yolo", "Applicant_ApplicationCounty": "Yolo"}
    asts = []
    for text in COUNTY_MISMATCH_VARIANTS:
        case = CaseRecord(f"v{len(asts)}", "denial", facts, text)
        rules = build_assertions(case, onto, provider, formalizer).explanation_rules
        assert len(rules) == 1, text
        asts.append(canonicalize(rules[0][0]))
    assert all(e == asts[0] for e in asts)
    return f"5 variants -> {unparse(asts[0])}"


BOOL_ATOMS = [f"b{i:02d}" for i in range(12)]
NUMS = ["x", "y", "z"]
CONSTS = [Fraction(k, 2) for k in range(7)]
GRID = [Fraction(k, 8) for k in range(-16, 41)]


@criterion(4, 60.0)
def test_c4_solver_oracle_equivalence():
    rng = random.Random(2024)
    agree = 0
    for _ in range(1000):
        n = rng.randint(1, 12)
        atoms = BOOL_ATOMS[:n]
        exprs = [random_bool_formula(rng, atoms, rng.randint(1, 4)) for _ in range(rng.randint(1, 4))]
        agree += solve(items_of(exprs)).sat == truth_table_sat(exprs, atoms)
    mixed = 0
    for _ in range(200):
        nv = rng.randint(1, 3)
        nums, bools = NUMS[:nv], BOOL_ATOMS[:rng.randint(0, 3)]
        exprs = [random_mixed_formula(rng, bools, nums, CONSTS, rng.randint(1, 3))
                 for _ in range(rng.randint(1, 4))]
        mixed += solve(items_of(exprs)).sat == grid_sat(exprs, bools, nums, GRID)
    assert (agree, mixed) == (1000, 200)
    return f"boolean {agree}/1000, mixed {mixed}/200"


@criterion(5, 60.0)
def test_c5_core_minimality():
    rng = random.Random(99)
    bools, nums = BOOL_ATOMS[:3], NUMS[:2]
    done = 0
    while done < 200:
        exprs = [random_mixed_formula(rng, bools, nums, CONSTS, 2) for _ in range(rng.randint(2, 10))]
        items = items_of(exprs)
        if is_sat(items):
            continue
        core = minimize_core(items)
        assert not grid_sat([c.expr for c in core], bools, nums, GRID)
        for i in range(len(core)):
            assert grid_sat([c.expr for c in core[:i] + core[i + 1:]], bools, nums, GRID)
        done += 1
    return "200/200 cores minimal"


LABELS = ["Residency_County", "Residency_CountyName", "GrossIncome", "Gross_Income", "GrossIncomes",
          "StudentFlag", "Student_Flags", "CitizenStatus", "Citizen_Status_Flag", "HouseholdSize",
          "Household_Sizes", "WorkHours", "Work_Hours_Total", "ResourceLimit", "Resource_Limits"]
SEED = {"Root": {"subclasses": ["IncomeEligibility", "WorkRequirement"]},
        "IncomeEligibility": {"attributes": ["GrossIncome"]}, "WorkRequirement": {"attributes": ["WorkHours"]}}


@criterion(6, 10.0)
def test_c6_ontology_dedup():
    rng = random.Random(5)
    provider = TrigramSimilarity()
    merges = 0
    for _ in range(500):
        onto = seed_ontology(SEED)
        for _ in range(rng.randint(1, 8)):
            label = rng.choice(LABELS)
            domain = rng.choice(["IncomeEligibility", "WorkRequirement"])
            size = len(onto)
            out = integrate_concept(onto, Concept(label, domain, default_kind(label)), provider)
            if isinstance(out, MergedInto):
                assert out.score > 0.85 and len(onto) == size
                merges += 1
            else:
                assert len(onto) == size + 1
            snapshot = onto.snapshot()
            again = integrate_concept(onto, Concept(label, domain, default_kind(label)), provider)
            assert isinstance(again, MergedInto) and onto == snapshot
    return f"500 sequences, {merges} merges"


@criterion(7, 1.0)
def test_c7_cluster_diagnostics():
    rng = np.random.default_rng(7)
    onto = OntologyGraph()
    names = ["Alpha", "Beta", "Gamma", "Delta"]
    for d, name in enumerate(names):
        onto.add_domain(Domain(name))
        center = np.zeros(16)
        center[d * 4:(d + 1) * 4] = 1.0
        for k in "abcde":
            vec = center + rng.normal(scale=0.35, size=16)
            onto.add_concept(Concept(f"{name}_{k}", name, Kind.BOOLEAN, embedding=tuple(vec)))
    diag = cluster_diagnostics(onto)
    assert diag.intra < diag.inter
    return f"intra {diag.intra:.3f} < inter {diag.inter:.3f}"


@criterion(8, 30.0)
def test_c8_dataset_run(store, onto, provider, formalizer, tables):
    rep = run_dataset(DATASET, store, onto, provider, formalizer, tables)
    assert len(rep.cases) == 43 and not rep.errors
    agree = sum(d.predicted_status == d.expected_status for d in rep.cases)
    assert agree == 43
    counts = {}
    for row in rep.rows:
        counts[row["category"]] = counts.get(row["category"], 0) + row["cases"]
    assert counts == {"Income": 7, "Residency": 9, "Citizenship": 9, "Resources": 8, "Student": 10}
    acc = f"{rep.totals['smt_accuracy']:.4f}"
    assert f"smt_accuracy = {acc}" in rep.to_text()
    return f"statuses {agree}/43, rows {counts}, smt_accuracy {acc}"


CITES = ["MPP 63-301.1", "MPP 63-301.2", "MPP 63-401.1", "MPP 63-406", "MPP 63-502.32", "MPP 63-502.36",
         "MPP 63-503"]


@criterion(9, 5.0)
def test_c9_metric_formulas():
    rng = random.Random(11)
    for _ in range(500):
        pred = set(rng.sample(CITES, rng.randint(0, 4)))
        exp = set(rng.sample(CITES, rng.randint(0, 4)))
        got = violation_f1(pred, exp)
        p, r, f = f1_oracle(pred, exp)
        assert abs(got["precision"] - p) < 1e-12 and abs(got["recall"] - r) < 1e-12
        assert (got["f1"] is None and f is None) or abs(got["f1"] - f) < 1e-12
        pairs = [(rng.choice(["SAT", "UNSAT"]), rng.choice(["upheld", "overturned"]))
                 for _ in range(rng.randint(1, 40))]
        assert abs(smt_accuracy(pairs) - accuracy_oracle(pairs)) < 1e-12
    vector = [("UNSAT", "overturned")] * 42 + [("SAT", "overturned")]
    acc = smt_accuracy(vector)
    assert abs(acc - 0.9767) <= 0.0001
    return f"500 inputs agree, 42/43 -> {acc:.4f}"


@criterion(10, 60.0)
def test_c10_offline_determinism(store, onto, provider, formalizer, tables):
    def full_run():
        rep = run_dataset(DATASET, store, onto, provider, formalizer, tables, parallelism=4)
        exports = []
        for case in load_dataset(DATASET):
            v = verify_case(case, store, onto, provider, formalizer, tables)
            exports.append((result_json(v), to_dot(v)))
        return rep.dumps(), exports

    first, second = full_run(), full_run()
    assert first[0].encode() == second[0].encode()
    assert all(a[0].encode() == b[0].encode() and a[1].encode() == b[1].encode()
               for a, b in zip(first[1], second[1]))
    return f"report + {len(first[1])} case exports byte-identical"
