import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from noaverify.errors import DuplicateId, DuplicateRule, TypecheckFailed
from noaverify.logic import Kind, free_symbols, parse
from noaverify.rulestore import RuleRecord, RuleStore, load_rules, save_rules

from .oracles import symbols
from .rule_strings import EXAMPLE_RULE_FILE, SUMMARY_RULES


def record(rid, citation, logic, applies, vocab):
    return RuleRecord(rid, citation, "text", parse(logic, vocab), tuple(applies))


def test_example_rule_stored(vocab):
    store = RuleStore(vocab)
    rid = store.add_rule(RuleRecord.from_json(EXAMPLE_RULE_FILE[0], vocab))
    assert rid == "Rule_ResidencyRequirement"
    assert free_symbols(store.rules[rid].logic) == {
        "Applicant_ResidenceCounty", "Applicant_ApplicationCounty", "Applicant_Eligible"}
    with pytest.raises(DuplicateId):
        store.add_rule(RuleRecord.from_json(EXAMPLE_RULE_FILE[0], vocab))


def test_summary_rules_and_symbol_index(vocab):
    store = RuleStore(vocab)
    for i, (cite, concepts, logic) in enumerate(SUMMARY_RULES):
        store.add_rule(record(f"R{i}", cite, logic, concepts, vocab))
    assert len(store) == 5
    scanned = set()
    for _, _, logic in SUMMARY_RULES:
        scanned |= symbols(parse(logic))
    assert scanned <= set(store.index)
    for sym in scanned:
        assert store.index[sym] == {r.id for r in store if sym in r.vocabulary}


def test_duplicate_logic_and_citation(vocab):
    store = RuleStore(vocab)
    store.add_rule(record("A", "MPP 63-406", "Implies(And(StudentFlag, Not(MeetsStudentExemption)), "
                          "Not(Applicant_Eligible))", ["StudentFlag", "MeetsStudentExemption"], vocab))
    # same canonical logic, conjuncts swapped
    dup = record("B", "MPP 63-406", "Implies(And(Not(MeetsStudentExemption), StudentFlag), "
                 "Not(Applicant_Eligible))", ["StudentFlag", "MeetsStudentExemption"], vocab)
    with pytest.raises(DuplicateRule) as info:
        store.add_rule(dup)
    assert info.value.existing_id == "A"


def test_typecheck_failures(vocab):
    store = RuleStore(vocab)
    with pytest.raises(TypecheckFailed):
        store.add_rule(record("X", "MPP 1-1", "Implies(Unknown_Flag, Applicant_Eligible)", ["Unknown_Flag"], vocab))
    with pytest.raises(TypecheckFailed):
        # StudentFlag is not declared in appliesTo/determines
        store.add_rule(record("Y", "MPP 1-1", "Implies(StudentFlag, Applicant_Eligible)", [], vocab))
    with pytest.raises(TypecheckFailed):
        store.add_rule(RuleRecord("Z", "MPP 1-1", "", parse("Implies(StudentFlag, Applicant_Eligible)"),
                                  ("StudentFlag",), modality="Advisory"))


def test_stored_logic_is_canonical(vocab):
    store = RuleStore(vocab)
    store.add_rule(record("A", "MPP 1-1", "Implies(And(StudentFlag, Not(Not(Resident))), Applicant_Eligible)",
                          ["StudentFlag", "Resident"], vocab))
    assert store.rules["A"].logic == parse("Implies(And(Resident, StudentFlag), Applicant_Eligible)")


def test_corpus_warning(vocab):
    store = RuleStore(vocab, corpus_citations=frozenset({"MPP 63-401.1"}))
    store.add_rule(RuleRecord.from_json(EXAMPLE_RULE_FILE[0], vocab))
    store.add_rule(record("Other", "MPP 63-999", "Implies(StudentFlag, Applicant_Eligible)", ["StudentFlag"], vocab))
    assert len(store.warnings) == 1 and "MPP 63-999" in store.warnings[0]


def test_retrieve_examples(vocab, scenario_store):
    got = scenario_store.retrieve({"GrossIncome", "ResidencyVerificationProvided"})
    assert [r.citation for r in got] == ["MPP 63-301.1", "MPP 63-401.1"]
    assert scenario_store.retrieve(set()) == []


def test_bundled_rules_round_trip(tmp_path, store, onto):
    assert len(store) == 11
    path = tmp_path / "rules.json"
    save_rules(store, path)
    again = load_rules(path, onto.vocabulary())
    assert again.rules == store.rules
    raw = json.loads(path.read_text())
    assert set(raw[0]) == {"id", "citation", "hasText", "class", "subclass", "appliesTo", "determines",
                           "hasLogic", "hasModality", "conceptType"}


BOOL_LABELS = ["StudentFlag", "Resident", "CitizenStatus", "VerificationProvided", "MeetsStudentExemption",
               "HasDisabilityStatus", "ResidencyVerificationProvided", "WorkRegistrationCompleted"]


def _random_store(seed, vocab):
    rng = random.Random(seed)
    store = RuleStore(vocab)
    for i in range(20):
        picks = rng.sample(BOOL_LABELS, rng.randint(1, 3))
        body = picks[0] if len(picks) == 1 else f"And({', '.join(picks)})"
        concl = rng.choice(["Applicant_Eligible", "Not(Applicant_Eligible)"])
        store.add_rule(record(f"R{i:02d}", f"MPP 63-{rng.randint(100, 110)}", f"Implies({body}, {concl})",
                              picks, vocab))
    return store


@pytest.mark.parametrize("seed", range(10))
def test_retrieve_matches_linear_scan(seed, vocab):
    store = _random_store(seed, vocab)
    rng = random.Random(1000 + seed)
    v = set(rng.sample(BOOL_LABELS, rng.randint(0, 3)))
    brute = [r for r in store.rules.values() if (set(r.applies_to) | set(r.determines)) & v]
    got = store.retrieve(v)
    assert {r.id for r in got} == {r.id for r in brute}
    assert got == sorted(got, key=lambda r: (r.citation, r.id))


vocab_sets = st.sets(st.sampled_from(BOOL_LABELS + ["Applicant_Eligible", "Nothing"]))


@given(vocab_sets, vocab_sets, st.integers(0, 3))
def test_retrieve_union_and_monotone(v1, v2, seed):
    from noaverify.ontology import load_ontology

    store = _random_store(seed, dict(load_ontology().vocabulary()))
    ids = lambda rs: {r.id for r in rs}  # noqa: E731
    assert ids(store.retrieve(v1 | v2)) == ids(store.retrieve(v1)) | ids(store.retrieve(v2))
    assert ids(store.retrieve(v1)) <= ids(store.retrieve(v1 | v2))


def test_store_json_round_trip(vocab):
    store = _random_store(3, vocab)
    again = RuleStore.from_json(json.loads(json.dumps(store.to_json())), vocab)
    assert again.rules == store.rules and again.index == store.index
    assert store.vocab["GrossIncome"] is Kind.NUMERIC
