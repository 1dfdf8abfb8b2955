import random
from fractions import Fraction

import pytest

from noaverify.errors import MissingTableEntry
from noaverify.logic import BoolConst, BoolVar, Cmp, NumConst, NumVar, Not, parse
from noaverify.logic.canonical import canonicalize
from noaverify.verify import ground, item, load_tables, simplify

from .oracles import random_mixed_formula, reference_eval, symbols


def test_income_rule_grounds_to_negated_eligibility():
    rule = item(parse("Implies(GrossIncome > IncomeThreshold, Not(Applicant_Eligible))"), key="R")
    [out] = ground([rule], {"GrossIncome": Fraction("2015.13"), "IncomeThreshold": Fraction(1800)})
    assert out.expr == Not(BoolVar("Applicant_Eligible"))
    assert out.facts_used == ("GrossIncome", "IncomeThreshold")
    assert out.tag == rule.tag


def test_vacuous_rule_is_dropped():
    rule = item(parse("Implies(GrossIncome > IncomeThreshold, Not(Applicant_Eligible))"))
    assert ground([rule], {"GrossIncome": 1000, "IncomeThreshold": 1800}) == []


def test_false_item_is_kept():
    claim = item(parse("GrossIncome > IncomeThreshold"), kind="Claim", key="0")
    [out] = ground([claim], {"GrossIncome": 1000, "IncomeThreshold": 1800})
    assert out.expr == BoolConst(False)


def test_untouched_items_pass_through():
    it = item(parse("Implies(StudentFlag, Not(Applicant_Eligible))"))
    assert ground([it], {"GrossIncome": 3}) == [it]


def test_fpl_lookup(tables):
    assert tables["FPL"][Fraction(2)] == 2215
    rule = item(parse("Implies(GrossIncome > FPL(HouseholdSize), Not(Applicant_Eligible))"))
    [out] = ground([rule], {"GrossIncome": 2300, "HouseholdSize": 2}, tables)
    assert out.expr == Not(BoolVar("Applicant_Eligible"))
    assert ground([rule], {"GrossIncome": 2000, "HouseholdSize": 2}, tables) == []


def test_missing_table_entry(tables):
    rule = item(parse("Implies(GrossIncome > FPL(HouseholdSize), Not(Applicant_Eligible))"))
    with pytest.raises(MissingTableEntry) as info:
        ground([rule], {"GrossIncome": 2300, "HouseholdSize": 40}, tables)
    assert info.value.function == "FPL"
    with pytest.raises(MissingTableEntry):
        ground([rule], {"HouseholdSize": 2}, None)


def test_custom_table_file(tmp_path):
    path = tmp_path / "t.json"
    path.write_text('{"_note": "x", "FPL": {"1": "10.5"}}')
    assert load_tables(path) == {"FPL": {Fraction(1): Fraction(21, 2)}}


def test_simplify_mixed_constant_kinds():
    assert simplify(Cmp("=", NumConst(Fraction(1)), parse('X = "a"').rhs)) == BoolConst(False)


NUMS = ["x", "y"]
BOOLS = ["p", "q"]
CONSTS = [Fraction(k, 2) for k in range(5)]
POINTS = [Fraction(k, 4) for k in range(-2, 11)]


@pytest.mark.parametrize("seed", range(40))
def test_grounding_preserves_meaning(seed):
    rng = random.Random(seed)
    e = random_mixed_formula(rng, BOOLS, NUMS, CONSTS, 3)
    full = {v: rng.choice(POINTS) for v in NUMS} | {v: rng.random() < 0.5 for v in BOOLS}
    known = {k: v for k, v in full.items() if rng.random() < 0.6}
    out = ground([item(e)], known)
    if not out:
        # dropped items must hold for every completion
        for _ in range(20):
            env = full | {v: rng.choice(POINTS) for v in NUMS if v not in known} | \
                {v: rng.random() < 0.5 for v in BOOLS if v not in known}
            assert reference_eval(e, env) is True
        return
    g = out[0].expr
    assert not (symbols(g) & set(known))
    assert set(out[0].facts_used) <= set(known)
    for _ in range(20):
        env = dict(known)
        env |= {v: rng.choice(POINTS) for v in NUMS if v not in known}
        env |= {v: rng.random() < 0.5 for v in BOOLS if v not in known}
        assert reference_eval(g, env) == reference_eval(e, env)
    assert canonicalize(g) == g


def test_grounding_numeric_var_constant():
    e = Cmp("<", NumVar("x"), NumConst(Fraction(1)))
    assert ground([item(e)], {"x": Fraction(1, 2)}) == []
