import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from noaverify.errors import ArityError, KindMismatch, LogicSyntaxError, NonBooleanRoot, UnknownSymbol
from noaverify.logic import (And, BoolConst, BoolVar, Cmp, FuncApp, Implies, Kind, Not, NumConst,
                             NumVar, Or, TextConst, TextVar, Var, canonicalize, desugar_applied,
                             evaluate, free_symbols, parse, typecheck, unparse, walk)

from .oracles import reference_eval, symbols

BOOLS = ["Flag_A", "Flag_B", "Flag_C", "Flag_D"]
NUMS = ["Num_X", "Num_Y", "Num_Z"]
TEXTS = ["Text_P", "Text_Q"]
KINDS = {**{b: Kind.BOOLEAN for b in BOOLS}, **{n: Kind.NUMERIC for n in NUMS},
         **{t: Kind.TEXT for t in TEXTS}}

# -- strategies -----------------------------------------------------------------------

fractions = st.builds(Fraction, st.integers(-5000, 5000), st.sampled_from([1, 2, 3, 4, 8, 10, 100, 7]))
num_consts = fractions.map(NumConst)
texts = st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126), max_size=8)


def num_terms(with_funcs=True):
    base = st.one_of(st.sampled_from(NUMS).map(NumVar), num_consts)
    if not with_funcs:
        return base
    return st.one_of(base, st.sampled_from(NUMS).map(lambda n: FuncApp("FPL", (NumVar(n),))))


def atoms(with_funcs=True, with_text=True):
    num_cmp = st.builds(Cmp, st.sampled_from([">", ">=", "<", "<=", "=", "!="]),
                        num_terms(with_funcs), num_terms(with_funcs))
    text_term = st.one_of(st.sampled_from(TEXTS).map(TextVar), texts.map(TextConst))
    text_cmp = st.builds(Cmp, st.sampled_from(["=", "!="]), text_term, text_term)
    parts = [st.sampled_from(BOOLS).map(BoolVar), st.booleans().map(BoolConst), num_cmp]
    if with_text:
        parts.append(text_cmp)
    return st.one_of(*parts)


def formulas(**kw):
    return st.recursive(
        atoms(**kw),
        lambda kids: st.one_of(
            kids.map(Not),
            st.lists(kids, min_size=2, max_size=3).map(lambda xs: And(tuple(xs))),
            st.lists(kids, min_size=2, max_size=3).map(lambda xs: Or(tuple(xs))),
            st.builds(Implies, kids, kids),
        ),
        max_leaves=10,
    )


# -- parsing ------------------------------------------------------------------------------

def test_table_income_rule_parses():
    e = parse("Implies(GrossIncome > IncomeThreshold, Not(Applicant_Eligible))")
    assert e == Implies(Cmp(">", NumVar("GrossIncome"), NumVar("IncomeThreshold")),
                        Not(BoolVar("Applicant_Eligible")))


def test_parser_preserves_double_negation():
    assert parse("Not(Not(X))") == Not(Not(BoolVar("X")))


def test_or_with_numeric_literal():
    e = parse("Implies(Or(Age >= 60, HasDisabilityStatus), Applicant_Eligible)")
    assert e == Implies(Or((Cmp(">=", NumVar("Age"), NumConst(60)), BoolVar("HasDisabilityStatus"))),
                        BoolVar("Applicant_Eligible"))


def test_equality_spellings_unify():
    vocab = {"A": Kind.TEXT, "B": Kind.TEXT}
    assert parse("Equals(A, B)", vocab) == parse("A = B", vocab) == parse("A == B", vocab)


def test_decimal_literals_are_exact():
    e = parse("GrossIncome = 2015.13")
    assert e.rhs == NumConst(Fraction(201513, 100))


def test_whitespace_insensitive():
    a = parse("Implies(And(A,B),C)")
    b = parse("""Implies(
        And(
          A,
          B
        ),
        C
      )""")
    assert a == b


@pytest.mark.parametrize("src", ["Implies(A,", "And(A B)", "Not()", "A >", ")", "A + B"])
def test_syntax_errors(src):
    with pytest.raises(LogicSyntaxError) as info:
        parse(src)
    assert info.value.expected and info.value.position >= 0


@pytest.mark.parametrize("src,op,got", [("And(A)", "And", 1), ("Or(A)", "Or", 1),
                                        ("Implies(A, B, C)", "Implies", 3), ("Not(A, B)", "Not", 2)])
def test_arity_errors(src, op, got):
    with pytest.raises(ArityError) as info:
        parse(src)
    assert (info.value.operator, info.value.got) == (op, got)


# -- printing -----------------------------------------------------------------------------

def test_print_trivial():
    assert unparse(Not(BoolVar("X"))) == "Not(X)"


def test_print_residency_rule_exact():
    src = "Implies(And(Residency_HouseholdLocation, Residency_ApplicationCounty), Applicant_Eligible)"
    assert unparse(parse(src)) == src


@given(formulas())
def test_parse_print_round_trip(e):
    assert parse(unparse(e), KINDS) == e


# -- typechecking -------------------------------------------------------------------------

def test_typecheck_residency_rule(vocab):
    e = parse("Implies(And(Residency_HouseholdLocation, Residency_ApplicationCounty), Applicant_Eligible)")
    assert typecheck(e, vocab) is Kind.BOOLEAN


def test_kind_mismatch_text_vs_number():
    with pytest.raises(KindMismatch):
        typecheck(Cmp(">", TextVar("County"), NumConst(3)), {"County": Kind.TEXT})


def test_text_order_comparison_rejected():
    with pytest.raises(KindMismatch):
        typecheck(Cmp("<", TextVar("Text_P"), TextVar("Text_Q")), KINDS)


def test_unknown_symbol(vocab):
    with pytest.raises(UnknownSymbol) as info:
        typecheck(parse("Implies(HouseholdIncomeX > 3, Applicant_Eligible)"), vocab)
    assert info.value.label == "HouseholdIncomeX"


def test_unregistered_function(vocab):
    with pytest.raises(UnknownSymbol):
        typecheck(parse("Implies(GrossIncome <= Foo(HouseholdSize), Applicant_Eligible)"), vocab)


def test_non_boolean_root(vocab):
    with pytest.raises(NonBooleanRoot):
        typecheck(NumVar("GrossIncome"), vocab)


@given(formulas(), st.dictionaries(st.sampled_from(["Extra_U", "Extra_V"]), st.sampled_from(list(Kind))))
def test_typecheck_monotone_in_vocab(e, extra):
    assert typecheck(e, KINDS) is Kind.BOOLEAN
    assert typecheck(e, {**KINDS, **extra}) is Kind.BOOLEAN


# -- canonicalization ---------------------------------------------------------------------

def test_canonical_trivia():
    assert canonicalize(And((BoolVar("B"), BoolVar("A")))) == And((BoolVar("A"), BoolVar("B")))
    assert canonicalize(Not(Not(BoolVar("Applicant_Eligible")))) == BoolVar("Applicant_Eligible")
    assert canonicalize(parse("3 < X")) == Cmp(">", NumVar("X"), NumConst(3))
    assert canonicalize(parse("A != B", KINDS | {"A": Kind.TEXT, "B": Kind.TEXT})) == \
        Not(Cmp("=", TextVar("A"), TextVar("B")))
    assert canonicalize(parse("And(B, And(A, Not(Not(C))))")) == parse("And(A, B, C)")
    assert canonicalize(Cmp("<", NumConst(1), NumConst(2))) == BoolConst(True)


def test_implication_kept():
    e = parse("Implies(A, B)")
    assert canonicalize(e) == e


def test_applied_syntax_desugars():
    e = parse("ResidenceCounty(Applicant) = ApplicationCounty(Applicant)")
    assert desugar_applied(e, {"Applicant"}) == parse("Applicant_ResidenceCounty = Applicant_ApplicationCounty")


def _canonical_shape(e):
    for node in walk(e):
        if isinstance(node, Not):
            assert not isinstance(node.arg, Not)
        if isinstance(node, Cmp):
            assert node.op != "!="
        if isinstance(node, (And, Or)):
            assert all(not isinstance(k, type(node)) for k in node.args)
            printed = [unparse(k) for k in node.args]
            assert printed == sorted(printed)


@given(formulas())
def test_canonicalize_idempotent_and_normal(e):
    c = canonicalize(e)
    assert canonicalize(c) == c
    _canonical_shape(c)
    assert typecheck(c, KINDS) is Kind.BOOLEAN


NUM_SAMPLES = [Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(2), Fraction(7)]


@given(formulas(with_funcs=False), st.lists(st.sampled_from(NUM_SAMPLES), min_size=3, max_size=3),
       st.lists(st.sampled_from(["", "a", "b"]), min_size=2, max_size=2))
def test_canonicalize_preserves_semantics(e, nums, txts):
    c = canonicalize(e)
    fixed = dict(zip(NUMS, nums)) | dict(zip(TEXTS, txts))
    for bits in itertools.product([False, True], repeat=len(BOOLS)):
        env = fixed | dict(zip(BOOLS, bits))
        assert reference_eval(e, env) == reference_eval(c, env)
        assert evaluate(c, env) == reference_eval(c, env)


# -- symbols ------------------------------------------------------------------------------

def test_free_symbols_examples():
    assert free_symbols(BoolVar("X")) == {"X"}
    e = parse("Implies(GrossIncome > IncomeThreshold, Not(Applicant_Eligible))")
    assert free_symbols(e) == {"GrossIncome", "IncomeThreshold", "Applicant_Eligible"}
    assert free_symbols(parse("GrossIncome <= FPL(HouseholdSize)")) == {"GrossIncome", "FPL", "HouseholdSize"}


@given(formulas())
def test_free_symbols_match_tree_walk(e):
    funcs = {n.name for n in walk(e) if isinstance(n, FuncApp)}
    assert free_symbols(e) == symbols(e) | funcs
    assert free_symbols(e, functions=False) == {v.label for v in walk(e) if isinstance(v, Var)}
