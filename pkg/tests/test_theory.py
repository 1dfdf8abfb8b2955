import itertools
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from noaverify.logic import Cmp, NumConst, NumVar, TextConst, TextVar
from noaverify.verify.encode import normalize_atom
from noaverify.verify.theory import (Theory, fresh_token, numeric_consistent, numeric_witness,
                                     text_consistent, text_witness)

from .oracles import reference_eval

VARS = ["x", "y", "z"]
CONSTS = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
GRID = [Fraction(k, 8) for k in range(-24, 41)]  # covers [min - 3, max + 3] at 1/8 spacing


def as_lit(cmp, positive=True):
    """Normalize a comparison and fold any negation into the polarity."""
    atom = normalize_atom(cmp)
    if hasattr(atom, "arg"):
        return atom.arg, not positive
    return atom, positive


numeric_terms = st.one_of(st.sampled_from(VARS).map(NumVar), st.sampled_from(CONSTS).map(NumConst))


@st.composite
def numeric_lits(draw):
    out = []
    for _ in range(draw(st.integers(1, 6))):
        a = NumVar(draw(st.sampled_from(VARS)))
        b = draw(numeric_terms)
        if b == a:
            continue
        op = draw(st.sampled_from(["=", "!=", "<", "<=", ">", ">="]))
        out.append(as_lit(Cmp(op, a, b), draw(st.booleans())))
    return out


def holds(lits, env):
    return all(reference_eval(a, env) == pos for a, pos in lits)


def grid_consistent(lits):
    labels = sorted({t.label for a, _ in lits for t in (a.lhs, a.rhs) if hasattr(t, "label")})
    for vals in itertools.product(GRID, repeat=len(labels)):
        if holds(lits, dict(zip(labels, vals))):
            return True
    return False


@given(numeric_lits())
def test_numeric_consistency_matches_grid(lits):
    assert numeric_consistent(lits) == grid_consistent(lits)


@given(numeric_lits())
def test_numeric_witness_satisfies(lits):
    if numeric_consistent(lits):
        w = numeric_witness(lits, VARS)
        assert set(VARS) <= set(w)
        assert holds(lits, w)
        assert all(isinstance(v, Fraction) for v in w.values())


def test_unconstrained_numeric_is_zero():
    assert numeric_witness([], ["x"]) == {"x": 0}


def test_strict_interval_point():
    lits = [(Cmp("<", NumVar("x"), NumConst(2)), True), (Cmp("<=", NumVar("x"), NumConst(1)), False)]
    w = numeric_witness(lits, ["x"])
    assert Fraction(1) < w["x"] < Fraction(2)


def test_dense_chain_between_constants():
    # 0 < x < y < z < 1 needs three distinct points inside (0, 1)
    lits = [as_lit(Cmp("<", NumConst(0), NumVar("x"))), as_lit(Cmp("<", NumVar("x"), NumVar("y"))),
            as_lit(Cmp("<", NumVar("y"), NumVar("z"))), as_lit(Cmp("<", NumVar("z"), NumConst(1)))]
    assert numeric_consistent(lits)
    w = numeric_witness(lits, VARS)
    assert 0 < w["x"] < w["y"] < w["z"] < 1


TEXT_VARS = ["p", "q", "r"]
WORDS = ["a", "b"]
text_terms = st.one_of(st.sampled_from(TEXT_VARS).map(TextVar), st.sampled_from(WORDS).map(TextConst))


@st.composite
def text_lits(draw):
    out = []
    for _ in range(draw(st.integers(1, 6))):
        a = TextVar(draw(st.sampled_from(TEXT_VARS)))
        b = draw(text_terms)
        if a == b:
            continue
        out.append(as_lit(Cmp("=", a, b), draw(st.booleans())))
    return out


def text_brute(lits):
    domain = WORDS + ["other1", "other2", "other3"]
    for vals in itertools.product(domain, repeat=len(TEXT_VARS)):
        if holds(lits, dict(zip(TEXT_VARS, vals))):
            return True
    return False


@given(text_lits())
def test_text_consistency_matches_brute_force(lits):
    assert text_consistent(lits) == text_brute(lits)
    if text_consistent(lits):
        w = text_witness(lits, TEXT_VARS)
        assert holds(lits, w)


def test_fresh_tokens_are_distinguished():
    w = text_witness([(Cmp("=", TextVar("p"), TextConst("a")), False)], ["p", "q"])
    assert w["p"] != "a" and w["q"] != w["p"]
    assert fresh_token(3) == "<fresh-3>"


@given(numeric_lits())
def test_lemma_is_minimal_conflict(lits):
    atoms = {}
    signed = []
    for i, (a, pos) in enumerate(lits, start=1):
        atoms[i] = a
        signed.append(i if pos else -i)
    th = Theory(atoms)
    lemma = th(signed)
    if numeric_consistent(lits):
        assert lemma is None
        return
    core = [-l for l in lemma]
    assert set(core) <= set(signed)
    as_pairs = lambda ls: [(atoms[abs(l)], l > 0) for l in ls]  # noqa: E731
    assert not numeric_consistent(as_pairs(core))
    for drop in core:
        assert numeric_consistent(as_pairs([l for l in core if l != drop]))
    assert th.calls == 1


def test_witness_avoids_constants_placed_later():
    # x > 1 with x kept off 1/2, 3/2, 2 and 5/2; the constant 2 sorts after x
    x = NumVar("x")
    lits = [(Cmp("<=", x, NumConst(Fraction(1))), False)] + [
        (Cmp("=", x, NumConst(Fraction(k, 2))), False) for k in (1, 3, 4, 5)]
    w = numeric_witness(lits, ["x"])
    assert holds(lits, w)
