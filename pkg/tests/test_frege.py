import pytest
from hypothesis import given, strategies as st

from deepinf import frege
from deepinf.corpus import random_frege
from deepinf.frege import (
    AXIOMS, FregeDerivation, Imp, axiom_line, check_frege,
    frege_semantic_check, frege_tautology, mp_line, parse_frege, premiss_line, print_frege,
)
from deepinf.frege_bridge import cos_to_frege_formula, frege_to_cos_formula
from deepinf.formula import parse_formula as P
from deepinf.semantics import equivalent

from strategies import frege_formulas, formulas


def test_axiom_count_and_tautologies():
    assert sorted(AXIOMS) == list(range(1, 18))
    for k, f in AXIOMS.items():
        assert frege_tautology(f), k


def test_axiom_instance():
    ln = axiom_line(8, {"A": parse_frege("(a | b)"), "B": parse_frege("~c")})
    assert ln.formula == parse_frege("(a | b) -> (~c -> (a | b))")
    assert check_frege(FregeDerivation([ln])).valid


def test_wrong_instance_rejected():
    bad = frege.Line(parse_frege("a -> (b -> b)"), "axiom", 8)
    r = check_frege(FregeDerivation([bad]))
    assert not r.valid and r.error == "not-an-instance" and r.failed_line == 1


def test_premiss_and_mp():
    d = FregeDerivation([
        premiss_line(parse_frege("a")),
        premiss_line(parse_frege("a -> b")),
        mp_line(parse_frege("b"), 1, 2),
    ])
    r = check_frege(d)
    assert r.valid and not r.is_proof and r.premisses == [parse_frege("a"), parse_frege("a -> b")]
    assert r.conclusion == parse_frege("b")
    assert frege_semantic_check(d)


def test_forward_reference_invalid():
    d = FregeDerivation([
        mp_line(parse_frege("b"), 2, 3),
        premiss_line(parse_frege("a")),
        premiss_line(parse_frege("a -> b")),
    ])
    r = check_frege(d)
    assert not r.valid and r.error == "bad-reference" and r.failed_line == 1


def test_mp_mismatch():
    d = FregeDerivation([
        premiss_line(parse_frege("a")),
        premiss_line(parse_frege("c -> b")),
        mp_line(parse_frege("b"), 1, 2),
    ])
    assert check_frege(d).error == "mp-mismatch"


def test_ext_not_in_plain_frege():
    d = FregeDerivation([frege.ext_line("X", parse_frege("a & b"))])
    assert check_frege(d).error == "rule-not-in-system"
    assert check_frege(d, "xFrege").valid


def test_parse_print():
    f = parse_frege("~(a | b) -> (c & t)")
    assert parse_frege(print_frege(f)) == f
    assert parse_frege("a -> b -> c") == parse_frege("a -> (b -> c)")
    with pytest.raises(frege.FregeParseError):
        parse_frege("(a |")


@given(frege_formulas())
def test_print_round_trip(f):
    assert parse_frege(print_frege(f)) == f


def test_double_negation_translation():
    # ~~A -> A becomes [~A | A] once negation reaches the leaves
    assert frege_to_cos_formula(parse_frege("~~A -> A")) == P("[~A | A]")
    assert frege_to_cos_formula(parse_frege("~(a & t)")) == P("[~a | f]")


@given(frege_formulas())
def test_frege_to_cos_preserves_truth_table(f):
    g = frege_to_cos_formula(f)
    back = frege_to_cos_formula(cos_to_frege_formula(g))
    assert back == g
    assert frege_tautology(Imp(f, cos_to_frege_formula(g)))
    assert frege_tautology(Imp(cos_to_frege_formula(g), f))


@given(formulas(max_leaves=8))
def test_cos_to_frege_round_trip(f):
    assert equivalent(frege_to_cos_formula(cos_to_frege_formula(f)), f)


@given(st.integers(0, 10 ** 6))
def test_frg_round_trip(seed):
    d = random_frege(seed, steps=5)
    assert check_frege(d).is_proof and frege_semantic_check(d)
    text = frege.dumps(d)
    e = frege.loads(text)
    assert e.lines == d.lines and frege.dumps(e) == text


def test_frg_errors():
    with pytest.raises(frege.FrgError):
        frege.loads("1: a ; bogus\n")
    with pytest.raises(frege.FrgError):
        frege.loads("1: (a | ; premiss\n")


def test_semantic_check_catches_unsound_premiss_free_line():
    d = FregeDerivation([frege.Line(parse_frege("a"), "axiom", 2)])
    assert not check_frege(d).valid
    assert not frege_semantic_check(d)
