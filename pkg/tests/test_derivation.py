import random

import pytest
from hypothesis import given, strategies as st

from deepinf import cosd
from deepinf.corpus import root_sub_example
from deepinf.derivation import (
    Builder, CosDerivation, Step, all_vars, check_derivation, concat, embed,
    ground, rename_derivation, semantic_check, substitute_derivation,
)
from deepinf.formula import Atom, is_ground, parse_formula as P, size
from deepinf.macros import sksg_to_sks
from deepinf.rules import Justification
from deepinf.semantics import TooManyAtoms
from deepinf.tautologies import statman_proof

from strategies import random_sksg_derivation
from test_rules import CENTRAL


def central():
    f = [P(x) for x in CENTRAL]
    return CosDerivation("KS", f[0], [
        Step(Justification("="), f[1]),
        Step(Justification("s", (1, 0)), f[2]),
        Step(Justification("="), f[3]),
    ])


def ai_proof():
    return Builder("SKS", P("t")).apply("ai↓", (), a=Atom("a")).build()


def test_central_example_derivation():
    r = check_derivation(central())
    assert r.valid and r.length == 3
    assert r.rule_counts == {"=": 2, "s": 1}
    assert semantic_check(central())


def test_zero_steps():
    d = CosDerivation("SKSg", P("[a | b]"), [])
    r = check_derivation(d)
    assert r.valid and r.length == 0 and r.conclusion == d.premiss
    assert not r.is_proof


def test_context_mismatch_reported():
    d = CosDerivation("SKSg", P("[b | (a & [c | d])]"),
                      [Step(Justification("s", (1,)), P("[c | [(a & c) | d]]"))])
    r = check_derivation(d)
    assert not r.valid and r.failed_index == 0 and r.error == "context-mismatch"


def test_metrics():
    d = central()
    assert d.size == sum(size(f) for f in d.formulas())
    e = concat(d, CosDerivation("KS", d.conclusion, []))
    assert e.length == d.length and e.size == d.size


def test_embed_rename():
    d = embed(ai_proof(), (P("(b & [z | c])"), (1, 0)))
    r = check_derivation(d)
    assert r.valid and d.conclusion == P("(b & [[a | ~a] | c])")
    e = rename_derivation(d, {"a": Atom("b")})
    assert check_derivation(e).valid and e.conclusion == P("(b & [[b | ~b] | c])")


def test_substitute():
    d = Builder("SKSg", P("t")).apply("i↓", (), A=P("A")).build()
    e = substitute_derivation(d, {"A": P("(c & ~B)")})
    assert check_derivation(e).valid
    assert e.conclusion == P("[(c & ~B) | [~c | B]]")


def test_ground():
    d = Builder("SKSg", P("t")).apply("i↓", (), A=P("[A | a]")).build()
    g = ground(d)
    assert check_derivation(g).valid and not all_vars(g)
    assert g.conclusion == P("[[x0 | a] | (~x0 & ~a)]")
    assert ground(g) is g
    ks = sksg_to_sks(g)
    assert check_derivation(ks.with_system("KS")).valid


def test_semantic_check():
    assert semantic_check(statman_proof(3))
    # sub steps are exempt: [A | ~A] does not imply its instance in general
    assert semantic_check(root_sub_example())
    with pytest.raises(TooManyAtoms):
        semantic_check(statman_proof(3), atom_bound=4)


def test_unsound_step_detected():
    d = CosDerivation("SKSg", P("t"), [Step(Justification("w↓"), P("a"))])
    assert not check_derivation(d).valid
    assert not semantic_check(d)


def test_proof_premiss_modulo_units():
    d = Builder("SKSg", P("(t & t)")).eq("t").apply("i↓", (), A=P("a")).build()
    assert check_derivation(d).is_proof


@given(st.integers(0, 10 ** 6), st.sampled_from([(), (0,), (1,), (1, 0)]))
def test_closure_properties(seed, path):
    rng = random.Random(seed)
    d = random_sksg_derivation(rng)
    assert check_derivation(d).valid
    outer = P("(b & [z | (c & z)])")
    e = embed(d, (outer, path))
    assert check_derivation(e).valid
    assert check_derivation(rename_derivation(d, {"a": Atom("c", True)})).valid
    assert check_derivation(substitute_derivation(d, {"A": P("[a | (B & c)]")})).valid
    g = ground(d)
    assert check_derivation(g).valid and all(is_ground(f) for f in g.formulas())
    assert semantic_check(d)


@given(st.integers(0, 10 ** 6))
def test_cosd_round_trip(seed):
    d = random_sksg_derivation(random.Random(seed))
    text = cosd.dumps(d)
    e = cosd.loads(text)
    assert e.premiss == d.premiss and e.formulas() == d.formulas()
    assert cosd.dumps(e) == text
    assert check_derivation(e).valid


def test_cosd_errors():
    with pytest.raises(cosd.CosdError):
        cosd.loads("system KS\npremiss t\nstep bogus @ . => t\n")
    with pytest.raises(cosd.CosdError):
        cosd.loads("system KS\npremiss [a |\n")
    with pytest.raises(cosd.CosdError):
        cosd.loads("system NOPE\npremiss t\n")


def test_cosd_sub_and_macro():
    text = cosd.dumps(root_sub_example())
    assert "step sub {A:=(B & C)}" in text
    assert cosd.loads(text).formulas() == root_sub_example().formulas()
    s3 = statman_proof(3)
    assert cosd.loads(cosd.dumps(s3)).formulas() == s3.formulas()
