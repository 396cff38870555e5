import pytest
from hypothesis import given, strategies as st

from deepinf.corpus import (
    extended_corpus, root_sub_example, random_ssksg, random_xfrege, random_xsksg,
    resolve_extension,
)
from deepinf.derivation import Builder, CosDerivation, Step, check_derivation, semantic_check
from deepinf.extended import (
    ExtendedProof, check_extended, extension_premiss, ssksg_to_sfrege, unfold_extension,
    xfrege_to_xsksg, xsksg_to_ssksg, xsksg_to_xfrege,
)
from deepinf.formula import Var, conj, parse_formula as P
from deepinf.frege import (
    FAnd, FVar, FregeDerivation, Imp, check_frege, ext_line, frege_semantic_check, parse_frege,
)
from deepinf.frege_bridge import TranslationError, f2c, frege_to_sksg, sksg_to_frege
from deepinf.frege_lemmas import ProofBuilder, and_l, and_r, chain, identity, imp_and_i
from deepinf.rules import Justification


def xsksg(d):
    return ExtendedProof("xSKSg", d.with_system("xSKSg"))


def test_sub_inside_context_rejected():
    b = Builder("sSKSg", P("t")).apply("i↓", (), A=Var("A"))
    bad = CosDerivation("sSKSg", P("t"), b.build().steps + [
        Step(Justification("sub", (), {"A": P("(B & C)")}), P("[(B & C) | ~A]")),
    ])
    r = check_extended(ExtendedProof("sSKSg", bad))
    assert not r.valid and r.error == "sub-inside-context"


def test_root_sub_accepted():
    d = root_sub_example()
    r = check_extended(ExtendedProof("sSKSg", d))
    assert r.valid and r.substitutions == 1
    assert d.conclusion == P("[(B & C) | [~B | ~C]]")
    assert semantic_check(d)


def test_extension_in_conclusion_invalid():
    prem = extension_premiss([("A", P("(b & c)"))])
    d = Builder("xSKSg", prem).eq(P("([[~b | ~c] | A] & [~A | (b & c)])")).apply("w↑", (1,)).build()
    assert check_derivation(d).valid
    r = check_extended(ExtendedProof("xSKSg", d))
    assert not r.valid and r.error == "freshness" and r.variable == "A"


def test_extension_premiss_shape():
    assert extension_premiss([("A", P("(b & c)"))]) == P("([~A | (b & c)] & [[~b | ~c] | A])")
    assert extension_premiss([]) == P("t")


def test_premiss_shape_error():
    d = CosDerivation("xSKSg", P("(a & b)"), [])
    assert check_extended(ExtendedProof("xSKSg", d)).error == "premiss-shape"


def test_xfrege_h0():
    pb = ProofBuilder()
    k = identity(pb, FVar("a"))
    d = FregeDerivation(pb.derivation(k).lines, "xFrege")
    x = xfrege_to_xsksg(ExtendedProof("xFrege", d))
    plain = frege_to_sksg(FregeDerivation(d.lines))
    assert x.derivation.premiss == P("t")
    assert x.conclusion == plain.conclusion
    assert check_extended(x).valid


def h1_xfrege():
    pb = ProofBuilder()
    e = pb.add(ext_line("A", parse_frege("b & c")))
    k = chain(pb, and_r(pb, e), and_l(pb, e))
    return ExtendedProof("xFrege", FregeDerivation(pb.derivation(k).lines, "xFrege"))


def test_xfrege_h1_premiss():
    p = h1_xfrege()
    assert check_extended(p).valid and check_extended(p).extensions == 1
    x = xfrege_to_xsksg(p)
    assert check_extended(x).valid
    assert x.derivation.premiss == P("([~A | (b & c)] & [[~b | ~c] | A])")
    assert x.conclusion == f2c(p.conclusion)


def test_h2_chain_ordered_freshness():
    pb = ProofBuilder()
    e1 = pb.add(ext_line("A", parse_frege("b & c")))
    e2 = pb.add(ext_line("B", parse_frege("A | d")))
    k = and_r(pb, e2)                             # (A | d) -> B
    d = FregeDerivation(pb.derivation(chain(pb, and_r(pb, e1), and_l(pb, e1))).lines, "xFrege")
    assert check_extended(ExtendedProof("xFrege", d)).valid
    full = FregeDerivation(pb.lines[:], "xFrege")
    assert check_frege(full).valid
    # the conclusion mentions B, which is forbidden
    assert pb.f(k) == parse_frege("(A | d) -> B")
    r = check_extended(ExtendedProof("xFrege", FregeDerivation(pb.derivation(k).lines, "xFrege")))
    assert not r.valid and r.error == "freshness"
    x = xsksg(random_xsksg(3, h=2))
    rx = check_extended(x)
    assert rx.valid and rx.extensions == 2


def test_xsksg_order_matters():
    # A2 := A1 is fine, A1 := A2 would use A2 before its definition
    ok = extension_premiss([("A", P("b")), ("C", P("[A | b]"))])
    b = Builder("xSKSg", ok).apply("w↑", ()).build()
    assert check_extended(ExtendedProof("xSKSg", b)).valid
    bad = extension_premiss([("A", P("C")), ("C", P("b"))])
    b = Builder("xSKSg", bad).apply("w↑", ()).build()
    r = check_extended(ExtendedProof("xSKSg", b))
    assert not r.valid and r.variable == "C"


@given(st.integers(0, 10 ** 6), st.sampled_from(["own-body", "conclusion", "before", "twice"]))
def test_freshness_fuzz(seed, how):
    p = ExtendedProof("xFrege", random_xfrege(seed, h=1, steps=2))
    assert check_extended(p).valid
    lines = list(p.derivation.lines)
    ext = next(i for i, ln in enumerate(lines) if ln.rule == "ext")
    name, body = lines[ext].subst[0]
    if how == "own-body":
        lines[ext] = ext_line(name, FAnd(body, FVar(name)))
        lines = lines[:ext + 1]
    elif how == "conclusion":
        pb = ProofBuilder()
        for ln in lines:
            pb.add(ln)
        k = identity(pb, FVar(name))
        lines = pb.derivation(k).lines
        lines = [ext_line(name, body)] + [ln for ln in lines]
    elif how == "before":
        from deepinf.frege import axiom_line
        lines = [axiom_line(2, {"A": FVar(name), "B": FVar(name)})] + lines
        lines = [ln if ln.rule != "mp" else ln.__class__(ln.formula, "mp", None,
                                                        tuple(r + 1 for r in ln.refs)) for ln in lines]
    else:
        lines = [lines[ext]] + lines
        lines = [ln if ln.rule != "mp" else ln.__class__(ln.formula, "mp", None,
                                                        tuple(r + 1 for r in ln.refs)) for ln in lines]
    r = check_extended(ExtendedProof("xFrege", FregeDerivation(lines, "xFrege")))
    assert not r.valid


@given(st.integers(0, 10 ** 6), st.integers(1, 2))
def test_xsksg_round_trips(seed, h):
    x = xsksg(random_xsksg(seed, h=h))
    assert check_extended(x).valid
    s = xsksg_to_ssksg(x)
    rs = check_extended(s)
    assert rs.valid and s.conclusion == x.conclusion and rs.substitutions == h
    assert semantic_check(s.derivation)
    # one i↓, the embedded proof, then at most sub, =, c↓, i↑, = per extension
    assert s.length <= x.length + 1 + 5 * h


def test_xsksg_to_ssksg_skeleton_h1():
    x = xsksg(resolve_extension("A", P("(b & c)")))
    s = xsksg_to_ssksg(x)
    rules = [st.rule for st in s.derivation.steps]
    inner = x.length
    assert rules[0] == "i↓"
    assert rules[1 + inner:] == ["sub", "c↓", "i↑", "="]
    assert s.derivation.steps[1 + inner].just.substitution == {"A": P("(b & c)")}
    assert check_extended(s).valid and s.conclusion == P("[(b & c) | [~b | ~c]]")


def test_xsksg_to_ssksg_h0():
    d = Builder("xSKSg", P("t")).apply("i↓", (), A=P("a")).build()
    s = xsksg_to_ssksg(ExtendedProof("xSKSg", d))
    assert check_extended(s).valid and s.derivation.rule_counts().get("sub", 0) == 0


def test_xsksg_to_xfrege():
    x = xfrege_to_xsksg(h1_xfrege())
    back = xsksg_to_xfrege(x)
    r = check_extended(back)
    assert r.valid and r.extensions == 1
    assert f2c(back.conclusion) == x.conclusion
    plain = Builder("xSKSg", P("t")).apply("i↓", (), A=P("a")).build()
    f = xsksg_to_xfrege(ExtendedProof("xSKSg", plain))
    assert f2c(f.conclusion) == plain.conclusion
    assert check_extended(f).valid


def test_ssksg_to_sfrege_zero_subs():
    d = Builder("sSKSg", P("t")).apply("i↓", (), A=P("a")).build()
    f = ssksg_to_sfrege(ExtendedProof("sSKSg", d))
    assert check_extended(f).valid and f.conclusion == sksg_to_frege(d).conclusion


def test_ssksg_to_sfrege_one_sub():
    f = ssksg_to_sfrege(ExtendedProof("sSKSg", root_sub_example()))
    r = check_extended(f)
    assert r.valid and r.substitutions == 1
    assert f2c(f.conclusion) == P("[(B & C) | [~B | ~C]]")
    assert frege_semantic_check(f.derivation)


def test_ssksg_to_sfrege_two_subs():
    b = Builder("sSKSg", P("t")).apply("i↓", (), A=Var("A"))
    b.sub({"A": conj(Var("B"), Var("C"))})
    b.sub({"B": P("[a | D]")})
    d = b.build()
    p = ExtendedProof("sSKSg", d)
    assert check_extended(p).valid
    f = ssksg_to_sfrege(p)
    r = check_extended(f)
    assert r.valid and r.substitutions == 2
    assert f2c(f.conclusion) == d.conclusion


@given(st.integers(0, 10 ** 6))
def test_random_ssksg(seed):
    p = ExtendedProof("sSKSg", random_ssksg(seed))
    assert check_extended(p).valid and semantic_check(p.derivation)
    f = ssksg_to_sfrege(p)
    assert check_extended(f).valid and f2c(f.conclusion) == p.conclusion


def doubling_chain(h):
    """X1 := (a & b), X(i+1) := (Xi & Xi).  The conclusion
    (a & b) -> (a | c) is reached by going up to Xh and back down; the
    down chain starts at Xh so no shortcut survives unfolding."""
    pb = ProofBuilder()
    ab, target = parse_frege("a & b"), parse_frege("a | c")
    if not h:
        k = chain(pb, pb.axiom(2, A=FVar("a"), B=FVar("b")), pb.axiom(4, A=FVar("a"), B=FVar("c")))
        return ExtendedProof("xFrege", pb.derivation(k, "xFrege"))
    body, exts = ab, []
    for i in range(1, h + 1):
        exts.append(pb.add(ext_line(f"X{i}", body)))
        body = FAnd(FVar(f"X{i}"), FVar(f"X{i}"))
    up = and_r(pb, exts[0])
    for i in range(1, h):
        up = chain(pb, imp_and_i(pb, up, up), and_r(pb, exts[i]))
    down = None
    for i in range(h - 1, 0, -1):
        prev = FVar(f"X{i}")
        step = chain(pb, and_l(pb, exts[i]), pb.axiom(2, A=prev, B=prev))
        down = step if down is None else chain(pb, down, step)
    last = and_l(pb, exts[0])
    down = last if down is None else chain(pb, down, last)
    down = chain(pb, down, pb.axiom(2, A=FVar("a"), B=FVar("b")))
    down = chain(pb, down, pb.axiom(4, A=FVar("a"), B=FVar("c")))
    k = chain(pb, up, down)
    assert pb.f(k) == Imp(ab, target)
    return ExtendedProof("xFrege", pb.derivation(k, "xFrege"))


def test_unfold_h0_identity():
    p = doubling_chain(0)
    u = unfold_extension(p)
    assert check_frege(u).is_proof and u.conclusion == p.conclusion


def test_unfold_h1():
    p = h1_xfrege()
    u = unfold_extension(p)
    assert check_frege(u).is_proof
    assert u.conclusion == parse_frege("(b & c) -> (b & c)")


def test_unfold_doubling_blowup():
    ext, unf = [], []
    for h in (2, 3, 4, 5):
        p = doubling_chain(h)
        r = check_extended(p)
        assert r.valid and r.extensions == h
        u = unfold_extension(p)
        assert check_frege(u).is_proof and u.conclusion == p.conclusion
        ext.append(p.size)
        unf.append(u.size)
    # extended proofs grow by a constant per level, unfolded ones roughly double
    steps = [b - a for a, b in zip(ext, ext[1:])]
    assert max(steps) - min(steps) <= 2
    assert all(b / a > 1.9 for a, b in zip(unf[1:], unf[2:]))
    assert unf[-1] / ext[-1] > 3


def test_invalid_inputs_raise():
    bad = ExtendedProof("xFrege", FregeDerivation([ext_line("A", parse_frege("A"))], "xFrege"))
    with pytest.raises(TranslationError):
        xfrege_to_xsksg(bad)
    with pytest.raises(TranslationError):
        unfold_extension(bad)
    with pytest.raises(TranslationError):
        xsksg_to_ssksg(ExtendedProof("sSKSg", root_sub_example()))


def test_extended_corpus_small():
    kinds = set()
    for p in extended_corpus(7, 20):
        assert check_extended(p).valid
        kinds.add(p.kind)
    assert kinds == {"xFrege", "xSKSg", "sSKSg"}
