"""Building Frege proofs: a line builder, the deduction theorem, a few
natural-deduction style tactics, and the library of fixed tautologies
used by the translations (monotonicity, rule and equation tautologies,
De Morgan and unit lemmas).

Every library proof is a proof of a scheme over the variables A, B, C, D
and is used through substitution instances.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Mapping

from .frege import (
    FAnd, FF, FFormula, FOr, FT, FVar, FregeDerivation, Imp, Line, Not,
    axiom_line, fcoerce, fsubst, mp_line, parse_frege, premiss_line,
)


class ProofBuilder:
    """Append-only list of Frege lines; a formula already present is never
    derived twice."""

    def __init__(self):
        self.lines: list[Line] = []
        self.index: dict = {}

    def f(self, i: int) -> FFormula:
        return self.lines[i - 1].formula

    def add(self, line: Line) -> int:
        k = self.index.get(line.formula)
        if k is not None:
            return k
        self.lines.append(line)
        self.index[line.formula] = len(self.lines)
        return len(self.lines)

    def premiss(self, f: "FFormula | str") -> int:
        return self.add(premiss_line(fcoerce(f)))

    fact = premiss

    def axiom(self, k: int, **sigma) -> int:
        return self.add(axiom_line(k, {v: fcoerce(g) for v, g in sigma.items()}))

    def mp(self, i: int, j: int) -> int:
        a, ab = self.f(i), self.f(j)
        if not (isinstance(ab, Imp) and ab.left == a):
            raise ValueError("modus ponens does not apply")
        return self.add(mp_line(ab.right, i, j))

    def include(self, d: FregeDerivation, sigma: Mapping[str, FFormula] | None = None,
                premiss_ok: bool = True) -> int:
        """Append d (under sigma); returns the index of its conclusion."""
        sigma = dict(sigma or {})
        memo: dict = {}

        def sub(g):
            return fsubst(g, sigma, memo)

        local: list[int] = []
        for ln in d.lines:
            f = sub(ln.formula) if sigma else ln.formula
            if ln.rule == "premiss":
                k = self.index.get(f)
                if k is None:
                    if not premiss_ok:
                        raise ValueError("included derivation has an undischarged premiss")
                    k = self.premiss(f)
            elif ln.rule == "axiom":
                s = ln.sigma
                if sigma:
                    s = {v: sub(g) for v, g in s.items()}
                k = self.add(Line(f, "axiom", ln.axiom, (), tuple(sorted(s.items()))))
            elif ln.rule == "mp":
                i, j = ln.refs
                k = self.add(mp_line(f, local[i - 1], local[j - 1]))
            else:
                raise ValueError(f"cannot include {ln.rule} lines")
            local.append(k)
        return local[-1]

    def derivation(self, target: int | None = None, system: str = "Frege") -> FregeDerivation:
        """The lines target depends on, renumbered; target comes last."""
        if not self.lines:
            return FregeDerivation([], system)
        target = len(self.lines) if target is None else target
        need = set()
        stack = [target]
        while stack:
            k = stack.pop()
            if k in need:
                continue
            need.add(k)
            stack.extend(self.lines[k - 1].refs)
        order = sorted(need)
        renum = {old: new for new, old in enumerate(order, 1)}
        out = []
        for old in order:
            ln = self.lines[old - 1]
            out.append(Line(ln.formula, ln.rule, ln.axiom,
                            tuple(renum[r] for r in ln.refs), ln.subst))
        return FregeDerivation(out, system)


# --------------------------------------------------------------------------
# deduction theorem


def identity(pb: ProofBuilder, h: FFormula) -> int:
    """h -> h from F8, F10 and two modus ponens."""
    hh = Imp(h, h)
    a = pb.axiom(8, A=h, B=hh)                        # h -> ((h -> h) -> h)
    b = pb.axiom(10, A=h, B=hh, C=h)
    c = pb.mp(a, b)                                   # (h -> (h -> h)) -> (h -> h)
    e = pb.axiom(8, A=h, B=h)                         # h -> (h -> h)
    return pb.mp(e, c)


def discharge(d: FregeDerivation, h: FFormula) -> FregeDerivation:
    """From a derivation of X with premiss h, a derivation of h -> X whose
    premisses are the remaining ones."""
    pb = ProofBuilder()
    m: list[int] = []
    for ln in d.lines:
        phi = ln.formula
        if ln.rule == "premiss" and phi == h:
            m.append(identity(pb, h))
        elif ln.rule == "mp":
            i, j = ln.refs
            left = d.lines[i - 1].formula
            f10 = pb.axiom(10, A=h, B=left, C=phi)
            m.append(pb.mp(m[i - 1], pb.mp(m[j - 1], f10)))
        elif ln.rule in ("premiss", "axiom"):
            x = pb.add(ln)
            m.append(pb.mp(x, pb.axiom(8, A=phi, B=h)))
        else:
            raise ValueError(f"cannot discharge over {ln.rule} lines")
    return pb.derivation(m[-1]) if m else FregeDerivation([])


# --------------------------------------------------------------------------
# tactics


def intro(pb: ProofBuilder, h: FFormula, body: Callable[[ProofBuilder, int], int]) -> int:
    """Prove h -> X where body derives X from hypothesis h.  Facts already
    in pb are reachable from the body through sub.fact(formula)."""
    sub = ProofBuilder()
    hy = sub.premiss(h)
    r = body(sub, hy)
    return pb.include(discharge(sub.derivation(r), h))


def and_i(pb, i, j):
    ax = pb.axiom(1, A=pb.f(i), B=pb.f(j))
    return pb.mp(j, pb.mp(i, ax))


def and_l(pb, i):
    f = pb.f(i)
    return pb.mp(i, pb.axiom(2, A=f.left, B=f.right))


def and_r(pb, i):
    f = pb.f(i)
    return pb.mp(i, pb.axiom(3, A=f.left, B=f.right))


def or_il(pb, i, other):
    """X  gives  X | other"""
    return pb.mp(i, pb.axiom(4, A=pb.f(i), B=other))


def or_ir(pb, i, other):
    """X  gives  other | X"""
    return pb.mp(i, pb.axiom(5, A=other, B=pb.f(i)))


def or_e(pb, ab, ac, bc):
    a_or_b = pb.f(ab)
    c = pb.f(ac).right
    ax = pb.axiom(11, A=a_or_b.left, B=a_or_b.right, C=c)
    return pb.mp(ab, pb.mp(bc, pb.mp(ac, ax)))


def efq(pb, na, a, target):
    """~X and X give anything."""
    return pb.mp(a, pb.mp(na, pb.axiom(9, A=pb.f(a), B=target)))


def dne(pb, i):
    return pb.mp(i, pb.axiom(6, A=pb.f(i).arg.arg))


def dni(pb, i):
    return pb.mp(i, pb.axiom(7, A=pb.f(i)))


def contra(pb, ab):
    f = pb.f(ab)
    return pb.mp(ab, pb.axiom(13, A=f.left, B=f.right))


def from_false(pb, fi, target):
    """f gives anything."""
    return and_l(pb, pb.mp(fi, pb.axiom(14, A=target)))


def neg_intro(pb, h, body) -> int:
    """~h, where body derives some X and ~X from h (returns both indices)."""
    j = Imp(h, h)

    def inner(sub, hy):
        x, nx = body(sub, hy)
        return efq(sub, nx, x, Not(j))

    hj = intro(pb, h, inner)                          # h -> ~j
    c = contra(pb, hj)                                # ~~j -> ~h
    return pb.mp(dni(pb, identity(pb, h)), c)


def lem(pb, a: FFormula) -> int:
    """a | ~a"""
    target = FOr(a, Not(a))

    def body(sub, hy):
        na = sub.mp(hy, contra(sub, sub.axiom(4, A=a, B=Not(a))))
        nna = sub.mp(hy, contra(sub, sub.axiom(5, A=a, B=Not(a))))
        return na, nna

    return dne(pb, neg_intro(pb, Not(target), body))


def truth(pb) -> int:
    return pb.mp(lem(pb, FF), pb.axiom(17, A=FF))


def cases(pb, a: FFormula, pos, neg) -> int:
    """Case split on a; pos and neg derive the same formula."""
    ex = lem(pb, a)
    ac = intro(pb, a, pos)
    bc = intro(pb, Not(a), neg)
    return or_e(pb, ex, ac, bc)


# --------------------------------------------------------------------------
# derived rules on implication lines (no deduction theorem, a few lines each)


def chain(pb: ProofBuilder, i: int, j: int) -> int:
    """From X -> Y and Y -> Z, get X -> Z."""
    xy, yz = pb.f(i), pb.f(j)
    x = xy.left
    k = pb.mp(j, pb.axiom(8, A=yz, B=x))                # X -> (Y -> Z)
    f10 = pb.axiom(10, A=x, B=xy.right, C=yz.right)
    return pb.mp(i, pb.mp(k, f10))


def const_imp(pb: ProofBuilder, i: int, x: FFormula) -> int:
    """From Y, get X -> Y."""
    return pb.mp(i, pb.axiom(8, A=pb.f(i), B=x))


def imp_or_e(pb: ProofBuilder, i: int, j: int) -> int:
    """From A -> C and B -> C, get (A | B) -> C."""
    ac, bc = pb.f(i), pb.f(j)
    ax = pb.axiom(11, A=ac.left, B=bc.left, C=ac.right)
    return pb.mp(j, pb.mp(i, ax))


def imp_and_i(pb: ProofBuilder, i: int, j: int) -> int:
    """From X -> A and X -> B, get X -> (A & B)."""
    xa, xb = pb.f(i), pb.f(j)
    x, a, b = xa.left, xa.right, xb.right
    k = chain(pb, i, pb.axiom(1, A=a, B=b))             # X -> (B -> (A & B))
    f10 = pb.axiom(10, A=x, B=b, C=FAnd(a, b))
    return pb.mp(j, pb.mp(k, f10))


def contrapose(pb: ProofBuilder, i: int) -> int:
    """From X -> Y, get ~Y -> ~X."""
    return contra(pb, i)


def ax(pb: ProofBuilder, k: int, **sigma) -> int:
    return pb.axiom(k, **sigma)


def mono_step(pb: ProofBuilder, i: int, op, side: int, other: FFormula) -> int:
    """From a -> b, get the implication between the two formulae obtained
    by putting a and b at the given side of op next to other."""
    a, b = pb.f(i).left, pb.f(i).right
    if op is FOr:
        if side == 0:                                   # (a | c) -> (b | c)
            left = chain(pb, i, ax(pb, 4, A=b, B=other))
            right = ax(pb, 5, A=b, B=other)
        else:                                           # (c | a) -> (c | b)
            left = ax(pb, 4, A=other, B=b)
            right = chain(pb, i, ax(pb, 5, A=other, B=b))
        return imp_or_e(pb, left, right)
    if side == 0:                                       # (a & c) -> (b & c)
        get_b = chain(pb, ax(pb, 2, A=a, B=other), i)
        return imp_and_i(pb, get_b, ax(pb, 3, A=a, B=other))
    get_b = chain(pb, ax(pb, 3, A=other, B=a), i)       # (c & a) -> (c & b)
    return imp_and_i(pb, ax(pb, 2, A=other, B=a), get_b)


# --------------------------------------------------------------------------
# library

A, B, C, D = (FVar(n) for n in "ABCD")


def _tr(pb):
    return intro(pb, Imp(A, B), lambda s1, h1: intro(s1, Imp(B, C), lambda s2, h2: intro(
        s2, A, lambda s3, a: s3.mp(s3.mp(a, s3.fact(Imp(A, B))), s3.fact(Imp(B, C))))))


def _mon(op, side):
    return lambda pb: intro(pb, Imp(A, B), lambda s, h: mono_step(s, h, op, side, C))


def _and_mono(pb):
    def body(s, _h):
        get_c = chain(s, ax(s, 2, A=A, B=B), s.fact(Imp(A, C)))
        get_d = chain(s, ax(s, 3, A=A, B=B), s.fact(Imp(B, D)))
        return imp_and_i(s, get_c, get_d)
    return intro(pb, Imp(A, C), lambda s1, _: intro(s1, Imp(B, D), body))


def _or_mono(pb):
    def body(s, _h):
        to_c = chain(s, s.fact(Imp(A, C)), ax(s, 4, A=C, B=D))
        to_d = chain(s, s.fact(Imp(B, D)), ax(s, 5, A=C, B=D))
        return imp_or_e(s, to_c, to_d)
    return intro(pb, Imp(A, C), lambda s1, _: intro(s1, Imp(B, D), body))


def _dm1(pb):                                           # ~(A | B) -> (~A & ~B)
    na = contrapose(pb, ax(pb, 4, A=A, B=B))
    nb = contrapose(pb, ax(pb, 5, A=A, B=B))
    return imp_and_i(pb, na, nb)


def _dm2(pb):                                           # (~A & ~B) -> ~(A | B)
    x = FAnd(Not(A), Not(B))
    a_nx = chain(pb, ax(pb, 7, A=A), contrapose(pb, ax(pb, 2, A=Not(A), B=Not(B))))
    b_nx = chain(pb, ax(pb, 7, A=B), contrapose(pb, ax(pb, 3, A=Not(A), B=Not(B))))
    k = contrapose(pb, imp_or_e(pb, a_nx, b_nx))        # ~~x -> ~(A | B)
    return chain(pb, ax(pb, 7, A=x), k)


def _dm3(pb):                                           # ~(A & B) -> (~A | ~B)
    y = FOr(Not(A), Not(B))
    get_a = chain(pb, contrapose(pb, ax(pb, 4, A=Not(A), B=Not(B))), ax(pb, 6, A=A))
    get_b = chain(pb, contrapose(pb, ax(pb, 5, A=Not(A), B=Not(B))), ax(pb, 6, A=B))
    k = contrapose(pb, imp_and_i(pb, get_a, get_b))     # ~(A & B) -> ~~y
    return chain(pb, k, ax(pb, 6, A=y))


def _dm4(pb):                                           # (~A | ~B) -> ~(A & B)
    na = contrapose(pb, ax(pb, 2, A=A, B=B))
    nb = contrapose(pb, ax(pb, 3, A=A, B=B))
    return imp_or_e(pb, na, nb)


def _neg_t(pb):                                         # ~t -> f
    f9 = ax(pb, 9, A=FT, B=FF)                          # ~t -> (t -> f)
    f10 = ax(pb, 10, A=Not(FT), B=FT, C=FF)
    return pb.mp(const_imp(pb, truth(pb), Not(FT)), pb.mp(f9, f10))


def _t_neg_f(pb):                                       # t -> ~f
    f_nt = chain(pb, ax(pb, 14, A=FT), ax(pb, 3, A=FT, B=Not(FT)))
    nf = pb.mp(pb.mp(truth(pb), ax(pb, 7, A=FT)), contrapose(pb, f_nt))
    return const_imp(pb, nf, FT)


def _f_any(pb, x):                                      # f -> x
    return chain(pb, ax(pb, 14, A=x), ax(pb, 2, A=x, B=Not(x)))


def _assoc(op, forward: bool):
    def script(pb):
        if op is FOr and forward:                       # ((A|B)|C) -> (A|(B|C))
            bc = FOr(B, C)
            a_y = ax(pb, 4, A=A, B=bc)
            b_y = chain(pb, ax(pb, 4, A=B, B=C), ax(pb, 5, A=A, B=bc))
            c_y = chain(pb, ax(pb, 5, A=B, B=C), ax(pb, 5, A=A, B=bc))
            return imp_or_e(pb, imp_or_e(pb, a_y, b_y), c_y)
        if op is FOr:                                   # (A|(B|C)) -> ((A|B)|C)
            ab = FOr(A, B)
            to_y = ax(pb, 4, A=ab, B=C)
            a_y = chain(pb, ax(pb, 4, A=A, B=B), to_y)
            b_y = chain(pb, ax(pb, 5, A=A, B=B), to_y)
            c_y = ax(pb, 5, A=ab, B=C)
            return imp_or_e(pb, a_y, imp_or_e(pb, b_y, c_y))
        if forward:                                     # ((A&B)&C) -> (A&(B&C))
            ab = FAnd(A, B)
            first = ax(pb, 2, A=ab, B=C)
            get_a = chain(pb, first, ax(pb, 2, A=A, B=B))
            get_b = chain(pb, first, ax(pb, 3, A=A, B=B))
            get_c = ax(pb, 3, A=ab, B=C)
            return imp_and_i(pb, get_a, imp_and_i(pb, get_b, get_c))
        bc = FAnd(B, C)                                 # (A&(B&C)) -> ((A&B)&C)
        second = ax(pb, 3, A=A, B=bc)
        get_a = ax(pb, 2, A=A, B=bc)
        get_b = chain(pb, second, ax(pb, 2, A=B, B=C))
        get_c = chain(pb, second, ax(pb, 3, A=B, B=C))
        return imp_and_i(pb, imp_and_i(pb, get_a, get_b), get_c)
    return script


def _comm(op):
    def script(pb):
        if op is FOr:
            return imp_or_e(pb, ax(pb, 5, A=B, B=A), ax(pb, 4, A=B, B=A))
        return imp_and_i(pb, ax(pb, 3, A=A, B=B), ax(pb, 2, A=A, B=B))
    return script


def _switch(pb):
    def body(s, h):
        and_l(s, h)
        return or_e(
            s, and_r(s, h),
            intro(s, B, lambda s2, b: or_il(s2, and_i(s2, s2.fact(A), b), C)),
            intro(s, C, lambda s2, c: or_ir(s2, c, FAnd(A, B))))
    return intro(pb, FAnd(A, FOr(B, C)), body)


def _axiom_only(k, **sigma):
    return lambda pb: pb.axiom(k, **sigma)


def _swap_ab(script):
    """Same proof with A and B exchanged."""
    def run(pb):
        sub = ProofBuilder()
        r = script(sub)
        return pb.include(sub.derivation(r), {"A": B, "B": A})
    return run


# name -> (statement, script)
_LIBRARY: dict[str, tuple[str, Callable]] = {
    # helpers
    "id": ("A -> A", lambda pb: identity(pb, A)),
    "trans": ("(A -> B) -> ((B -> C) -> (A -> C))", _tr),
    "and-mono": ("(A -> C) -> ((B -> D) -> ((A & B) -> (C & D)))", _and_mono),
    "or-mono": ("(A -> C) -> ((B -> D) -> ((A | B) -> (C | D)))", _or_mono),
    "dm-or": ("~(A | B) -> (~A & ~B)", _dm1),
    "dm-or-rev": ("(~A & ~B) -> ~(A | B)", _dm2),
    "dm-and": ("~(A & B) -> (~A | ~B)", _dm3),
    "dm-and-rev": ("(~A | ~B) -> ~(A & B)", _dm4),
    "neg-t": ("~t -> f", _neg_t),
    "neg-t-rev": ("f -> ~t", lambda pb: _f_any(pb, Not(FT))),
    "neg-f": ("~f -> t", lambda pb: const_imp(pb, truth(pb), Not(FF))),
    "neg-f-rev": ("t -> ~f", _t_neg_f),
    "dne": ("~~A -> A", _axiom_only(6, A=A)),
    "dni": ("A -> ~~A", _axiom_only(7, A=A)),
    "truth": ("t", truth),
    "imp-or": ("(A -> B) -> (~A | B)", lambda pb: intro(pb, Imp(A, B), lambda s, h: cases(
        s, A,
        lambda s2, a: or_ir(s2, s2.mp(a, s2.fact(Imp(A, B))), Not(A)),
        lambda s2, na: or_il(s2, na, B)))),
    # context monotonicity
    "mon-or-left": ("(A -> B) -> ((A | C) -> (B | C))", _mon(FOr, 0)),
    "mon-or-right": ("(A -> B) -> ((C | A) -> (C | B))", _mon(FOr, 1)),
    "mon-and-left": ("(A -> B) -> ((A & C) -> (B & C))", _mon(FAnd, 0)),
    "mon-and-right": ("(A -> B) -> ((C & A) -> (C & B))", _mon(FAnd, 1)),
    # rules
    "rule-i-down": ("t -> (A | ~A)", lambda pb: const_imp(pb, lem(pb, A), FT)),
    "rule-i-up": ("(A & ~A) -> f", _axiom_only(15, A=A)),
    "rule-w-down": ("f -> A", lambda pb: _f_any(pb, A)),
    "rule-w-up": ("A -> t", lambda pb: const_imp(pb, truth(pb), A)),
    "rule-c-down": ("(A | A) -> A", lambda pb: imp_or_e(pb, identity(pb, A), identity(pb, A))),
    "rule-c-up": ("A -> (A & A)", lambda pb: imp_and_i(pb, identity(pb, A), identity(pb, A))),
    "rule-s": ("(A & (B | C)) -> ((A & B) | C)", _switch),
    "rule-m": ("((A & B) | (C & D)) -> ((A | C) & (B | D))", lambda pb: intro(
        pb, FOr(FAnd(A, B), FAnd(C, D)), lambda s, h: or_e(
            s, h,
            intro(s, FAnd(A, B), lambda s2, x: and_i(
                s2, or_il(s2, and_l(s2, x), C), or_il(s2, and_r(s2, x), D))),
            intro(s, FAnd(C, D), lambda s2, y: and_i(
                s2, or_ir(s2, and_l(s2, y), A), or_ir(s2, and_r(s2, y), B)))))),
    # equations, both orientations
    "eq-comm-or": ("(A | B) -> (B | A)", _comm(FOr)),
    "eq-comm-or-rev": ("(B | A) -> (A | B)", _swap_ab(_comm(FOr))),
    "eq-comm-and": ("(A & B) -> (B & A)", _comm(FAnd)),
    "eq-comm-and-rev": ("(B & A) -> (A & B)", _swap_ab(_comm(FAnd))),
    "eq-assoc-or": ("((A | B) | C) -> (A | (B | C))", _assoc(FOr, True)),
    "eq-assoc-or-rev": ("(A | (B | C)) -> ((A | B) | C)", _assoc(FOr, False)),
    "eq-assoc-and": ("((A & B) & C) -> (A & (B & C))", _assoc(FAnd, True)),
    "eq-assoc-and-rev": ("(A & (B & C)) -> ((A & B) & C)", _assoc(FAnd, False)),
    "eq-unit-or": ("(A | f) -> A", lambda pb: imp_or_e(pb, identity(pb, A), _f_any(pb, A))),
    "eq-unit-or-rev": ("A -> (A | f)", _axiom_only(4, A=A, B=FF)),
    "eq-unit-and": ("(A & t) -> A", _axiom_only(2, A=A, B=FT)),
    "eq-unit-and-rev": ("A -> (A & t)", lambda pb: imp_and_i(
        pb, identity(pb, A), const_imp(pb, truth(pb), A))),
    "eq-tt": ("(t | t) -> t", lambda pb: const_imp(pb, truth(pb), FOr(FT, FT))),
    "eq-tt-rev": ("t -> (t | t)", _axiom_only(4, A=FT, B=FT)),
    "eq-ff": ("(f & f) -> f", _axiom_only(2, A=FF, B=FF)),
    "eq-ff-rev": ("f -> (f & f)", lambda pb: imp_and_i(pb, identity(pb, FF), identity(pb, FF))),
}

MONOTONICITY = ("mon-or-left", "mon-or-right", "mon-and-left", "mon-and-right")
RULE_TAUTOLOGIES = {
    "i↑": "rule-i-up", "w↑": "rule-w-up", "c↑": "rule-c-up",
    "i↓": "rule-i-down", "w↓": "rule-w-down", "c↓": "rule-c-down",
    "s": "rule-s",
}
# medial is not an SKSg rule; its tautology lets SKS steps translate too
EXTRA_RULE_TAUTOLOGIES = {"m": "rule-m"}
EQUATION_TAUTOLOGIES = tuple(n for n in _LIBRARY if n.startswith("eq-"))


def statement(name: str) -> FFormula:
    return parse_frege(_LIBRARY[name][0])


@lru_cache(maxsize=None)
def lemma_proof(name: str) -> FregeDerivation:
    """Closed Frege proof of the named scheme."""
    text, script = _LIBRARY[name]
    pb = ProofBuilder()
    r = script(pb)
    d = pb.derivation(r)
    if d.conclusion != parse_frege(text):
        raise AssertionError(f"lemma {name} proves {d.conclusion}")
    if d.premisses:
        raise AssertionError(f"lemma {name} has premisses")
    return d


def lemma_names() -> tuple:
    return tuple(_LIBRARY)


def use_lemma(pb: ProofBuilder, name: str, **sigma) -> int:
    """Append a substitution instance of a library proof."""
    return pb.include(lemma_proof(name), {k: fcoerce(v) for k, v in sigma.items()},
                      premiss_ok=False)
