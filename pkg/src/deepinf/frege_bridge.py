"""Translations between Frege and SKSg.

Frege to SKSg keeps a running conjunction of the lines proved so far:
axiom lines run a fixed SKSg proof of the translated axiom next to it,
modus ponens copies the two cited lines with c↑ and cuts them with s and
i↑.  SKSg to Frege proves, for every step, the implication between the
two redexes from a fixed tautology, lifts it through the context with
the monotonicity tautologies and applies modus ponens; = steps are
replayed as chains of single equations through a canonical form.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .derivation import Builder, CosDerivation, check_derivation, substitute_derivation
from .equality import equal_mod_ac
from .formula import (
    And, Atom, F, Formula, Or, T, Unit, Var, conj, disj, dual, left_and,
    replace_at, subformula_at,
)
from .frege import (
    AXIOMS, FAnd, FConst, FF, FFormula, FOr, FT, FVar, FregeDerivation, Imp, Not,
    check_frege, fmatch, fsub_at, fsubst, freplace_at, print_frege,
)
from .frege_lemmas import (
    EXTRA_RULE_TAUTOLOGIES, RULE_TAUTOLOGIES, ProofBuilder, chain, imp_and_i, imp_or_e,
    mono_step, statement, use_lemma,
)
from .rules import RULES, SYSTEMS, Justification, instance, match_rule, verify_step


class TranslationError(ValueError):
    pass


# --------------------------------------------------------------------------
# formulae


def cos_to_frege_formula(f: Formula, mapping: dict | None = None) -> FFormula:
    """Atoms and variables become Frege variables (renamed through mapping
    when given); n-ary connectives nest to the right; negation stays on
    the leaves."""
    mapping = mapping or {}
    if isinstance(f, Unit):
        return FT if f.value else FF
    if isinstance(f, (Atom, Var)):
        v = FVar(mapping.get(f.name, f.name))
        return Not(v) if f.negated else v
    kids = [cos_to_frege_formula(c, mapping) for c in f.children]
    op = FOr if isinstance(f, Or) else FAnd
    acc = kids[-1]
    for k in reversed(kids[:-1]):
        acc = op(k, acc)
    return acc


def _leaf(name: str, negated: bool) -> Formula:
    return Var(name, negated) if name[:1].isupper() else Atom(name, negated)


def frege_to_cos_formula(f: FFormula) -> Formula:
    """Negation is pushed to the leaves by De Morgan and X -> Y becomes
    [dual(X) | Y].  Names starting upper case become variables, the others
    atoms."""
    if isinstance(f, FConst):
        return T if f.value else F
    if isinstance(f, FVar):
        return _leaf(f.name, False)
    if isinstance(f, Not):
        return dual(frege_to_cos_formula(f.arg))
    left = frege_to_cos_formula(f.left)
    right = frege_to_cos_formula(f.right)
    if isinstance(f, FOr):
        return disj(left, right)
    if isinstance(f, FAnd):
        return conj(left, right)
    return disj(dual(left), right)


c2f = cos_to_frege_formula
f2c = frege_to_cos_formula


def frege_path(f: Formula, path: Sequence[int]) -> tuple:
    """Position in the Frege image of the subformula of f at path."""
    out: list[int] = []
    for i in path:
        k = len(f.children)
        out.extend([1] * i + [0] if i < k - 1 else [1] * (k - 1))
        f = f.children[i]
    return tuple(out)


def neg_normal(y: FFormula) -> FFormula:
    """Frege image of the dual of f2c(y), for y a Frege image."""
    if isinstance(y, FVar):
        return Not(y)
    if isinstance(y, Not):
        return y.arg
    if isinstance(y, FConst):
        return FF if y.value else FT
    if isinstance(y, FOr):
        return FAnd(neg_normal(y.left), neg_normal(y.right))
    if isinstance(y, FAnd):
        return FOr(neg_normal(y.left), neg_normal(y.right))
    raise TranslationError("negation normal form needs an implication-free formula")


# --------------------------------------------------------------------------
# SKSg proofs of the translated axioms


def _phi(k: int) -> CosDerivation:
    A, B, C = (Var(n) for n in "ABC")
    nA, nB, nC = (Var(n, True) for n in "ABC")
    b = Builder("SKSg", T)
    if k == 1:
        b.apply("i↓", (), A=disj(nA, nB))
    elif k == 2:
        b.apply("i↓", (), A=nA).eq(disj(disj(nA, F), A)).apply("w↓", (0, 1), A=nB)
    elif k == 3:
        b.apply("i↓", (), A=nB).eq(disj(disj(F, nB), B)).apply("w↓", (0, 0), A=nA)
    elif k == 4:
        b.apply("i↓", (), A=nA).eq(disj(nA, disj(A, F))).apply("w↓", (1, 1), A=B)
    elif k == 5:
        b.apply("i↓", (), A=nB).eq(disj(nB, disj(F, B))).apply("w↓", (1, 0), A=A)
    elif k in (6, 7):
        b.apply("i↓", (), A=nA)
    elif k == 8:
        b.apply("i↓", (), A=nA).eq(disj(nA, disj(F, A))).apply("w↓", (1, 0), A=nB)
    elif k == 9:
        b.apply("i↓", (), A=A).eq(disj(A, disj(nA, F))).apply("w↓", (1, 1), A=B)
    elif k == 10:
        x = conj(A, conj(B, nC))
        b.apply("i↓", (), A=x)                                 # [(A&(B&~C)) | [~A|[~B|C]]]
        b.eq(disj(x, disj(nA, disj(conj(nB, T), C))))
        b.apply("i↓", (1, 1, 0, 1), A=A)
        b.apply("s", (1, 1, 0))                                # [(~B & A) | ~A]
        b.eq(disj(x, disj(conj(A, nB), disj(disj(nA, nA), C))))
        b.apply("c↓", (1, 1, 0))
    elif k == 11:
        b.apply("i↓", (), A=conj(nA, nB))                      # [(~A&~B) | [A|B]]
        b.eq(disj(conj(nA, nB), disj(conj(A, T), conj(B, T))))
        b.apply("i↓", (1, 0, 1), A=nC)
        b.apply("s", (1, 0))
        b.apply("i↓", (1, 1, 1), A=nC)
        b.apply("s", (1, 1))
        b.eq(disj(conj(A, nC), disj(conj(B, nC), disj(conj(nA, nB), disj(C, C)))))
        b.apply("c↓", (1, 1, 1))
    elif k == 12:
        b.apply("i↓", (), A=conj(A, conj(B, nC)))
    elif k == 13:
        b.apply("i↓", (), A=conj(A, nB))
    elif k == 14:
        b.eq(disj(T, F)).apply("w↓", (1,), A=conj(A, nA))
    elif k == 15:
        b.apply("i↓", (), A=nA)
    elif k == 16:
        b.apply("i↓", (), A=A)
    elif k == 17:
        b.eq(disj(F, T)).apply("w↓", (0,), A=conj(nA, A))
    else:
        raise KeyError(k)
    b.eq(f2c(AXIOMS[k]))
    return b.build()


@lru_cache(maxsize=None)
def axiom_proof(k: int) -> CosDerivation:
    """SKSg proof of the translation of axiom F<k>, over variables A, B, C."""
    return _phi(k)


def axiom_proofs() -> dict:
    return {k: axiom_proof(k) for k in AXIOMS}


# --------------------------------------------------------------------------
# Frege to SKSg


def _running(forms: list) -> Formula:
    """Flat conjunction of the lines proved so far."""
    return forms[0] if len(forms) == 1 else And(tuple(forms))


def frege_to_sksg(d: FregeDerivation, treat_as_premiss=("premiss",)) -> CosDerivation:
    """SKSg derivation from the conjunction of the (translated) premisses
    to the translated conclusion.  Lines whose rule is in treat_as_premiss
    count as premisses (used for extension lines)."""
    rep = check_frege(d)
    if not rep.valid:
        raise TranslationError(f"invalid Frege derivation at line {rep.failed_line}: {rep.reason}")
    if not d.lines:
        raise TranslationError("empty derivation")
    forms = [f2c(ln.formula) for ln in d.lines]
    prem_idx = [k for k, ln in enumerate(d.lines) if ln.rule in treat_as_premiss]
    items: list[int | None] = list(prem_idx) if prem_idx else [None]

    def item_forms(its):
        return [T if it is None else forms[it] for it in its]

    last_use = {k: k for k in range(len(d.lines))}
    for k, ln in enumerate(d.lines):
        for r in ln.refs:
            last_use[r - 1] = max(last_use[r - 1], k)
    last = len(d.lines) - 1

    b = Builder("SKSg", _running(item_forms(items)))

    def drop(upto: int) -> None:
        # lines no longer cited are weakened away, keeping the conjunction small
        nonlocal items
        keep = [it for it in items
                if it is not None and (it == last or last_use[it] > upto)]
        if keep == items:
            return
        for pos, it in enumerate(items):
            if it is not None and it not in keep:
                b.apply("w↑", (pos,) if len(items) > 1 else ())
        items = keep or [None]
        b.eq(_running(item_forms(items)))

    for k, ln in enumerate(d.lines):
        if ln.rule in treat_as_premiss:
            continue
        n = len(items)
        if ln.rule == "axiom":
            sigma = {v: f2c(g) for v, g in ln.sigma.items()}
            for v, g in fmatch(AXIOMS[ln.axiom], ln.formula).items():
                sigma.setdefault(v, f2c(g))
            phi = substitute_derivation(axiom_proof(ln.axiom), sigma)
            b.eq(And(tuple(item_forms(items)) + (T,)))
            b.then(phi, (n,))
        elif ln.rule == "mp":
            i, j = ln.refs[0] - 1, ln.refs[1] - 1
            pi, pj = (items.index(i),), (items.index(j),)
            b.apply("c↑", pj)
            b.apply("c↑", pi)
            b.eq(And(tuple(item_forms(items)) + (conj(forms[i], forms[j]),)))
            b.apply("s", (n,))
            b.apply("i↑", (n, 0))
            b.eq(And(tuple(item_forms(items)) + (forms[k],)))
        else:
            raise TranslationError(f"cannot translate {ln.rule} lines")
        items.append(k)
        drop(k)
    drop(last)
    if items != [last]:
        raise AssertionError("running conjunction did not shrink to the conclusion")
    return b.build()


# --------------------------------------------------------------------------
# context lifting



def lift(pb: ProofBuilder, ctx: FFormula, path: Sequence[int], imp: int) -> int:
    """From a -> b (line imp) get ctx{a} -> ctx{b}; ctx holds a at path."""
    path = tuple(path)
    k = imp
    for depth in range(len(path) - 1, -1, -1):
        parent = fsub_at(ctx, path[:depth])
        side = path[depth]
        if not isinstance(parent, (FOr, FAnd)):
            raise TranslationError("contexts may only pass through | and &")
        other = parent.right if side == 0 else parent.left
        k = mono_step(pb, k, type(parent), side, other)
    return k


def context_lift(ctx: tuple, a: Formula, b: Formula) -> FregeDerivation:
    """Frege derivation with premiss a -> b and conclusion
    ctx{a} -> ctx{b}; ctx is (formula, path) with the hole at path."""
    outer, path = ctx[0], tuple(ctx[1])
    subformula_at(outer, path)
    xa = c2f(replace_at(outer, path, a))
    fp = frege_path(outer, path)
    pb = ProofBuilder()
    k = pb.premiss(Imp(c2f(a), c2f(b)))
    k = lift(pb, xa, fp, k)
    return pb.derivation(k)


# --------------------------------------------------------------------------
# equations


_INVERSE = {}
for _n in ("comm-or", "comm-and", "assoc-or", "assoc-and", "unit-or", "unit-and", "tt", "ff"):
    _INVERSE[f"eq-{_n}"] = f"eq-{_n}-rev"
    _INVERSE[f"eq-{_n}-rev"] = f"eq-{_n}"

_OPS = {
    FOr: dict(neutral=FF, absorbing=FT, comm="eq-comm-or", assoc="eq-assoc-or",
              assoc_rev="eq-assoc-or-rev", unit="eq-unit-or", dup="eq-tt"),
    FAnd: dict(neutral=FT, absorbing=FF, comm="eq-comm-and", assoc="eq-assoc-and",
               assoc_rev="eq-assoc-and-rev", unit="eq-unit-and", dup="eq-ff"),
}


def fkey(f: FFormula) -> tuple:
    if isinstance(f, FConst):
        return (1,) if f.value else (0,)
    if isinstance(f, FVar):
        return (2, f.name, 0)
    if isinstance(f, Not) and isinstance(f.arg, FVar):
        return (2, f.arg.name, 1)
    if isinstance(f, Not):
        return (3, fkey(f.arg))
    rank = {FAnd: 4, FOr: 5, Imp: 6}[type(f)]
    return (rank, fkey(f.left), fkey(f.right))


class _Normalizer:
    """Rewrites a Frege image to its canonical form one equation at a time,
    recording (path, equation, before, after) for every step."""

    def __init__(self, x: FFormula):
        self.x = x
        self.steps: list[tuple] = []

    def rw(self, path: tuple, name: str) -> None:
        stmt = statement(name)
        before = fsub_at(self.x, path)
        env = fmatch(stmt.left, before)
        if env is None:
            raise AssertionError(f"{name} does not apply at {path}")
        after = fsubst(stmt.right, env)
        self.x = freplace_at(self.x, path, after)
        self.steps.append((path, name, before, after))

    def norm(self, path: tuple = ()) -> None:
        node = fsub_at(self.x, path)
        if isinstance(node, (FOr, FAnd)):
            self.norm(path + (0,))
            self.norm(path + (1,))
            self.merge(path)

    def merge(self, path: tuple) -> None:
        node = fsub_at(self.x, path)
        op = type(node)
        if isinstance(node.left, op):
            self.rw(path, _OPS[op]["assoc"])
            self.merge(path + (1,))
        self.insert(path)

    def insert(self, path: tuple) -> None:
        node = fsub_at(self.x, path)
        op = type(node)
        info = _OPS[op]
        x, s = node.left, node.right
        if x == info["neutral"]:
            self.rw(path, info["comm"])
            self.rw(path, info["unit"])
            return
        if s == info["neutral"]:
            self.rw(path, info["unit"])
            return
        if x == info["absorbing"]:
            if s == x:
                self.rw(path, info["dup"])
            elif isinstance(s, op) and s.left == x:
                self.rw(path, info["assoc_rev"])
                self.rw(path + (0,), info["dup"])
            return
        if not isinstance(s, op):
            if fkey(x) > fkey(s):
                self.rw(path, info["comm"])
            return
        if fkey(x) <= fkey(s.left):
            return
        self.rw(path, info["assoc_rev"])
        self.rw(path + (0,), info["comm"])
        self.rw(path, info["assoc"])
        self.insert(path + (1,))


def _flatten(nz: _Normalizer, op) -> None:
    """Right-nest the op-spine of nz.x and drop neutral units."""
    info = _OPS[op]
    path: tuple = ()
    while True:
        node = fsub_at(nz.x, path)
        if not isinstance(node, op):
            return
        if isinstance(node.left, op):
            nz.rw(path, info["assoc"])
            continue
        if node.left == info["neutral"]:
            nz.rw(path, info["comm"])
            nz.rw(path, info["unit"])
            continue
        if node.right == info["neutral"]:
            nz.rw(path, info["unit"])
            continue
        path = path + (1,)


def _spine(f: FFormula, op) -> list:
    out = []
    while isinstance(f, op):
        out.append(f.left)
        f = f.right
    out.append(f)
    return out


def _direct_chain(x: FFormula, y: FFormula, op) -> list[tuple] | None:
    """Rewrites from x to y when both are op-trees over the same leaves:
    right-nest both, then move leaves into y's order by adjacent swaps.
    None when the two differ by more than a permutation."""
    nx, ny = _Normalizer(x), _Normalizer(y)
    _flatten(nx, op)
    _flatten(ny, op)
    lx, ly = _spine(nx.x, op), _spine(ny.x, op)
    if sorted(lx, key=fkey) != sorted(ly, key=fkey):
        return None
    info = _OPS[op]
    cur = list(lx)
    for p, want in enumerate(ly):
        q = cur.index(want, p)
        while q > p:
            i = q - 1
            path = (1,) * i
            if i == len(cur) - 2:
                nx.rw(path, info["comm"])
            else:
                nx.rw(path, info["assoc_rev"])
                nx.rw(path + (0,), info["comm"])
                nx.rw(path, info["assoc"])
            cur[i], cur[q] = cur[q], cur[i]
            q = i
    assert nx.x == ny.x
    back = [(p, _INVERSE[n], after, before) for p, n, before, after in reversed(ny.steps)]
    return nx.steps + back


def equation_chain(x: FFormula, y: FFormula) -> list[tuple]:
    """Single-equation rewrite steps from x to y through a canonical form."""
    nx, ny = _Normalizer(x), _Normalizer(y)
    nx.norm()
    ny.norm()
    if nx.x != ny.x:
        raise TranslationError(f"{print_frege(x)} and {print_frege(y)} are not equal modulo =")
    back = [(p, _INVERSE[n], after, before) for p, n, before, after in reversed(ny.steps)]
    return nx.steps + back


@lru_cache(maxsize=1 << 14)
def canonical_frege(x: FFormula) -> FFormula:
    n = _Normalizer(x)
    n.norm()
    return n.x


def _compose(pb: ProofBuilder, acc: int | None, k: int) -> int:
    return k if acc is None else chain(pb, acc, k)


def _focus(x: FFormula, y: FFormula) -> list[tuple]:
    """Paths (deepest last) along which x and y share all but one child."""
    out = [()]
    path: tuple = ()
    while type(x) is type(y) and isinstance(x, (FOr, FAnd, Imp)):
        if x.left == y.left:
            x, y, path = x.right, y.right, path + (1,)
        elif x.right == y.right:
            x, y, path = x.left, y.left, path + (0,)
        else:
            break
        out.append(path)
    return out


def _leaves(f: FFormula, op, path=()) -> list[tuple]:
    if isinstance(f, op):
        return _leaves(f.left, op, path + (0,)) + _leaves(f.right, op, path + (1,))
    return [(path, f)]


def _lifted(pb: ProofBuilder, ctx: FFormula, path: tuple, moves: list[int]):
    """Lift every move at path inside ctx; returns (lines, final ctx)."""
    out = []
    for m in moves:
        out.append(lift(pb, ctx, path, m) if path else m)
        ctx = freplace_at(ctx, path, pb.f(m).right)
    return out, ctx


def _collapsible(leaf: FFormula, op) -> bool:
    c = canonical_frege(leaf)
    return c != leaf and (isinstance(c, (FConst, op)))


def _local_moves(pb: ProofBuilder, x: FFormula, y: FFormula) -> list[int]:
    """Rewrites x to y: mismatched leaves (w.r.t. the top connective) are
    rewritten recursively, then the leaves are treated as opaque while
    the associativity/commutativity/unit chain is built."""
    bx, by = isinstance(x, (FOr, FAnd)), isinstance(y, (FOr, FAnd))
    if not (bx or by):
        raise TranslationError(f"{print_frege(x)} and {print_frege(y)} are not equal modulo =")
    if bx and by and type(x) is not type(y):
        # flatten the side whose connective disappears in the canonical form
        op = type(x) if not isinstance(canonical_frege(x), type(x)) else type(y)
    else:
        op = type(x) if bx else type(y)
    moves: list[int] = []
    cur = x
    while True:
        todo = [(p, u) for p, u in _leaves(cur, op) if _collapsible(u, op)]
        if not todo:
            break
        for p, u in todo:
            lines, cur = _lifted(pb, cur, p, _eq_moves(pb, u, canonical_frege(u)))
            moves += lines
    # y side: collapse too, remembering how to come back
    ycur = y
    back: list[tuple] = []
    while True:
        todo = [(p, v) for p, v in _leaves(ycur, op) if _collapsible(v, op)]
        if not todo:
            break
        for p, v in todo:
            c = canonical_frege(v)
            ycur = freplace_at(ycur, p, c)
            back.append((ycur, p, c, v))
    # pair leaves by canonical form
    ys: dict = {}
    for p, v in _leaves(ycur, op):
        if not isinstance(v, FConst):
            ys.setdefault(canonical_frege(v), []).append(v)
    for p, u in _leaves(cur, op):
        if isinstance(u, FConst):
            continue
        bucket = ys.get(canonical_frege(u))
        if not bucket:
            raise TranslationError(f"{print_frege(x)} and {print_frege(y)} are not equal modulo =")
        v = u if u in bucket else bucket[0]
        bucket.remove(v)
        if v != u:
            lines, cur = _lifted(pb, cur, p, _eq_moves(pb, u, v))
            moves += lines
    if any(ys.values()):
        raise TranslationError(f"{print_frege(x)} and {print_frege(y)} are not equal modulo =")
    # opaque leaves
    names: dict = {}
    for f in (cur, ycur):
        for _, u in _leaves(f, op):
            if not isinstance(u, FConst) and u not in names:
                names[u] = FVar(f"L{len(names):06d}")
    to_abs = {u: v for u, v in names.items()}
    from_abs = {v.name: u for u, v in names.items()}

    def abstract(f):
        if isinstance(f, op):
            return op(abstract(f.left), abstract(f.right))
        return to_abs.get(f, f)

    ax_, ay_ = abstract(cur), abstract(ycur)
    steps = _direct_chain(ax_, ay_, op)
    if steps is None:
        steps = equation_chain(ax_, ay_)
    for path, name, before, after in steps:
        before = fsubst(before, from_abs)
        after = fsubst(after, from_abs)
        k = use_lemma(pb, name, **fmatch(statement(name).left, before))
        moves.append(lift(pb, cur, path, k) if path else k)
        cur = freplace_at(cur, path, after)
    for ctx, p, c, v in reversed(back):
        lines, _ = _lifted(pb, ctx, p, _eq_moves(pb, c, v))
        moves += lines
    return moves


def _eq_moves(pb: ProofBuilder, x: FFormula, y: FFormula) -> list[int]:
    """Implication lines x = a0 -> a1, a1 -> a2, ..., ending in y."""
    if x == y:
        return []
    spots = _focus(x, y)
    for where in reversed(spots):
        try:
            inner = _local_moves(pb, fsub_at(x, where), fsub_at(y, where))
        except TranslationError:
            if not where:
                raise
            continue
        return _lifted(pb, x, where, inner)[0]
    raise AssertionError("unreachable")


def eq_implication(pb: ProofBuilder, x: FFormula, y: FFormula) -> int | None:
    """Line proving x -> y for x, y equal modulo =; None when x is y."""
    acc = None
    for k in _eq_moves(pb, x, y):
        acc = _compose(pb, acc, k)
    return acc


def eq_apply(pb: ProofBuilder, line: int, y: FFormula) -> int:
    """From a line holding x, reach y (equal modulo =) by modus ponens."""
    for k in _eq_moves(pb, pb.f(line), y):
        line = pb.mp(line, k)
    return line


def equality_to_frege(a: Formula, b: Formula) -> FregeDerivation:
    """Frege derivation from the image of a to the image of b."""
    if not equal_mod_ac(a, b):
        raise TranslationError("formulae are not equal modulo =")
    pb = ProofBuilder()
    k = pb.premiss(c2f(a))
    imp = eq_implication(pb, c2f(a), c2f(b))
    if imp is not None:
        k = pb.mp(k, imp)
    return pb.derivation(k)


# --------------------------------------------------------------------------
# negation on compound formulae


def neg_bridge(pb: ProofBuilder, y: FFormula, forward: bool = True) -> int:
    """~y -> neg_normal(y) (forward) or neg_normal(y) -> ~y."""
    if isinstance(y, FVar):
        return use_lemma(pb, "id", A=Not(y))
    if isinstance(y, Not):
        return use_lemma(pb, "dne" if forward else "dni", A=y.arg)
    if isinstance(y, FConst):
        name = "neg-t" if y.value else "neg-f"
        return use_lemma(pb, name if forward else name + "-rev")
    l, r = y.left, y.right
    bl, br = neg_bridge(pb, l, forward), neg_bridge(pb, r, forward)
    dm = "dm-or" if isinstance(y, FOr) else "dm-and"
    if forward:
        d = use_lemma(pb, dm, A=l, B=r)                      # ~y -> (~l op' ~r)
        m = _both(pb, FAnd if isinstance(y, FOr) else FOr, bl, br)
        return chain(pb, d, m)
    m = _both(pb, FAnd if isinstance(y, FOr) else FOr, bl, br)
    d = use_lemma(pb, dm + "-rev", A=l, B=r)
    return chain(pb, m, d)


def _both(pb: ProofBuilder, op, i: int, j: int) -> int:
    """From a -> c and b -> d, get (a op b) -> (c op d)."""
    ac, bd = pb.f(i), pb.f(j)
    if op is FAnd:
        return imp_and_i(pb, chain(pb, pb.axiom(2, A=ac.left, B=bd.left), i),
                         chain(pb, pb.axiom(3, A=ac.left, B=bd.left), j))
    return imp_or_e(pb, chain(pb, i, pb.axiom(4, A=ac.right, B=bd.right)),
                    chain(pb, j, pb.axiom(5, A=ac.right, B=bd.right)))


def _diffs(x: FFormula, y: FFormula, path=()):
    if x == y:
        return
    if type(x) is type(y) and isinstance(x, (FOr, FAnd, Imp)):
        yield from _diffs(x.left, y.left, path + (0,))
        yield from _diffs(x.right, y.right, path + (1,))
        return
    yield path, x, y


def negation_implication(pb: ProofBuilder, x: FFormula, y: FFormula) -> int | None:
    """x -> y where the two differ only by ~z against neg_normal(z)."""
    acc = None
    cur = x
    for path, a, b in list(_diffs(x, y)):
        if isinstance(a, Not) and b == neg_normal(a.arg):
            k = neg_bridge(pb, a.arg, True)
        elif isinstance(b, Not) and a == neg_normal(b.arg):
            k = neg_bridge(pb, b.arg, False)
        else:
            raise TranslationError("formulae differ by more than negation placement")
        k = lift(pb, cur, path, k)
        cur = freplace_at(cur, path, b)
        acc = _compose(pb, acc, k)
    return acc


# --------------------------------------------------------------------------
# SKSg to Frege


def _tautology_for(rule: str) -> tuple[str, str]:
    base = rule[1:] if RULES[rule].atomic else rule
    name = RULE_TAUTOLOGIES.get(base) or EXTRA_RULE_TAUTOLOGIES.get(base)
    if name is None:
        raise TranslationError(f"no tautology for rule {rule}")
    return base, name


def _any_system(rule: str) -> str:
    for s in ("SKSg", "SKS"):
        if rule in SYSTEMS[s]:
            return s
    raise TranslationError(f"rule {rule} cannot be translated")


def _rule_implication(pb: ProofBuilder, gamma: Formula, delta: Formula, rule: str) -> int | None:
    """Line proving image(gamma) -> image(delta) for one redex pair."""
    env = match_rule(RULES[rule], gamma, delta)
    if env is None:
        raise TranslationError(f"redex does not match {rule}")
    base, name = _tautology_for(rule)
    if RULES[rule].atomic:
        env = {k.upper(): v for k, v in env.items()}
        sp, sc = instance(base, env)
    else:
        sp, sc = instance(rule, env)
    stmt = statement(name)
    sigma = {v: c2f(g) for v, g in env.items()}
    lp, lc = fsubst(stmt.left, sigma), fsubst(stmt.right, sigma)
    acc = eq_implication(pb, c2f(gamma), c2f(sp))
    acc = _compose_opt(pb, acc, negation_implication(pb, c2f(sp), lp))
    acc = _compose_opt(pb, acc, use_lemma(pb, name, **sigma))
    acc = _compose_opt(pb, acc, negation_implication(pb, lc, c2f(sc)))
    acc = _compose_opt(pb, acc, eq_implication(pb, c2f(sc), c2f(delta)))
    return acc


def _compose_opt(pb, acc, k):
    if k is None:
        return acc
    return _compose(pb, acc, k)


def _step(pb: ProofBuilder, cur: int, prev: Formula, result: Formula, j: Justification) -> int:
    if j.rule == "=":
        return eq_apply(pb, cur, c2f(result))
    if j.rule == "sub":
        raise TranslationError("sub steps are handled by the substitution translations")
    path = tuple(j.path)
    gamma, delta = subformula_at(prev, path), subformula_at(result, path)
    imp = _rule_implication(pb, gamma, delta, j.rule)
    if imp is None:
        return cur
    imp = lift(pb, c2f(prev), frege_path(prev, path), imp)
    return pb.mp(cur, imp)


def rule_step_to_frege(premiss: Formula, conclusion: Formula, j: Justification) -> FregeDerivation:
    """Frege derivation from image(premiss) to image(conclusion) for one
    rule step."""
    if j.rule in ("=", "sub"):
        raise TranslationError("rule_step_to_frege takes a rule step")
    v = verify_step(_any_system(j.rule), premiss, conclusion, j)
    if not v.ok:
        raise TranslationError(f"invalid step: {v.detail}")
    pb = ProofBuilder()
    k = pb.premiss(c2f(premiss))
    return pb.derivation(_step(pb, k, premiss, conclusion, j))


def sksg_to_frege(d: CosDerivation, as_proof: bool = True) -> FregeDerivation:
    """Frege derivation with the same (translated) endpoints.  A derivation
    from t becomes a proof when as_proof is set."""
    rep = check_derivation(d)
    if not rep.valid:
        raise TranslationError(f"invalid derivation at step {rep.failed_index}: {rep.reason}")
    pb = ProofBuilder()
    if as_proof and d.premiss == T:
        use_lemma(pb, "truth")
    cur = pb.premiss(c2f(d.premiss))
    for prev, step in d.pairs():
        cur = _step(pb, cur, prev, step.result, step.just)
    out = pb.derivation(cur)
    if out.conclusion != c2f(d.conclusion):
        raise AssertionError("translation lost the conclusion")
    return out
