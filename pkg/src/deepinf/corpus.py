"""Seeded random corpora of formulae and proofs.

Everything here is driven by an explicit ``random.Random`` so a seed fixes
the corpus.  Proofs are grown forwards from axioms, which makes them valid
by construction; the tests still run them through the checkers.
"""

from __future__ import annotations

import random
from typing import Sequence

from .derivation import Builder, CosDerivation
from .formula import And, Atom, F, Formula, Or, T, Var, conj, disj, dual
from .frege import FAnd, FConst, FFormula, FOr, FVar, FregeDerivation, Imp, Not, ext_line, fvars
from .frege_lemmas import ProofBuilder, and_i, and_l, and_r, chain
from .gentzen import GNode
from .extended import ExtendedProof, extension_clauses, extension_premiss, xfrege_to_xsksg, xsksg_to_ssksg

ATOMS = ("a", "b", "c", "d")


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# --------------------------------------------------------------------------
# formulae


def random_formula(seed, leaves: int = 4, atoms: Sequence[str] = ATOMS,
                   units: float = 0.1, variables: Sequence[str] = ()) -> Formula:
    """Random formula with the given number of leaves."""
    rng = _rng(seed)
    if leaves <= 1:
        r = rng.random()
        if r < units:
            return T if rng.random() < 0.5 else F
        if variables and r < units + 0.3:
            return Var(rng.choice(variables), rng.random() < 0.5)
        return Atom(rng.choice(atoms), rng.random() < 0.5)
    k = rng.randint(1, leaves - 1)
    left = random_formula(rng, k, atoms, units, variables)
    right = random_formula(rng, leaves - k, atoms, units, variables)
    return Or((left, right)) if rng.random() < 0.5 else And((left, right))


def random_frege_formula(seed, leaves: int = 3, names: Sequence[str] = ATOMS) -> FFormula:
    rng = _rng(seed)
    if leaves <= 1:
        v = FVar(rng.choice(names))
        return Not(v) if rng.random() < 0.3 else v
    k = rng.randint(1, leaves - 1)
    ops = (FOr, FAnd, Imp)
    return rng.choice(ops)(random_frege_formula(rng, k, names),
                           random_frege_formula(rng, leaves - k, names))


# --------------------------------------------------------------------------
# Gentzen proofs


def _leaf(rng, atoms) -> GNode:
    if rng.random() < 0.15:
        return GNode("t", (T,))
    a = random_formula(rng, rng.choice((1, 1, 2)), atoms, units=0.0)
    return GNode("id", (a, dual(a)))


def random_gentzen(seed, depth: int = 4, cut: bool = False,
                   atoms: Sequence[str] = ATOMS[:3]) -> GNode:
    """Random one-sided sequent proof (cut-free unless cut is set)."""
    rng = _rng(seed)

    def grow(d: int) -> GNode:
        if d <= 0:
            return _leaf(rng, atoms)
        choices = ["w", "c", "or", "and", "and", "or"]
        if cut:
            choices += ["cut", "cut"]
        rule = rng.choice(choices)
        if rule == "w":
            kid = grow(d - 1)
            extra = random_formula(rng, rng.randint(1, 2), atoms)
            return GNode("w", kid.sequent + (extra,), (kid,))
        if rule == "c":
            kid = grow(d - 1)
            a = rng.choice(kid.sequent)
            doubled = GNode("w", kid.sequent + (a,), (kid,))
            return GNode("c", kid.sequent, (doubled,))
        if rule == "or":
            kid = grow(d - 1)
            seq = list(kid.sequent)
            if len(seq) < 2:
                return GNode("w", tuple(seq) + (F,), (kid,))
            i, j = rng.sample(range(len(seq)), 2)
            a, b = seq[i], seq[j]
            rest = [x for k, x in enumerate(seq) if k not in (i, j)]
            return GNode("or", tuple(rest) + (Or((a, b)),), (kid,))
        if rule == "and":
            left, right = grow(d - 1), grow(d - 2)
            i = rng.randrange(len(left.sequent))
            j = rng.randrange(len(right.sequent))
            a, b = left.sequent[i], right.sequent[j]
            phi = left.sequent[:i] + left.sequent[i + 1:]
            psi = right.sequent[:j] + right.sequent[j + 1:]
            return GNode("and", phi + (And((a, b)),) + psi, (left, right))
        # cut on a formula of the left proof against an identity, weakened
        left = grow(d - 1)
        a = rng.choice(left.sequent)
        right = GNode("id", (dual(a), a))
        if rng.random() < 0.5:
            extra = random_formula(rng, 1, atoms)
            right = GNode("w", right.sequent + (extra,), (right,))
        concl = list(left.sequent)
        concl.remove(a)
        rs = list(right.sequent)
        rs.remove(dual(a))
        return GNode("cut", tuple(concl + rs), (left, right))

    return grow(depth)


# --------------------------------------------------------------------------
# Frege proofs


def _grow_frege(rng, pb: ProofBuilder, pool: list[int], steps: int, names) -> list[int]:
    for _ in range(steps):
        r = rng.random()
        if r < 0.2 or not pool:
            k = rng.choice((1, 2, 4, 8, 9, 13, 16))
            x, y = random_frege_formula(rng, 2, names), random_frege_formula(rng, 1, names)
            line = pb.axiom(k, A=x) if k == 16 else pb.axiom(k, A=x, B=y)
        else:
            i = rng.choice(pool)
            f = pb.f(i)
            if r < 0.35:
                line = pb.mp(i, pb.axiom(8, A=f, B=random_frege_formula(rng, 1, names)))
            elif r < 0.5:
                line = and_i(pb, i, rng.choice(pool))
            elif r < 0.6 and isinstance(f, FAnd):
                line = and_l(pb, i) if rng.random() < 0.5 else and_r(pb, i)
            elif r < 0.7:
                line = pb.mp(i, pb.axiom(4, A=f, B=random_frege_formula(rng, 1, names)))
            elif r < 0.85:
                imps = [j for j in pool if isinstance(pb.f(j), Imp) and pb.f(j).left in pb.index]
                if imps:
                    j = rng.choice(imps)
                    line = pb.mp(pb.index[pb.f(j).left], j)
                else:
                    line = pb.mp(i, pb.axiom(7, A=f))
            else:
                chains = [(j, k) for j in pool for k in pool
                          if isinstance(pb.f(j), Imp) and isinstance(pb.f(k), Imp)
                          and pb.f(j).right == pb.f(k).left]
                if chains:
                    line = chain(pb, *rng.choice(chains))
                else:
                    line = pb.mp(i, pb.axiom(7, A=f))
        if line not in pool:
            pool.append(line)
    return pool


def random_frege(seed, steps: int = 6, names: Sequence[str] = ATOMS[:3]) -> FregeDerivation:
    """Random Frege proof built from axiom instances and modus ponens."""
    rng = _rng(seed)
    pb = ProofBuilder()
    pool = _grow_frege(rng, pb, [], steps, names)
    return pb.derivation(pool[-1])


# --------------------------------------------------------------------------
# extended proofs


def random_xfrege(seed, h: int = 1, steps: int = 3, names: Sequence[str] = ATOMS[:3]) -> FregeDerivation:
    """Random xFrege proof with h extension lines X1..Xh.  Each body may
    mention earlier extension variables; the conclusion mentions none."""
    rng = _rng(seed)
    pb = ProofBuilder()
    ext_names = [f"X{i}" for i in range(1, h + 1)]
    loops = []
    for i, name in enumerate(ext_names):
        body = random_frege_formula(rng, rng.randint(1, 3), list(names) + ext_names[:i])
        if isinstance(body, Imp):
            body = FAnd(body.left, body.right)
        e = pb.add(ext_line(name, body))
        loops.append(chain(pb, and_r(pb, e), and_l(pb, e)))      # body -> body
    pool = _grow_frege(rng, pb, [], steps, names)
    hidden = set(ext_names)
    goal = pool[-1] if pool and not fvars(pb.f(pool[-1])) & hidden else None
    for k in loops:
        if not fvars(pb.f(k)) & hidden:
            goal = k if goal is None else and_i(pb, goal, k)
    if goal is None:
        goal = pb.axiom(16, A=FVar(names[0]))
    return FregeDerivation(pb.derivation(goal).lines, "xFrege")


def resolve_extension(name: str, body: Formula) -> CosDerivation:
    """SKSg derivation from ([~A | b] & [~b | A]) to [b | ~b]: resolve
    the two clauses on A, which then disappears."""
    a, na, nb = Var(name), dual(Var(name)), dual(body)
    c1, c2 = extension_clauses(name, body)
    b = Builder("SKSg", And((c1, c2)))
    b.eq(And((c2, Or((na, body)))))
    b.apply("s")
    b.eq(Or((And((na, Or((a, nb)))), body)))
    b.apply("s", (0,))
    b.eq(Or((Or((And((a, na)), nb)), body)))
    b.apply("i↑", (0, 0))
    b.eq(Or((body, nb)))
    return b.build()


def random_xsksg(seed, h: int = 1, atoms: Sequence[str] = ATOMS[:3]) -> CosDerivation:
    """xSKSg proof over extensions X1..Xh.  Extensions with atom-only bodies
    are resolved away; the others are weakened to t."""
    rng = _rng(seed)
    names = [f"X{i}" for i in range(1, h + 1)]
    exts = [(n, random_formula(rng, rng.randint(1, 2), atoms, units=0.0, variables=names[:i]))
            for i, n in enumerate(names)]
    b = Builder("xSKSg", extension_premiss(exts))
    pairs = [And(extension_clauses(n, body)) for n, body in exts]
    if h > 1:
        b.eq(And(tuple(pairs)))
    kept = []
    for i, (n, body) in enumerate(exts):
        path = (i,) if h > 1 else ()
        if any(isinstance(v, Var) for v in _leaves_of(body)):
            b.apply("w↑", path)
        else:
            b.then(resolve_extension(n, body), path)
            kept.append(Or((body, dual(body))))
    b.eq(kept[0] if len(kept) == 1 else conj(*kept) if kept else T)
    for _ in range(rng.randint(0, 1)):
        b.eq(disj(b.current, F))
        b.apply("w↓", (1,), A=random_formula(rng, rng.randint(1, 2), atoms, units=0.0))
    return b.build()


def _leaves_of(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Or, And)):
            stack.extend(g.children)
        else:
            yield g


def root_sub_example() -> CosDerivation:
    """i↓ on [A | ~A], then A := (B & C) at the root."""
    b = Builder("sSKSg", T)
    b.apply("i↓", (), A=Var("A"))
    b.sub({"A": conj(Var("B"), Var("C"))})
    return b.build()


def random_ssksg(seed, atoms: Sequence[str] = ATOMS[:3]) -> CosDerivation:
    """i↓ on a variable, a root substitution, then a few weakenings."""
    rng = _rng(seed)
    b = Builder("sSKSg", T)
    b.apply("i↓", (), A=Var("A"))
    b.sub({"A": random_formula(rng, rng.randint(1, 3), atoms, units=0.0)})
    for _ in range(rng.randint(0, 2)):
        b.eq(disj(b.current, F))
        b.apply("w↓", (1,), A=random_formula(rng, rng.randint(1, 2), atoms, units=0.0))
    return b.build()


def extended_corpus(seed, count: int = 100) -> list:
    """Mixed list of ExtendedProof: roughly 40% xFrege, 30% xSKSg (half
    translated from xFrege, half native) and 30% sSKSg."""
    rng = _rng(seed)
    out = []
    for i in range(count):
        k = i % 10
        s = rng.randrange(1 << 30)
        if k < 4:
            out.append(ExtendedProof("xFrege", random_xfrege(s, h=1 + k % 2, steps=1 + k % 2)))
        elif k < 7:
            if k == 4:
                x = ExtendedProof("xFrege", random_xfrege(s, h=1, steps=1))
                out.append(xfrege_to_xsksg(x))
            else:
                out.append(ExtendedProof("xSKSg", random_xsksg(s, h=1 + k % 2)))
        elif k < 9:
            out.append(ExtendedProof("sSKSg", random_ssksg(s)))
        else:
            out.append(xsksg_to_ssksg(ExtendedProof("xSKSg", random_xsksg(s, h=2))))
    return out
