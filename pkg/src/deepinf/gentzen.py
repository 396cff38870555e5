"""One-sided sequent calculus: checking, translation into SKSg, and an
exhaustive cut-free prover used as the exponential baseline.

Rules (sequents are multisets, read as disjunctions)::

    id   A, ~A              t    t
    w    phi        / phi, A
    c    phi, A, A  / phi, A
    or   phi, A, B  / phi, [A | B]
    and  phi, A  and  B, psi  / phi, (A & B), psi
    cut  phi, A  and  ~A, psi / phi, psi
    hyp  open premiss

``or`` and ``and`` also accept n-ary connectives: ``or`` releases all
children, ``and`` splits off the first child from the rest.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .derivation import Builder, CosDerivation
from .equality import order_key
from .formula import (
    And, F, Formula, Or, T, conj, disj, dual, left_or, parse_formula,
    print_formula, size,
)

RULE_NAMES = ("id", "t", "w", "c", "or", "and", "cut", "hyp")
_ALIASES = {"∨": "or", "∧": "and", "ax": "id"}


@dataclass(frozen=True)
class GNode:
    rule: str
    sequent: tuple
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "sequent", tuple(self.sequent))
        object.__setattr__(self, "children", tuple(self.children))


class GentzenError(ValueError):
    pass


def sequent_formula(seq: Sequence[Formula]) -> Formula:
    """Left-nested disjunction of the sequent (f when empty)."""
    return left_or(list(seq))


def _rest(first: Formula, f: Formula) -> Formula:
    kids = f.children
    return kids[1] if len(kids) == 2 else type(f)(kids[1:])


def _split(f) -> tuple[Formula, Formula]:
    return f.children[0], _rest(f.children[0], f)


def _minus(c: Counter, *items: Formula) -> Counter | None:
    out = Counter(c)
    for x in items:
        if out[x] <= 0:
            return None
        out[x] -= 1
        if not out[x]:
            del out[x]
    return out


@dataclass
class Analysis:
    """How a node instantiates its rule."""
    principal: Formula | None = None
    side: tuple = ()     # A (and B) for w, c, and, cut


def analyze(node: GNode) -> Analysis:
    """Match a node against its rule; raise GentzenError if it does not fit."""
    rule, seq, kids = node.rule, node.sequent, node.children
    arity = {"id": 0, "t": 0, "hyp": 0, "w": 1, "c": 1, "or": 1, "and": 2, "cut": 2}
    if rule not in arity:
        raise GentzenError(f"unknown rule {rule!r}")
    if len(kids) != arity[rule]:
        raise GentzenError(f"{rule} needs {arity[rule]} premisses, got {len(kids)}")
    concl = Counter(seq)
    if rule == "hyp":
        return Analysis()
    if rule == "id":
        if len(seq) == 2 and seq[1] == dual(seq[0]):
            return Analysis(seq[0], (seq[0],))
        raise GentzenError("id needs exactly A, ~A")
    if rule == "t":
        if seq == (T,):
            return Analysis(T)
        raise GentzenError("t needs exactly the sequent t")
    if rule == "w":
        above = Counter(kids[0].sequent)
        diff = concl - above
        if sum(diff.values()) == 1 and not (above - concl) and \
                sum(concl.values()) == sum(above.values()) + 1:
            a = next(iter(diff))
            return Analysis(a, (a,))
        raise GentzenError("w must add exactly one formula")
    if rule == "c":
        above = Counter(kids[0].sequent)
        diff = above - concl
        if sum(diff.values()) == 1 and not (concl - above):
            a = next(iter(diff))
            if concl[a] >= 1:
                return Analysis(a, (a,))
        raise GentzenError("c must merge two copies of one formula")
    if rule == "or":
        above = Counter(kids[0].sequent)
        for p in dict.fromkeys(seq):
            if isinstance(p, Or):
                rest = _minus(concl, p)
                if rest + Counter(p.children) == above:
                    return Analysis(p, tuple(p.children))
        raise GentzenError("or does not match")
    left, right = Counter(kids[0].sequent), Counter(kids[1].sequent)
    if rule == "and":
        for p in dict.fromkeys(seq):
            if isinstance(p, And):
                a, b = _split(p)
                l, r, ctx = _minus(left, a), _minus(right, b), _minus(concl, p)
                if l is not None and r is not None and l + r == ctx:
                    return Analysis(p, (a, b))
        raise GentzenError("and does not match")
    # cut
    for a in dict.fromkeys(kids[0].sequent):
        l, r = _minus(left, a), _minus(right, dual(a))
        if l is not None and r is not None and l + r == concl:
            return Analysis(a, (a,))
    raise GentzenError("cut does not match")


@dataclass
class GentzenReport:
    valid: bool
    analytic: bool
    premisses: list
    conclusion: tuple
    size: int
    nodes: int
    error: str = ""
    failed_sequent: tuple | None = None

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "analytic": self.analytic,
            "premisses": [format_sequent(s) for s in self.premisses],
            "conclusion": format_sequent(self.conclusion),
            "size": self.size,
            "nodes": self.nodes,
            "error": self.error,
        }


def iter_nodes(node: GNode) -> Iterable[GNode]:
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(n.children))


def premisses_of(node: GNode) -> list:
    return [n.sequent for n in iter_nodes(node) if n.rule == "hyp"]


def check_gentzen(d: GNode) -> GentzenReport:
    error = ""
    failed = None
    for n in iter_nodes(d):
        try:
            analyze(n)
        except GentzenError as e:
            error, failed = str(e), n.sequent
            break
    nodes = list(iter_nodes(d))
    return GentzenReport(
        valid=not error,
        analytic=all(n.rule != "cut" for n in nodes),
        premisses=premisses_of(d),
        conclusion=d.sequent,
        size=sum(size(f) for n in nodes for f in n.sequent),
        nodes=len(nodes),
        error=error,
        failed_sequent=failed,
    )


# --------------------------------------------------------------------------
# translation into SKSg


def _premiss_shape(node: GNode) -> Formula:
    if node.rule == "hyp":
        return sequent_formula(node.sequent)
    if node.rule in ("id", "t"):
        return T
    if len(node.children) == 1:
        return _premiss_shape(node.children[0])
    return conj(_premiss_shape(node.children[0]), _premiss_shape(node.children[1]))


def _drop_one(seq: Sequence[Formula], *items: Formula) -> list:
    out = list(seq)
    for x in items:
        out.remove(x)
    return out


def _with(phi: list, a: Formula) -> Formula:
    """[phi | a], or a alone when phi is empty."""
    return disj(sequent_formula(phi), a) if phi else a


def _translate(node: GNode, system: str) -> CosDerivation:
    info = analyze(node)
    rule, seq = node.rule, node.sequent
    target = sequent_formula(seq)
    if rule == "hyp":
        return CosDerivation(system, target, [])
    if rule == "t":
        return CosDerivation(system, T, [])
    if rule == "id":
        return Builder(system, T).apply("i↓", (), A=seq[0]).build()
    if rule in ("w", "c", "or"):
        child = node.children[0]
        b = Builder(system, _premiss_shape(child))
        b.then(_translate(child, system))
        if rule == "w":
            a = info.principal
            phi = _drop_one(seq, a)
            if phi:
                b.eq(disj(sequent_formula(phi), F))
                b.apply("w↓", (1,), A=a)
            else:
                b.apply("w↓", (), A=a)
        elif rule == "c":
            a = info.principal
            phi = _drop_one(seq, a)
            b.eq(_with(phi, disj(a, a)))
            b.apply("c↓", (1,) if phi else ())
        return b.eq(target).build()
    # two premisses: run the left derivation, then the right one
    lchild, rchild = node.children
    b = Builder(system, conj(_premiss_shape(lchild), _premiss_shape(rchild)))
    b.then(_translate(lchild, system), (0,))
    b.then(_translate(rchild, system), (1,))
    if rule == "and":
        a, bb = info.side
    else:
        a = info.principal
        bb = dual(a)
    phi = _drop_one(lchild.sequent, a)
    psi = _drop_one(rchild.sequent, bb)
    fphi = sequent_formula(phi)
    fpsi = sequent_formula(psi)
    right = disj(bb, fpsi) if psi else bb
    if phi:
        b.eq(conj(disj(fphi, a), right))                 # ([phi | A] & [B | psi])
        b.eq(conj(right, disj(a, fphi)))                 # ([B | psi] & [A | phi])
        if psi:
            b.apply("s")                                 # [([B | psi] & A) | phi]
            b.eq(disj(fphi, conj(a, right)))             # [phi | (A & [B | psi])]
            b.apply("s", (1,))                           # [phi | [(A & B) | psi]]
            redex = (1, 0)
        else:
            b.apply("s")                                 # [(B & A) | phi]
            b.eq(disj(fphi, conj(a, bb)))
            redex = (1,)
    else:
        b.eq(conj(a, right))
        if psi:
            b.apply("s")                                 # [(A & B) | psi]
            redex = (0,)
        else:
            redex = ()
    if rule == "cut":
        b.apply("i↑", redex)
    return b.eq(target).build()


def flat_premiss(node: GNode) -> Formula:
    prem = [sequent_formula(s) for s in premisses_of(node)]
    if not prem:
        return T
    if len(prem) == 1:
        return prem[0]
    return And(tuple(prem))


def gentzen_to_sksg(d: GNode) -> CosDerivation:
    """SKSg derivation from the conjunction of the premisses to the
    conclusion; KSg when the input has no cut."""
    report = check_gentzen(d)
    if not report.valid:
        raise GentzenError(f"invalid derivation: {report.error}")
    system = "KSg" if report.analytic else "SKSg"
    inner = _translate(d, system)
    b = Builder(system, flat_premiss(d))
    b.eq(inner.premiss)
    b.steps.extend(inner.steps)
    return b.build()


# --------------------------------------------------------------------------
# .gtz format: (rule "A, B, C" child*)


def format_sequent(seq: Sequence[Formula]) -> str:
    return ", ".join(print_formula(f) for f in seq)


def parse_sequent(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_formula(part) for part in text.split(","))


def dumps(node: GNode, indent: int = 0) -> str:
    pad = "  " * indent
    head = f'{pad}({node.rule} "{format_sequent(node.sequent)}"'
    if not node.children:
        return head + ")"
    body = "\n".join(dumps(c, indent + 1) for c in node.children)
    return head + "\n" + body + ")"


def _tokens(text: str):
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield ch, i
            i += 1
        elif ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise GentzenError(f"unterminated string at position {i}")
            yield ("str", text[i + 1:j]), i
            i = j + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in '()"':
                j += 1
            yield ("sym", text[i:j]), i
            i = j


def loads(text: str) -> GNode:
    toks = list(_tokens(text))
    pos = 0

    def node() -> GNode:
        nonlocal pos
        if pos >= len(toks) or toks[pos][0] != "(":
            raise GentzenError("expected '('")
        pos += 1
        if pos >= len(toks) or not isinstance(toks[pos][0], tuple) or toks[pos][0][0] != "sym":
            raise GentzenError("expected rule name")
        rule = toks[pos][0][1]
        rule = _ALIASES.get(rule, rule)
        if rule not in RULE_NAMES:
            raise GentzenError(f"unknown rule {rule!r}")
        pos += 1
        if pos >= len(toks) or not isinstance(toks[pos][0], tuple) or toks[pos][0][0] != "str":
            raise GentzenError("expected quoted sequent")
        seq = parse_sequent(toks[pos][0][1])
        pos += 1
        kids = []
        while pos < len(toks) and toks[pos][0] == "(":
            kids.append(node())
        if pos >= len(toks) or toks[pos][0] != ")":
            raise GentzenError("expected ')'")
        pos += 1
        return GNode(rule, seq, tuple(kids))

    root = node()
    if pos != len(toks):
        raise GentzenError("trailing input after derivation")
    return root


# --------------------------------------------------------------------------
# cut-free prover


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search budget exhausted after {nodes} nodes")


class NotATautology(ValueError):
    pass


@dataclass
class SearchStats:
    nodes: int = 0
    iterations: int = 0
    min_size: int | None = None
    bounds: list = field(default_factory=list)


def _canon(seq: Iterable[Formula]) -> tuple:
    return tuple(sorted(seq, key=order_key))


class _Prover:
    """Root-first search.  Disjunctions are decomposed eagerly; weakening is
    only used to close a branch with id or t; before a conjunction split
    every other formula goes left, right, or (after one contraction) both.
    Proof size is the number of rule instances.

    Formulae are interned as integers; a sequent is a sorted tuple of ids.
    Splits whose sides are not valid by truth table are never explored.
    """

    def __init__(self, goal: Sequence[Formula], budget: int):
        from .semantics import _columns, _eval, symbols
        syms: set = set()
        for f in goal:
            syms |= symbols(f)
        self._cols, self._full = _columns(sorted(syms), 24)
        self._eval = _eval
        self.forms: list = []
        self.ids: dict = {}
        self.masks: list = []
        self.info: list = []
        self.budget = budget
        self.nodes = 0
        self.exact: dict = {}
        self.lower: dict = {}

    def intern(self, f: Formula) -> int:
        i = self.ids.get(f)
        if i is not None:
            return i
        i = len(self.forms)
        self.ids[f] = i
        self.forms.append(f)
        self.masks.append(self._eval(f, self._cols, self._full))
        self.info.append(None)
        if isinstance(f, Or):
            self.info[i] = ("or", tuple(self.intern(c) for c in f.children))
        elif isinstance(f, And):
            a, b = _split(f)
            self.info[i] = ("and", (self.intern(a), self.intern(b)))
        elif f == T:
            self.info[i] = ("t", None)
        else:
            self.info[i] = ("lit", None)
        return i

    def seq_of(self, formulas: Iterable[Formula]) -> tuple:
        return tuple(sorted(self.intern(f) for f in formulas))

    def valid(self, seq: Iterable[int]) -> bool:
        acc = 0
        for i in seq:
            acc |= self.masks[i]
        return acc == self._full

    def solve(self, seq: tuple, bound: int):
        """(size, move) of a minimal proof of size <= bound, else None."""
        hit = self.exact.get(seq)
        if hit is not None:
            return hit if hit[0] <= bound else None
        if bound < 1 or self.lower.get(seq, 0) > bound:
            return None
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes)
        best = None
        info = self.info
        for k, i in enumerate(seq):
            if info[i][0] == "or":
                child = tuple(sorted(seq[:k] + seq[k + 1:] + info[i][1]))
                r = self.solve(child, bound - 1)
                if r is not None:
                    best = (r[0] + 1, ("or", i, child))
                break
        else:
            best = self._axiom(seq, bound)
            limit = bound if best is None else best[0] - 1
            done = set()
            for k, i in enumerate(seq):
                if info[i][0] == "and" and i not in done:
                    done.add(i)
                    r = self._split(seq[:k] + seq[k + 1:], i, limit)
                    if r is not None:
                        best = r
                        limit = r[0] - 1
        if best is None:
            self.lower[seq] = bound + 1
        else:
            self.exact[seq] = best
        return best

    def _axiom(self, seq: tuple, bound: int):
        n = len(seq)
        best = None
        if n - 1 <= bound:
            present = set(seq)
            for i in seq:
                if self.info[i][0] == "lit":
                    j = self.ids.get(dual(self.forms[i]))
                    if j is not None and j in present:
                        return (n - 1, ("id", i))
        if n <= bound:
            for i in seq:
                if self.info[i][0] == "t":
                    best = (n, ("t", i))
                    break
        return best

    def _split(self, ctx: tuple, p: int, limit: int):
        a, b = self.info[p][1]
        full = self._full
        masks = self.masks
        ma, mb = masks[a], masks[b]
        k = len(ctx)
        suffix = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix[i] = suffix[i + 1] | masks[ctx[i]]
        best = None
        seen = set()
        cands = []

        def go(i, lm, rm, left, right, both):
            if (lm | suffix[i]) != full or (rm | suffix[i]) != full:
                return
            if 3 + len(both) > limit:
                return
            if i == k:
                cands.append((len(both), left, right, both))
                return
            x = ctx[i]
            mx = masks[x]
            go(i + 1, lm | mx, rm, left + (x,), right, both)
            go(i + 1, lm, rm | mx, left, right + (x,), both)
            go(i + 1, lm | mx, rm | mx, left + (x,), right + (x,), both + (x,))

        go(0, ma, mb, (), (), ())
        cands.sort(key=lambda c: c[0])
        for nb, left, right, both in cands:
            cost0 = 1 + nb
            if cost0 + 2 > limit:
                break
            lseq = tuple(sorted(left + (a,)))
            rseq = tuple(sorted(right + (b,)))
            if (lseq, rseq) in seen:
                continue
            seen.add((lseq, rseq))
            lr = self.solve(lseq, limit - cost0 - 1)
            if lr is None:
                continue
            rr = self.solve(rseq, limit - cost0 - lr[0])
            if rr is None:
                continue
            total = cost0 + lr[0] + rr[0]
            best = (total, ("and", p, both, lseq, rseq))
            limit = total - 1
        return best

    def _formulas(self, seq: Iterable[int]) -> tuple:
        return _canon(self.forms[i] for i in seq)

    def build(self, seq: tuple) -> GNode:
        _, move = self.exact[seq]
        kind = move[0]
        here = self._formulas(seq)
        if kind == "or":
            return GNode("or", here, (self.build(move[2]),))
        if kind == "id":
            f = self.forms[move[1]]
            keep = [f, dual(f)]
            return _weaken_to(here, keep, GNode("id", tuple(keep)))
        if kind == "t":
            return _weaken_to(here, [T], GNode("t", (T,)))
        _, p, both, lseq, rseq = move
        dup = [self.forms[i] for i in both]
        node = GNode("and", _canon(list(here) + dup), (self.build(lseq), self.build(rseq)))
        cur = list(node.sequent)
        for x in reversed(dup):
            cur = _drop_one(cur, x)
            node = GNode("c", _canon(cur), (node,))
        return node


def _weaken_to(seq: tuple, keep: list, leaf: GNode) -> GNode:
    extra = _drop_one(seq, *keep)
    node = leaf
    cur = list(keep)
    for x in reversed(extra):
        cur = cur + [x]
        node = GNode("w", _canon(cur), (node,))
    return node


def cutfree_prove(goal: Sequence[Formula], budget: int = 10 ** 6, growth: str = "linear"):
    """Minimal cut-free proof (by rule instances) of the sequent goal.

    Iterative deepening raises the size bound by one per round
    (growth="linear") or doubles it (growth="doubling"); both return a
    minimal proof, the second usually after exploring fewer nodes.

    Returns (proof, stats).  Raises NotATautology or BudgetExhausted.
    """
    prover = _Prover(goal, budget)
    seq = prover.seq_of(goal)
    if not prover.valid(seq):
        raise NotATautology(f"{format_sequent(goal)} is not valid")
    stats = SearchStats()
    bound = 1
    try:
        while True:
            stats.iterations += 1
            stats.bounds.append(bound)
            r = prover.solve(seq, bound)
            if r is not None:
                stats.min_size = r[0]
                break
            bound = bound * 2 if growth == "doubling" else bound + 1
    finally:
        stats.nodes = prover.nodes
    proof = prover.build(seq)
    if proof.sequent != tuple(goal):
        # restate the root in the caller's order
        proof = GNode(proof.rule, tuple(goal), proof.children)
    return proof, stats
