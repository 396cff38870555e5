"""Extension and substitution: xFrege, sFrege, xSKSg, sSKSg.

An xSKSg proof is an SKSg derivation whose premiss is the conjunction of
the clauses [~A_i | b_i] and [~b_i | A_i]; an sSKSg proof is an SKSg
proof from t that may also apply substitution at the root.  Extension
variables are CoS variables (upper case names) on both sides, so that
substitution can act on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .derivation import Builder, CosDerivation, Step, check_derivation
from .formula import (
    And, F, Formula, Or, T, Var, conj, disj, dual, print_formula, size,
    subformula_at, vars_of,
)
from .frege import (
    FregeDerivation, FVar, Imp, check_frege, ext_line, fmatch, fsubst, fvars,
    iff, print_frege, sub_line, AXIOMS, axiom_line,
)
from .frege_bridge import (
    TranslationError, c2f, f2c, frege_to_sksg, negation_implication, sksg_to_frege,
)
from .frege_lemmas import ProofBuilder, and_i, and_l, and_r, identity, use_lemma
from .rules import match_sub

KINDS = ("xFrege", "sFrege", "xSKSg", "sSKSg")


@dataclass
class ExtendedProof:
    kind: str
    derivation: "FregeDerivation | CosDerivation"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def is_frege(self) -> bool:
        return self.kind in ("xFrege", "sFrege")

    @property
    def conclusion(self):
        return self.derivation.conclusion

    @property
    def length(self) -> int:
        return self.derivation.length

    @property
    def size(self) -> int:
        return self.derivation.size

    def extensions(self) -> list[tuple[str, object]]:
        """(A_i, b_i) in declaration order."""
        if self.kind == "xFrege":
            return [ln.subst[0] for ln in self.derivation.lines if ln.rule == "ext"]
        if self.kind == "xSKSg":
            return extension_premiss_parts(self.derivation.premiss)
        return []


@dataclass
class ExtendedReport:
    valid: bool
    kind: str
    length: int
    size: int
    conclusion: str | None
    error: str | None = None
    reason: str = ""
    variable: str | None = None
    failed_index: int | None = None
    extensions: int = 0
    substitutions: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


# --------------------------------------------------------------------------
# the extension premiss


def extension_clauses(name: str, body: Formula) -> tuple[Formula, Formula]:
    a = Var(name)
    return disj(dual(a), body), disj(dual(body), a)


def extension_premiss(exts: Sequence[tuple[str, Formula]]) -> Formula:
    """([~A1|b1] & [~b1|A1] & ... ); t when there are no extensions."""
    if not exts:
        return T
    clauses = []
    for name, body in exts:
        clauses.extend(extension_clauses(name, body))
    return conj(*clauses)


def extension_premiss_parts(premiss: Formula) -> list[tuple[str, Formula]]:
    """Inverse of extension_premiss; ValueError when the shape is wrong."""
    if premiss == T:
        return []
    if not isinstance(premiss, And) or len(premiss.children) % 2:
        raise ValueError("premiss is not a conjunction of extension clause pairs")
    out = []
    kids = premiss.children
    for k in range(0, len(kids), 2):
        first = kids[k]
        if not (isinstance(first, Or) and len(first.children) == 2):
            raise ValueError(f"clause {k + 1} is not [~A | b]")
        neg, body = first.children
        if not (isinstance(neg, Var) and neg.negated):
            raise ValueError(f"clause {k + 1} does not start with a negated variable")
        if (first, kids[k + 1]) != extension_clauses(neg.name, body):
            raise ValueError(f"clauses {k + 1} and {k + 2} do not form an extension")
        out.append((neg.name, body))
    return out


# --------------------------------------------------------------------------
# checking


def _fail(p, error, reason, variable=None, index=None) -> ExtendedReport:
    concl = None
    if p.derivation.length or not p.is_frege:
        c = p.derivation.conclusion
        concl = print_frege(c) if p.is_frege else print_formula(c)
    return ExtendedReport(False, p.kind, p.length, p.size, concl, error, reason, variable, index)


def _sub_inside_context(prem: Formula, concl: Formula, sigma) -> bool:
    """Some proper subformula pair is a substitution instance while the
    surroundings agree."""
    while (type(prem) is type(concl) and isinstance(prem, (Or, And))
           and len(prem.children) == len(concl.children)):
        diff = [k for k, (x, y) in enumerate(zip(prem.children, concl.children)) if x != y]
        if len(diff) != 1:
            return False
        prem, concl = prem.children[diff[0]], concl.children[diff[0]]
        if match_sub(prem, concl, sigma) is not None:
            return True
    return False


def check_extended(p: ExtendedProof) -> ExtendedReport:
    d = p.derivation
    if p.is_frege:
        rep = check_frege(d, p.kind)
        if not rep.valid:
            return _fail(p, rep.error, rep.reason, index=rep.failed_line)
        if rep.premisses:
            return _fail(p, "not-a-proof", "proofs have no premisses")
        n_ext = n_sub = 0
        if p.kind == "xFrege":
            seen: set[str] = set()
            concl_vars = fvars(d.conclusion)
            for k, ln in enumerate(d.lines, 1):
                if ln.rule == "ext":
                    (name, body), = ln.subst
                    n_ext += 1
                    if name in seen:
                        return _fail(p, "freshness", f"{name} appears before its extension line", name, k)
                    if name in fvars(body):
                        return _fail(p, "freshness", f"{name} appears in its own definition", name, k)
                    if name in concl_vars:
                        return _fail(p, "freshness", f"{name} appears in the conclusion", name, k)
                seen |= fvars(ln.formula)
        else:
            n_sub = sum(1 for ln in d.lines if ln.rule == "sub")
        return ExtendedReport(True, p.kind, p.length, p.size, print_frege(d.conclusion),
                              extensions=n_ext, substitutions=n_sub)

    if d.system != p.kind:
        d = d.with_system(p.kind)
    if p.kind == "sSKSg":
        for k, (prev, step) in enumerate(d.pairs(), 1):
            if step.rule == "sub" and (step.just.path or
                                       match_sub(prev, step.result, step.just.substitution) is None):
                if step.just.path or _sub_inside_context(prev, step.result, step.just.substitution):
                    return _fail(p, "sub-inside-context", "substitution applies only at the root", index=k)
    rep = check_derivation(d)
    if not rep.valid:
        return _fail(p, rep.error, rep.reason, index=rep.failed_index)
    n_sub = rep.rule_counts.get("sub", 0)
    if p.kind == "sSKSg":
        if d.premiss != T:
            return _fail(p, "not-a-proof", "an sSKSg proof starts from t")
        return ExtendedReport(True, p.kind, p.length, p.size, print_formula(d.conclusion),
                              substitutions=n_sub)
    try:
        exts = extension_premiss_parts(d.premiss)
    except ValueError as e:
        return _fail(p, "premiss-shape", str(e))
    concl_vars = vars_of(d.conclusion)
    names: set[str] = set()
    bodies: set[str] = set()
    for i, (name, body) in enumerate(exts, 1):
        if name in names:
            return _fail(p, "freshness", f"{name} is extended twice", name, i)
        names.add(name)
        bodies |= vars_of(body)
        # A_i must avoid b_1 .. b_i
        if name in bodies:
            return _fail(p, "freshness", f"{name} appears in an extension body up to its own", name, i)
        if name in concl_vars:
            return _fail(p, "freshness", f"{name} appears in the conclusion", name, i)
    return ExtendedReport(True, p.kind, p.length, p.size, print_formula(d.conclusion),
                          extensions=len(exts))


def is_valid_extended(p: ExtendedProof) -> bool:
    return check_extended(p).valid


def _require(p: ExtendedProof, kind: str) -> None:
    if p.kind != kind:
        raise TranslationError(f"expected a {kind} proof, got {p.kind}")
    rep = check_extended(p)
    if not rep.valid:
        raise TranslationError(f"invalid {kind} proof: {rep.reason}")


# --------------------------------------------------------------------------
# xFrege <-> xSKSg


def xfrege_to_xsksg(p: ExtendedProof) -> ExtendedProof:
    """Extension lines are read as premisses and the whole proof goes
    through frege_to_sksg; a leading = flattens their conjunction."""
    _require(p, "xFrege")
    exts = p.extensions()
    for name, _ in exts:
        if not name[:1].isupper():
            raise TranslationError(f"extension variable {name} must start upper case")
    cos = frege_to_sksg(p.derivation, treat_as_premiss=("ext",))
    premiss = extension_premiss([(n, f2c(b)) for n, b in exts])
    b = Builder("xSKSg", premiss)
    b.eq(cos.premiss)
    b.steps.extend(cos.steps)
    return ExtendedProof("xSKSg", b.build())


def xsksg_to_xfrege(p: ExtendedProof) -> ExtendedProof:
    """Extension lines, then the conjunction of the clauses (linear in h),
    then the translation of the SKSg derivation."""
    _require(p, "xSKSg")
    d = p.derivation
    exts = p.extensions()
    pb = ProofBuilder()
    clause_lines = []
    for name, body in exts:
        a, beta = FVar(name), c2f(body)
        e = pb.add(ext_line(name, beta))
        c1 = pb.mp(and_l(pb, e), use_lemma(pb, "imp-or", A=a, B=beta))
        c2 = pb.mp(and_r(pb, e), use_lemma(pb, "imp-or", A=beta, B=a))
        first, second = extension_clauses(name, body)
        fix = negation_implication(pb, pb.f(c2), c2f(second))
        if fix is not None:
            c2 = pb.mp(c2, fix)
        assert pb.f(c1) == c2f(first) and pb.f(c2) == c2f(second)
        clause_lines.extend([c1, c2])
    if clause_lines:
        acc = clause_lines[-1]
        for k in reversed(clause_lines[:-1]):
            acc = and_i(pb, k, acc)
        assert pb.f(acc) == c2f(d.premiss)
    body = sksg_to_frege(d.with_system("SKSg"), as_proof=not exts)
    top = pb.include(body, premiss_ok=not exts)
    out = pb.derivation(top, system="xFrege")
    return ExtendedProof("xFrege", out)


# --------------------------------------------------------------------------
# xSKSg -> sSKSg


def xsksg_to_ssksg(p: ExtendedProof) -> ExtendedProof:
    """i↓ on [~g | g], the xSKSg derivation inside [~g | _], then for
    i = h..1 substitute A_i := b_i at the root, which turns the last two
    disjuncts of ~g into copies of (b_i & ~b_i); contract, cut, and drop
    the unit."""
    _require(p, "xSKSg")
    d = p.derivation
    gamma, alpha = d.premiss, d.conclusion
    exts = p.extensions()
    b = Builder("sSKSg", T)
    b.apply("i↓", (), A=dual(gamma))
    b.then(d.with_system("SKSg"), (1,))
    if not exts:
        b.eq(alpha)
        return ExtendedProof("sSKSg", b.build())
    rest = list(dual(gamma).children)
    for name, body in reversed(exts):
        rest = rest[:-2]
        b.sub({name: body})
        x = conj(body, dual(body))
        pair = disj(x, x)
        left = Or(tuple(rest) + (pair,)) if rest else pair
        b.eq(Or((left, alpha)))
        here = (0, len(rest)) if rest else (0,)
        b.apply("c↓", here)
        b.apply("i↑", here)
        if len(rest) > 1:
            b.eq(Or((Or(tuple(rest)), alpha)))
        else:
            b.eq(alpha)
    return ExtendedProof("sSKSg", b.build())


# --------------------------------------------------------------------------
# sSKSg -> sFrege


def _segments(d: CosDerivation):
    """Split at sub steps: [(segment, sub step or None), ...]."""
    out = []
    start, steps = d.premiss, []
    for s in d.steps:
        if s.rule == "sub":
            out.append((CosDerivation("SKSg", start, steps), s))
            start, steps = s.result, []
        else:
            steps.append(s)
    out.append((CosDerivation("SKSg", start, steps), None))
    return out


def ssksg_to_sfrege(p: ExtendedProof) -> ExtendedProof:
    """Translate each SKSg segment and join them with sub lines.  After a
    substitution, ~b (from a negated variable) is turned into the image of
    the dual of b."""
    _require(p, "sSKSg")
    pb = ProofBuilder()
    cur = None
    for seg, sub in _segments(p.derivation):
        part = sksg_to_frege(seg, as_proof=cur is None)
        cur = pb.include(part, premiss_ok=cur is None)
        if sub is None:
            break
        sigma = {v: c2f(g) for v, g in sub.just.substitution.items()}
        cur = pb.add(sub_line(fsubst(pb.f(cur), sigma), cur, sigma))
        fix = negation_implication(pb, pb.f(cur), c2f(sub.result))
        if fix is not None:
            cur = pb.mp(cur, fix)
    return ExtendedProof("sFrege", pb.derivation(cur, system="sFrege"))


# --------------------------------------------------------------------------
# unfolding extensions


def unfold_extension(p: ExtendedProof) -> FregeDerivation:
    """Plain Frege proof: apply A_h := b_h, ..., A_1 := b_1 to every line;
    extension lines become X <=> X and get a direct proof.  Sizes can grow
    exponentially with nested definitions."""
    _require(p, "xFrege")
    sigmas = [{name: body} for name, body in p.extensions()]
    cache: dict = {}

    def tau(f):
        if f not in cache:
            g = f
            for s in reversed(sigmas):
                g = fsubst(g, s)
            cache[f] = g
        return cache[f]

    pb = ProofBuilder()
    where: list[int] = []
    for ln in p.derivation.lines:
        f = tau(ln.formula)
        if ln.rule == "axiom":
            k = pb.add(axiom_line(ln.axiom, fmatch(AXIOMS[ln.axiom], f)))
        elif ln.rule == "mp":
            i, j = ln.refs
            k = pb.mp(where[i - 1], where[j - 1])
        elif ln.rule == "ext":
            x = f.left.left
            ix = identity(pb, x)
            k = and_i(pb, ix, ix)
        else:
            raise TranslationError(f"cannot unfold {ln.rule} lines")
        where.append(k)
    return pb.derivation(where[-1] if where else None)
