"""Atomic expansion of the structural rules.

Ground instances of i↓, w↓, c↓ become derivations using ai↓/s, aw↓/s and
ac↓/m; the up-rules are obtained by flipping the expansion of the dual
instance.  n-ary connectives are peeled left to right: the first child is
split off and the rest is treated as one formula.
"""

from __future__ import annotations

from .derivation import Builder, CosDerivation, check_derivation, dual_derivation, embed
from .formula import (
    And, Atom, F, Formula, Or, T, Unit, Var, conj, disj, dual, is_ground,
    replace_at, subformula_at,
)
from .rules import RULES, STRUCTURAL, Justification, match_rule


def _split(f: Formula) -> tuple[Formula, Formula]:
    """First child and the remaining children as a single formula."""
    kids = f.children
    rest = kids[1] if len(kids) == 2 else type(f)(kids[1:])
    return kids[0], rest


def _require_ground(alpha: Formula) -> None:
    if not is_ground(alpha):
        raise ValueError(f"expansion needs a ground formula, got {alpha}")


def interaction_down(alpha: Formula) -> CosDerivation:
    """t to [alpha | ~alpha] in {ai↓, s}."""
    _require_ground(alpha)
    target = disj(alpha, dual(alpha))
    b = Builder("KS", T)
    if isinstance(alpha, Unit):
        return b.eq(target).build()
    if isinstance(alpha, Atom):
        return b.apply("ai↓", (), a=alpha).build()
    if isinstance(alpha, And):
        # expand for the dual disjunction, then swap the two sides
        d = interaction_down(dual(alpha))
        b.steps.extend(d.steps)
        return b.eq(target).build()
    beta, gamma = _split(alpha)
    nb, ng = dual(beta), dual(gamma)
    b.then(interaction_down(gamma))                     # [g | ~g]
    b.eq(disj(gamma, conj(ng, T)))                      # [g | (~g & t)]
    b.then(interaction_down(nb), (1, 1))                # [g | (~g & [~b | b])]
    b.apply("s", (1,))                                  # [g | [(~g & ~b) | b]]
    return b.eq(target).build()


def interaction_up(alpha: Formula) -> CosDerivation:
    """(alpha & ~alpha) to f in {ai↑, s}."""
    d = dual_derivation(interaction_down(dual(alpha)))
    return d.with_system("SKS")


def weakening_down(alpha: Formula) -> CosDerivation:
    """f to alpha in {aw↓, s}."""
    _require_ground(alpha)
    b = Builder("KS", F)
    if alpha == F:
        return b.build()
    if alpha == T:
        b.eq(conj(F, disj(F, T)))
        b.apply("s")
        return b.eq(T).build()
    if isinstance(alpha, Atom):
        return b.apply("aw↓", (), a=alpha).build()
    beta, gamma = _split(alpha)
    if isinstance(alpha, Or):
        b.then(weakening_down(gamma))
        b.eq(disj(F, gamma))
        b.then(weakening_down(beta), (0,))
    else:
        b.eq(conj(F, F))
        b.then(weakening_down(gamma), (1,))
        b.then(weakening_down(beta), (0,))
    return b.eq(alpha).build()


def weakening_up(alpha: Formula) -> CosDerivation:
    """alpha to t in {aw↑, s}."""
    return dual_derivation(weakening_down(dual(alpha))).with_system("SKS")


def contraction_down(alpha: Formula) -> CosDerivation:
    """[alpha | alpha] to alpha in {ac↓, m}."""
    _require_ground(alpha)
    b = Builder("KS", disj(alpha, alpha))
    if isinstance(alpha, Unit):
        return b.eq(alpha).build()
    if isinstance(alpha, Atom):
        return b.apply("ac↓", (), a=alpha).build()
    beta, gamma = _split(alpha)
    if isinstance(alpha, Or):
        b.eq(disj(disj(beta, beta), disj(gamma, gamma)))
        b.then(contraction_down(beta), (0,))
        b.then(contraction_down(gamma), (1,))
    else:
        pair = conj(beta, gamma)
        b.eq(disj(pair, pair))
        b.apply("m")                                    # ([b | b] & [g | g])
        b.then(contraction_down(beta), (0,))
        b.then(contraction_down(gamma), (1,))
    return b.eq(alpha).build()


def contraction_up(alpha: Formula) -> CosDerivation:
    """alpha to (alpha & alpha) in {ac↑, m}."""
    return dual_derivation(contraction_down(dual(alpha))).with_system("SKS")


def _principal(rule: str, redex_premiss: Formula, redex_conclusion: Formula) -> Formula:
    env = match_rule(RULES[rule], redex_premiss, redex_conclusion)
    if env is None:
        raise ValueError(f"redex does not match {rule}")
    return env["A"]


_EXPANDERS = {
    "i↓": interaction_down, "i↑": interaction_up,
    "w↓": weakening_down, "w↑": weakening_up,
    "c↓": contraction_down, "c↑": contraction_up,
}


def expand_redex(rule: str, redex_premiss: Formula, redex_conclusion: Formula) -> CosDerivation:
    """Atomic derivation between the two redexes of a structural instance."""
    if rule not in _EXPANDERS:
        raise ValueError(f"{rule} is not a structural rule")
    alpha = _principal(rule, redex_premiss, redex_conclusion)
    d = _EXPANDERS[rule](alpha)
    # the rule may have matched with children swapped; bridge by =
    b = Builder(d.system, redex_premiss)
    if d.premiss != redex_premiss:
        b.eq(d.premiss)
    b.steps.extend(d.steps)
    b.eq(redex_conclusion)
    return b.build()


def expand_structural(rule: str, premiss: Formula, conclusion: Formula,
                      path=()) -> CosDerivation:
    """Expand one structural step at path into atomic rules."""
    path = tuple(path)
    inner = expand_redex(rule, subformula_at(premiss, path), subformula_at(conclusion, path))
    if replace_at(conclusion, path, subformula_at(premiss, path)) != premiss:
        raise ValueError("formulae differ outside the redex")
    system = "KS" if rule.endswith("↓") else "SKS"
    return embed(inner, (premiss, path)).with_system(system)


def expand_step(premiss: Formula, conclusion: Formula, j: Justification) -> CosDerivation:
    return expand_structural(j.rule, premiss, conclusion, j.path)


# --------------------------------------------------------------------------
# up-rules inside KSg ∪ {i↑}


def derive_co_rules(rule: str, premiss: Formula, conclusion: Formula, path=()) -> CosDerivation:
    """w↑ or c↑ step rebuilt from down-rules plus i↑."""
    path = tuple(path)
    redex_p = subformula_at(premiss, path)
    redex_c = subformula_at(conclusion, path)
    a = _principal(rule, redex_p, redex_c)
    na = dual(a)
    b = Builder("KSg+i↑", redex_p)
    if rule == "w↑":
        b.eq(conj(a, disj(F, T)))                       # (A & [f | t])
        b.apply("s")                                    # [(A & f) | t]
        b.apply("w↓", (0, 1), A=na)                     # [(A & ~A) | t]
        b.apply("i↑", (0,))                             # [f | t]
        b.eq(T)
    elif rule == "c↑":
        b.eq(conj(a, T))                                # (A & t)
        b.apply("i↓", (1,), A=disj(na, na))             # (A & [[~A | ~A] | (A & A)])
        b.apply("s")                                    # [(A & [~A | ~A]) | (A & A)]
        b.apply("c↓", (0, 1))                           # [(A & ~A) | (A & A)]
        b.apply("i↑", (0,))                             # [f | (A & A)]
        b.eq(conj(a, a))
    else:
        raise ValueError(f"{rule} is not w↑ or c↑")
    b.eq(redex_c)
    return embed(b.build(), (premiss, path))


# --------------------------------------------------------------------------
# whole derivations


def sksg_to_sks(d: CosDerivation) -> CosDerivation:
    """Replace every structural step of a ground SKSg derivation by its
    atomic expansion.  KSg input gives a KS derivation."""
    report = check_derivation(d)
    if not report.valid:
        raise ValueError(f"invalid input derivation at step {report.failed_index}: {report.reason}")
    b = Builder("SKS", d.premiss)
    for prev, step in d.pairs():
        rule = step.rule
        if rule in STRUCTURAL:
            exp = expand_structural(rule, prev, step.result, step.just.path)
            b.steps.extend(exp.steps)
        elif rule in ("=", "s", "m") or RULES[rule].atomic:
            if not is_ground(step.result) and rule != "=":
                raise ValueError("sksg_to_sks needs a ground derivation; ground it first")
            b.steps.append(step)
        else:
            raise ValueError(f"cannot translate rule {rule}")
    for f in [d.premiss] + [s.result for s in d.steps]:
        if not is_ground(f):
            raise ValueError("sksg_to_sks needs a ground derivation; ground it first")
    out = b.build()
    used = {s.rule for s in out.steps}
    from .rules import SYSTEMS
    out.system = "KS" if used <= SYSTEMS["KS"] else "SKS"
    return out


def expand_macros(d: CosDerivation) -> CosDerivation:
    """Replace every macro-tagged step by its atomic expansion."""
    b = Builder(d.system, d.premiss)
    for prev, step in d.pairs():
        if step.just.macro:
            b.steps.extend(expand_step(prev, step.result, step.just).steps)
        else:
            b.steps.append(step)
    return b.build()
