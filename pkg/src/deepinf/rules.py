"""Inference rules of SKSg/SKS and their subsystems, and single-step checking.

A step is checked against an explicit justification (rule, path, optional
bindings); the checker never searches for rules or positions.  Missing
bindings are recovered by syntactic matching against the rule schemes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .equality import equal_mod_ac
from .formula import (
    And, Atom, Formula, Or, PathError, Unit, Var, dual, instantiate,
    parse_formula, replace_at, subformula_at,
)


@dataclass(frozen=True)
class Rule:
    name: str
    premiss: Formula | None
    conclusion: Formula | None
    analytic: bool
    atomic: bool
    dual: str


def _r(name, prem, concl, analytic, atomic, dual_name):
    p = parse_formula(prem) if prem else None
    c = parse_formula(concl) if concl else None
    return Rule(name, p, c, analytic, atomic, dual_name)


RULES: dict[str, Rule] = {r.name: r for r in [
    _r("i↓", "t", "[A | ~A]", True, False, "i↑"),
    _r("i↑", "(A & ~A)", "f", False, False, "i↓"),
    _r("w↓", "f", "A", True, False, "w↑"),
    _r("w↑", "A", "t", False, False, "w↓"),
    _r("c↓", "[A | A]", "A", True, False, "c↑"),
    _r("c↑", "A", "(A & A)", True, False, "c↓"),
    _r("s", "(A & [B | C])", "[(A & B) | C]", True, False, "s"),
    _r("ai↓", "t", "[a | ~a]", True, True, "ai↑"),
    _r("ai↑", "(a & ~a)", "f", False, True, "ai↓"),
    _r("aw↓", "f", "a", True, True, "aw↑"),
    _r("aw↑", "a", "t", False, True, "aw↓"),
    _r("ac↓", "[a | a]", "a", True, True, "ac↑"),
    _r("ac↑", "a", "(a & a)", True, True, "ac↓"),
    _r("m", "[(A & B) | (C & D)]", "([A | C] & [B | D])", True, False, "m"),
    Rule("=", None, None, True, False, "="),
    Rule("sub", None, None, False, False, "sub"),
]}

ALIASES = {
    "i_down": "i↓", "i_up": "i↑", "w_down": "w↓", "w_up": "w↑",
    "c_down": "c↓", "c_up": "c↑", "ai_down": "ai↓", "ai_up": "ai↑",
    "aw_down": "aw↓", "aw_up": "aw↑", "ac_down": "ac↓", "ac_up": "ac↑",
    "eq": "=",
}

STRUCTURAL = ("i↓", "i↑", "w↓", "w↑", "c↓", "c↑")
# atomic rules a structural macro expands into
MACRO_EXPANSION = {
    "i↓": {"ai↓", "s"}, "i↑": {"ai↑", "s"},
    "w↓": {"aw↓", "s"}, "w↑": {"aw↑", "s"},
    "c↓": {"ac↓", "m"}, "c↑": {"ac↑", "m"},
}


def rule_name(text: str) -> str:
    name = ALIASES.get(text, text)
    if name not in RULES:
        raise ValueError(f"unknown rule {text!r}")
    return name


def rule_catalog() -> list[tuple[str, Formula | None, Formula | None, bool]]:
    """(name, premiss scheme, conclusion scheme, analytic) for every rule."""
    return [(r.name, r.premiss, r.conclusion, r.analytic) for r in RULES.values()]


_KSG = frozenset({"=", "i↓", "w↓", "c↓", "s"})
_KS = frozenset({"=", "ai↓", "aw↓", "ac↓", "s", "m"})

SYSTEMS: dict[str, frozenset] = {
    "KSg": _KSG,
    "SKSg": _KSG | {"i↑", "w↑", "c↑"},
    "KS": _KS,
    "SKS": _KS | {"ai↑", "aw↑", "ac↑"},
    "aKSg": _KSG | {"c↑"},
    "aKS": _KS | {"ac↑"},
    "xSKSg": _KSG | {"i↑", "w↑", "c↑"},
    "sSKSg": _KSG | {"i↑", "w↑", "c↑", "sub"},
    "KSg+i↑": _KSG | {"i↑"},
}


def system_rules(system: str) -> frozenset:
    try:
        return SYSTEMS[system]
    except KeyError:
        raise ValueError(f"unknown system {system!r}") from None


def macro_allowed(system: str, rule: str) -> bool:
    """A structural step may stand for its atomic expansion in this system."""
    rules = system_rules(system)
    return rule in MACRO_EXPANSION and MACRO_EXPANSION[rule] <= rules


@dataclass(frozen=True)
class Justification:
    rule: str
    path: tuple = ()
    renaming: Mapping[str, Atom] = field(default_factory=dict)
    substitution: Mapping[str, Formula] = field(default_factory=dict)
    macro: bool = False

    def __hash__(self):
        return hash((self.rule, self.path, self.macro))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    error: str | None = None  # rule-not-in-system, scheme-mismatch, ...
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


ACCEPT = Verdict(True)


def _match(pat: Formula, tgt: Formula, env: dict, atomic: bool) -> bool:
    """Syntactic matching; pattern variables are Vars (or Atoms if atomic)."""
    if (isinstance(pat, Var) and not atomic) or (isinstance(pat, Atom) and atomic):
        if atomic and not isinstance(tgt, Atom):
            return False
        val = dual(tgt) if pat.negated else tgt
        bound = env.get(pat.name)
        if bound is None:
            env[pat.name] = val
            return True
        return bound == val
    if isinstance(pat, (Or, And)):
        if type(tgt) is not type(pat) or len(tgt.children) != len(pat.children):
            return False
        return all(_match(p, t, env, atomic) for p, t in zip(pat.children, tgt.children))
    return pat == tgt


def _matches(pat: Formula, tgt: Formula, env: dict, atomic: bool):
    """All extensions of env matching pat against tgt, where binary scheme
    nodes may also match their two children swapped."""
    if (isinstance(pat, Var) and not atomic) or (isinstance(pat, Atom) and atomic):
        if atomic and not isinstance(tgt, Atom):
            return
        val = dual(tgt) if pat.negated else tgt
        bound = env.get(pat.name)
        if bound is None:
            yield {**env, pat.name: val}
        elif bound == val:
            yield env
        return
    if isinstance(pat, (Or, And)):
        if type(tgt) is not type(pat) or len(tgt.children) != len(pat.children):
            return
        orders = [tgt.children]
        if len(tgt.children) == 2 and tgt.children[0] != tgt.children[1]:
            orders.append(tgt.children[::-1])
        for kids in orders:
            yield from _matches_all(pat.children, kids, env, atomic)
        return
    if pat == tgt:
        yield env


def _matches_all(pats, tgts, env, atomic):
    if not pats:
        yield env
        return
    for e in _matches(pats[0], tgts[0], env, atomic):
        yield from _matches_all(pats[1:], tgts[1:], e, atomic)


def match_rule(rule: Rule, redex_premiss: Formula, redex_conclusion: Formula,
               bindings: Mapping[str, Formula] | None = None) -> dict | None:
    """Bindings making the rule schemes equal the two redexes, or None.

    Binary nodes of the schemes match up to swapping their children, so a
    rule instance read through its dual is again an instance.
    """
    env = dict(bindings or {})
    if rule.atomic and any(not isinstance(v, Atom) for v in env.values()):
        return None
    for e in _matches(rule.premiss, redex_premiss, env, rule.atomic):
        for e2 in _matches(rule.conclusion, redex_conclusion, e, rule.atomic):
            return e2
    return None


def match_sub(premiss: Formula, conclusion: Formula,
              substitution: Mapping[str, Formula] | None = None) -> dict | None:
    """Substitution σ with conclusion = premiss σ, or None."""
    env = dict(substitution or {})
    if not _match(premiss, conclusion, env, False):
        return None
    return env


def verify_step(system: str, premiss: Formula, conclusion: Formula,
                j: Justification) -> Verdict:
    rules = system_rules(system)
    name = j.rule
    if name not in RULES:
        return Verdict(False, "unknown-rule", name)
    if name not in rules and not (j.macro and macro_allowed(system, name)):
        return Verdict(False, "rule-not-in-system", f"{name} not in {system}")
    if name == "=":
        if equal_mod_ac(premiss, conclusion):
            return ACCEPT
        return Verdict(False, "scheme-mismatch", "formulae are not equal modulo =")
    if name == "sub":
        if tuple(j.path):
            return Verdict(False, "sub-not-at-root", "sub applies only at the root")
        if match_sub(premiss, conclusion, j.substitution) is None:
            return Verdict(False, "scheme-mismatch", "conclusion is not an instance of the premiss")
        return ACCEPT
    rule = RULES[name]
    try:
        redex_p = subformula_at(premiss, j.path)
        redex_c = subformula_at(conclusion, j.path)
    except PathError as e:
        return Verdict(False, "path-out-of-range", str(e))
    if replace_at(conclusion, j.path, redex_p) != premiss:
        return Verdict(False, "context-mismatch", "formulae differ outside the redex")
    bindings = dict(j.renaming) if rule.atomic else dict(j.substitution)
    env = match_rule(rule, redex_p, redex_c, bindings)
    if env is None:
        return Verdict(False, "scheme-mismatch", f"redex does not match {name}")
    if j.macro:
        from .formula import is_ground
        if not (is_ground(redex_p) and is_ground(redex_c)):
            return Verdict(False, "scheme-mismatch", "macro steps must be ground")
    return ACCEPT


def instance(rule: str, bindings: Mapping[str, Formula]) -> tuple[Formula, Formula]:
    """Premiss and conclusion of a rule instance."""
    r = RULES[rule]
    if r.atomic:
        return (instantiate(r.premiss, bindings, None), instantiate(r.conclusion, bindings, None))
    return (instantiate(r.premiss, None, bindings), instantiate(r.conclusion, None, bindings))
