"""CoS derivations: checking, metrics, composition and grounding."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .equality import equal_mod_ac
from .formula import (
    Atom, Formula, T, atoms_of, coerce, dual, instantiate, replace_at, size,
    subformula_at, vars_of,
)
from .rules import RULES, Justification, Verdict, _match, instance, system_rules, verify_step
from .semantics import TooManyAtoms, entails, equivalent, symbols


@dataclass(frozen=True)
class Step:
    just: Justification
    result: Formula

    @property
    def rule(self) -> str:
        return self.just.rule


@dataclass
class CosDerivation:
    system: str
    premiss: Formula
    steps: list = field(default_factory=list)

    @property
    def conclusion(self) -> Formula:
        return self.steps[-1].result if self.steps else self.premiss

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def size(self) -> int:
        return size(self.premiss) + sum(size(s.result) for s in self.steps)

    def formulas(self) -> list[Formula]:
        return [self.premiss] + [s.result for s in self.steps]

    def pairs(self):
        prev = self.premiss
        for s in self.steps:
            yield prev, s
            prev = s.result

    def rule_counts(self) -> Counter:
        return Counter(s.rule for s in self.steps)

    def with_system(self, system: str) -> "CosDerivation":
        return CosDerivation(system, self.premiss, list(self.steps))


@dataclass
class Report:
    valid: bool
    system: str
    length: int
    size: int
    premiss: Formula
    conclusion: Formula
    rule_counts: dict
    is_proof: bool
    expanded_length: int
    expanded_size: int
    failed_index: int | None = None
    error: str | None = None
    reason: str = ""

    def as_dict(self) -> dict:
        from .formula import print_formula
        return {
            "valid": self.valid,
            "system": self.system,
            "length": self.length,
            "size": self.size,
            "expanded_length": self.expanded_length,
            "expanded_size": self.expanded_size,
            "premiss": print_formula(self.premiss),
            "conclusion": print_formula(self.conclusion),
            "is_proof": self.is_proof,
            "rule_counts": dict(sorted(self.rule_counts.items())),
            "failed_index": self.failed_index,
            "error": self.error,
            "reason": self.reason,
        }


def check_derivation(d: CosDerivation) -> Report:
    """Check every step.  Macro steps are expanded and their expansion is
    checked too; expanded metrics count the atomic steps."""
    counts: Counter = Counter()
    exp_len = 0
    exp_size = size(d.premiss)
    failed = None
    error = None
    reason = ""
    for i, (prev, step) in enumerate(d.pairs()):
        v = verify_step(d.system, prev, step.result, step.just)
        if v.ok and step.just.macro and step.just.rule not in system_rules(d.system):
            from .macros import expand_step
            try:
                sub = expand_step(prev, step.result, step.just)
            except ValueError as e:
                v = Verdict(False, "scheme-mismatch", f"macro expansion failed: {e}")
            else:
                sub = sub.with_system(d.system)
                inner = check_derivation(sub)
                if not inner.valid:
                    v = Verdict(False, inner.error, f"macro expansion: {inner.reason}")
                else:
                    counts.update(inner.rule_counts)
                    exp_len += inner.length
                    exp_size += inner.size - size(prev)
                    continue
        if not v.ok:
            failed, error, reason = i, v.error, v.detail
            break
        counts[step.rule] += 1
        exp_len += 1
        exp_size += size(step.result)
    return Report(
        valid=failed is None,
        system=d.system,
        length=d.length,
        size=d.size,
        premiss=d.premiss,
        conclusion=d.conclusion,
        rule_counts=dict(counts),
        is_proof=failed is None and equal_mod_ac(d.premiss, T),
        expanded_length=exp_len,
        expanded_size=exp_size,
        failed_index=failed,
        error=error,
        reason=reason,
    )


def is_valid(d: CosDerivation) -> bool:
    return check_derivation(d).valid


# --------------------------------------------------------------------------
# building derivations


class Builder:
    """Incrementally construct a derivation, computing each result from the
    rule instance at a path."""

    def __init__(self, system: str, premiss: "Formula | str"):
        self.system = system
        self.premiss = coerce(premiss)
        self.steps: list[Step] = []

    @property
    def current(self) -> Formula:
        return self.steps[-1].result if self.steps else self.premiss

    def apply(self, rule: str, path: Sequence[int] = (), macro: bool = False,
              **bindings: "Formula | str") -> "Builder":
        """Apply a rule at path; bindings fill scheme variables not fixed by
        the redex (e.g. A for i↓ and w↓)."""
        path = tuple(path)
        r = RULES[rule]
        binds = {k: coerce(v) for k, v in bindings.items()}
        redex = subformula_at(self.current, path)
        env = dict(binds)
        if not _match(r.premiss, redex, env, r.atomic):
            raise ValueError(f"{rule} does not apply to {redex} at {path}")
        _, concl = instance(rule, env)
        result = replace_at(self.current, path, concl)
        if r.atomic:
            just = Justification(rule, path, renaming=env, macro=macro)
        else:
            just = Justification(rule, path, substitution=env, macro=macro)
        self.steps.append(Step(just, result))
        return self

    def step(self, rule: str, path: Sequence[int], result: "Formula | str",
             macro: bool = False) -> "Builder":
        self.steps.append(Step(Justification(rule, tuple(path), macro=macro), coerce(result)))
        return self

    def eq(self, result: "Formula | str") -> "Builder":
        result = coerce(result)
        if result == self.current:
            return self
        # consecutive = steps are merged, = being transitive
        if self.steps and self.steps[-1].rule == "=":
            self.steps.pop()
            if result == self.current:
                return self
        self.steps.append(Step(Justification("="), result))
        return self

    def eq_at(self, path: Sequence[int], sub: "Formula | str") -> "Builder":
        return self.eq(replace_at(self.current, tuple(path), coerce(sub)))

    def sub(self, substitution: Mapping[str, "Formula | str"]) -> "Builder":
        sigma = {k: coerce(v) for k, v in substitution.items()}
        self.steps.append(Step(Justification("sub", (), substitution=sigma),
                               instantiate(self.current, None, sigma)))
        return self

    def then(self, d: CosDerivation, path: Sequence[int] = ()) -> "Builder":
        """Append d, run inside the current formula at path."""
        path = tuple(path)
        here = subformula_at(self.current, path)
        if here != d.premiss:
            raise ValueError(f"derivation premiss {d.premiss} does not match {here}")
        self.steps.extend(embed(d, (self.current, path)).steps)
        return self

    def build(self) -> CosDerivation:
        return CosDerivation(self.system, self.premiss, list(self.steps))


def concat(*ds: CosDerivation, system: str | None = None) -> CosDerivation:
    """Concatenate derivations whose endpoints agree (bridging with = when
    they are only equal modulo =)."""
    first = ds[0]
    b = Builder(system or first.system, first.premiss)
    for d in ds:
        if d.premiss != b.current:
            if not equal_mod_ac(d.premiss, b.current):
                raise ValueError(f"cannot join {b.current} to {d.premiss}")
            b.eq(d.premiss)
        b.steps.extend(d.steps)
    return b.build()


# --------------------------------------------------------------------------
# closure under contexts, renaming and substitution


def _map_just(j: Justification, fn) -> Justification:
    return Justification(
        j.rule, j.path,
        {k: fn(v) for k, v in j.renaming.items()},
        {k: fn(v) for k, v in j.substitution.items()},
        j.macro,
    )


def embed(d: CosDerivation, ctx: tuple) -> CosDerivation:
    """Run d inside the context given as (formula, path); the hole's current
    content is replaced by each formula of d."""
    outer, path = ctx[0], tuple(ctx[1])
    subformula_at(outer, path)
    steps = []
    for s in d.steps:
        j = s.just
        if j.rule == "sub" and path:
            raise ValueError("sub steps cannot be embedded in a context")
        nj = Justification(j.rule, path + tuple(j.path), j.renaming, j.substitution, j.macro)
        steps.append(Step(nj, replace_at(outer, path, s.result)))
    return CosDerivation(d.system, replace_at(outer, path, d.premiss), steps)


def rename_derivation(d: CosDerivation, renaming: Mapping[str, Atom]) -> CosDerivation:
    fn = lambda f: instantiate(f, renaming, None)
    return CosDerivation(
        d.system, fn(d.premiss),
        [Step(_map_just(s.just, fn), fn(s.result)) for s in d.steps],
    )


def substitute_derivation(d: CosDerivation, substitution: Mapping[str, Formula]) -> CosDerivation:
    fn = lambda f: instantiate(f, None, substitution)
    steps = []
    for s in d.steps:
        j = s.just
        if j.rule == "sub":
            # the substituted variables of a sub step are rebound
            raise ValueError("cannot substitute into a derivation with sub steps")
        steps.append(Step(_map_just(j, fn), fn(s.result)))
    return CosDerivation(d.system, fn(d.premiss), steps)


def all_atoms(d: CosDerivation) -> set[str]:
    out: set[str] = set()
    for f in d.formulas():
        out |= atoms_of(f)
    return out


def all_vars(d: CosDerivation) -> set[str]:
    out: set[str] = set()
    for f in d.formulas():
        out |= vars_of(f)
    return out


def fresh_atoms(used: Iterable[str], count: int, prefix: str = "x") -> list[str]:
    used = set(used)
    out = []
    i = 0
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in used:
            out.append(name)
        i += 1
    return out


def ground(d: CosDerivation) -> CosDerivation:
    """Replace every variable by a fresh atom."""
    vs = sorted(all_vars(d))
    if not vs:
        return d
    names = fresh_atoms(all_atoms(d), len(vs))
    return substitute_derivation(d, {v: Atom(n) for v, n in zip(vs, names)})


# --------------------------------------------------------------------------
# semantic oracle


def semantic_check(d: CosDerivation, atom_bound: int = 16) -> bool:
    """Every non-sub step is truth-preserving; = steps are equivalences."""
    syms: set = set()
    for f in d.formulas():
        syms |= symbols(f)
    if len(syms) > atom_bound:
        raise TooManyAtoms(f"{len(syms)} atoms and variables exceed {atom_bound}")
    for prev, s in d.pairs():
        if s.rule == "sub":
            continue
        if s.rule == "=":
            if not equivalent(prev, s.result, atom_bound):
                return False
        elif not entails(prev, s.result, atom_bound):
            return False
    return True


def dual_derivation(d: CosDerivation) -> CosDerivation:
    """Flip d upside down: dual formulae in reverse order, dual rules.

    Bindings are dropped; the checker recovers them from the redexes.
    """
    forms = d.formulas()
    steps = []
    for k in range(len(d.steps) - 1, -1, -1):
        j = d.steps[k].just
        if j.rule == "sub":
            raise ValueError("sub steps have no dual")
        nj = Justification(RULES[j.rule].dual, j.path, macro=j.macro)
        steps.append(Step(nj, dual(forms[k])))
    return CosDerivation(d.system, dual(d.conclusion), steps)
