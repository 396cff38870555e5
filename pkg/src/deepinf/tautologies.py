"""Statman and DT tautology families, and polynomial KS proofs of the
Statman tautologies."""

from __future__ import annotations

from .derivation import Builder, CosDerivation
from .formula import (
    And, Atom, Formula, Or, T, conj, disj, dual, replace_at, size,
    subformula_at,
)
from .semantics import is_tautology  # noqa: F401  (re-exported oracle)


def _c(i: int) -> Atom:
    return Atom(f"c{i}")


def _d(i: int) -> Atom:
    return Atom(f"d{i}")


def statman_alpha(i: int) -> Formula:
    """[~c_i | ~d_i]"""
    return disj(Atom(f"c{i}", True), Atom(f"d{i}", True))


def statman_beta(k: int, n: int) -> Formula:
    """Conjunction of alpha_n, ..., alpha_k, nested to the right."""
    if n < k:
        raise ValueError("beta needs n >= k")
    if n == k:
        return statman_alpha(n)
    return conj(statman_alpha(n), statman_beta(k, n - 1))


def statman_gamma(k: int, n: int) -> Formula:
    return conj(statman_beta(k + 1, n), _c(k))


def statman_delta(k: int, n: int) -> Formula:
    return conj(statman_beta(k + 1, n), _d(k))


def statman(n: int) -> Formula:
    """[~alpha_n | [(gamma_{n-1} & delta_{n-1}) | ... [(gamma_1 & delta_1) | alpha_1]]]"""
    if n < 1:
        raise ValueError("Statman tautologies are indexed from 1")
    acc = statman_alpha(1)
    for k in range(1, n):
        acc = disj(conj(statman_gamma(k, n), statman_delta(k, n)), acc)
    return disj(dual(statman_alpha(n)), acc)


# --------------------------------------------------------------------------
# proofs

# steps charged per macro and per switch: an i↓ or c↓ macro costs six KS
# steps including =, a switch costs one step plus its adjacent =
MACRO_WEIGHTS = {"i↓": 6, "c↓": 6, "s": 2}


def macro_length(d: CosDerivation) -> int:
    """Length with macros charged at their KS cost (= steps absorbed)."""
    total = 0
    for s in d.steps:
        if s.rule == "=":
            continue
        total += MACRO_WEIGHTS.get(s.rule, 1)
    return total


def _conjunct_paths(n: int) -> list[tuple]:
    """Path of each conjunct K_n, ..., K_1 inside the core disjunction."""
    return [(1,) * j + (0,) for j in range(n)]


def _targets(n: int, k_index: int) -> list[tuple]:
    """Relative paths of the two insertion targets in conjunct K_k, right
    side first.  In K_n the targets are c_n, d_n; elsewhere the two copies
    of beta."""
    if k_index == 0:
        return [(1,), (0,)]
    return [(1, 0), (0, 0)]


def _nest_copies(copies: int, x: Formula) -> Formula:
    """[G | core] where G nests `copies` copies of x to the right."""
    return x if copies == 1 else disj(x, _nest_copies(copies - 1, x))


def statman_step(n: int) -> CosDerivation:
    """KS derivation (with i↓ and c↓ macro steps) from S_n to S_{n+1}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    new = statman_alpha(n + 1)
    neg = dual(new)
    core = statman(n)
    b = Builder("KS", core)
    occurrences = []
    for ki, kp in enumerate(_conjunct_paths(n)):
        for tp in _targets(n, ki):
            occurrences.append((kp, tp))
    # phase 1: insert [alpha_{n+1} | ~alpha_{n+1}] next to every target
    for kp, tp in occurrences:
        p = kp + tp
        b.eq_at(p, conj(T, subformula_at(b.current, p)))
        b.apply("i↓", p + (0,), macro=True, A=new)
    # phase 2: per occurrence, regroup its conjunct as (rest & [new | ~new]),
    # switch, and move ~new out to the nest of copies
    state = b.current
    copies = 0
    for kp, tp in occurrences:
        conjunct = subformula_at(state, kp)
        x = subformula_at(conjunct, tp + (1,))
        rest = replace_at(conjunct, tp, x)
        regrouped = replace_at(state, kp, conj(rest, disj(new, neg)))
        if copies:
            b.eq(disj(_nest_copies(copies, neg), regrouped))
            b.apply("s", (1,) + kp)
        else:
            b.eq(regrouped)
            b.apply("s", kp)
        state = replace_at(state, kp + tp, conj(new, x))
        copies += 1
        b.eq(disj(_nest_copies(copies, neg), state))
    # phase 3: contract the 2n copies
    while copies > 1:
        b.apply("c↓", (0,) + (1,) * (copies - 2), macro=True)
        copies -= 1
    return b.build()


def statman_proof(n: int, expand: bool = False) -> CosDerivation:
    """KS proof of S_n: one i↓ macro for S_1, then one statman_step per stage."""
    if n < 1:
        raise ValueError("n must be at least 1")
    b = Builder("KS", T)
    b.apply("i↓", (), macro=True, A=dual(statman_alpha(1)))
    for k in range(1, n):
        b.steps.extend(statman_step(k).steps)
    d = b.build()
    if expand:
        from .macros import expand_macros
        d = expand_macros(d)
    return d


def middle_size(n: int) -> int:
    """Largest formula size in statman_step(n)."""
    return max(size(f) for f in statman_step(n).formulas())


# --------------------------------------------------------------------------
# DT


def _b(i: int, negated: bool = False) -> Atom:
    return Atom(f"b{i}", negated)


def dt_h(n: int, m: int, alpha: Formula) -> Formula:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        beta = _b(m + 1)
        nb = _b(m + 1, True)
        return disj(conj(conj(alpha, beta), beta), conj(nb, nb))
    k = n - 2
    idx = 5 ** (k + 1) + m
    beta = _b(idx)
    nb = _b(idx, True)
    left = conj(dt_h(k + 1, m, conj(alpha, beta)), dt_h(k + 1, 5 ** k + m, beta))
    right = conj(dt_h(k + 1, 2 * 5 ** k + m, nb), dt_h(k + 1, 3 * 5 ** k + m, nb))
    return disj(left, right)


def dt(n: int) -> Formula:
    return dt_h(n, 0, T)
