"""The equality relation on formulae: associativity, commutativity and the
four unit equations, closed under contexts.

Two formulae are equal iff their canonical forms coincide.  The canonical
form flattens nested connectives of the same kind, applies the unit
equations and sorts children under a fixed total order.
"""

from __future__ import annotations

from functools import lru_cache

from .formula import And, Atom, F, Formula, Or, T, Unit, Var


@lru_cache(maxsize=1 << 16)
def order_key(f: Formula) -> tuple:
    """Total order: f < t < atoms < variables < conjunctions < disjunctions.

    Literals compare by name, positive before negated.  Compounds compare
    lexicographically by their children's keys.
    """
    if isinstance(f, Unit):
        return (1,) if f.value else (0,)
    if isinstance(f, Atom):
        return (2, f.name, f.negated)
    if isinstance(f, Var):
        return (3, f.name, f.negated)
    tag = 4 if isinstance(f, And) else 5
    return (tag, tuple(order_key(c) for c in f.children))


@lru_cache(maxsize=1 << 16)
def canonicalize(f: Formula) -> Formula:
    if not isinstance(f, (Or, And)):
        return f
    cls = type(f)
    neutral = F if cls is Or else T      # [a | f] = a, (a & t) = a
    absorbing = T if cls is Or else F    # [t | t] = t, (f & f) = f
    flat: list[Formula] = []
    for c in f.children:
        c = canonicalize(c)
        if type(c) is cls:
            flat.extend(c.children)
        else:
            flat.append(c)
    kids = [c for c in flat if c != neutral]
    if not kids:
        return neutral
    # several copies of the self-idempotent unit collapse to one
    n_abs = sum(1 for c in kids if c == absorbing)
    if n_abs > 1:
        kids = [c for c in kids if c != absorbing] + [absorbing]
    if len(kids) == 1:
        return kids[0]
    kids.sort(key=order_key)
    return cls(tuple(kids))


def equal_mod_ac(f: Formula, g: Formula) -> bool:
    return f == g or canonicalize(f) == canonicalize(g)
