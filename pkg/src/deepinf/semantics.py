"""Truth-table oracle.

Formulae are evaluated on all assignments at once: each atom or variable
gets an integer whose bits enumerate its column of the truth table.
"""

from __future__ import annotations

from typing import Iterable

from .formula import And, Atom, Formula, Or, Unit, Var, atoms_of, vars_of


class TooManyAtoms(ValueError):
    pass


def symbols(f: Formula) -> set[tuple[str, str]]:
    """Atoms and variables of f, tagged so that atom a and variable A differ."""
    return {("a", n) for n in atoms_of(f)} | {("v", n) for n in vars_of(f)}


def _columns(syms: list, bound: int) -> tuple[dict, int]:
    k = len(syms)
    if k > bound:
        raise TooManyAtoms(f"{k} atoms and variables exceed the bound {bound}")
    rows = 1 << k
    full = (1 << rows) - 1
    cols = {}
    for i, s in enumerate(syms):
        # bit r of the column is bit i of r
        block = (1 << (1 << i)) - 1
        col = block << (1 << i)
        width = 1 << (i + 1)
        while width < rows:
            col |= col << width
            width <<= 1
        cols[s] = col & full
    return cols, full


def _eval(f: Formula, cols: dict, full: int) -> int:
    if isinstance(f, Unit):
        return full if f.value else 0
    if isinstance(f, Atom):
        v = cols[("a", f.name)]
        return full ^ v if f.negated else v
    if isinstance(f, Var):
        v = cols[("v", f.name)]
        return full ^ v if f.negated else v
    if isinstance(f, Or):
        acc = 0
        for c in f.children:
            acc |= _eval(c, cols, full)
        return acc
    acc = full
    for c in f.children:
        acc &= _eval(c, cols, full)
    return acc


def truth_tables(formulas: Iterable[Formula], bound: int = 20) -> list[int]:
    formulas = list(formulas)
    syms: set = set()
    for f in formulas:
        syms |= symbols(f)
    cols, full = _columns(sorted(syms), bound)
    return [_eval(f, cols, full) for f in formulas], full


def is_tautology(f: Formula, bound: int = 20) -> bool:
    (v,), full = truth_tables([f], bound)
    return v == full


def is_satisfiable(f: Formula, bound: int = 20) -> bool:
    (v,), _ = truth_tables([f], bound)
    return v != 0


def entails(premiss: Formula, conclusion: Formula, bound: int = 20) -> bool:
    (p, c), full = truth_tables([premiss, conclusion], bound)
    return p & ~c & full == 0


def equivalent(f: Formula, g: Formula, bound: int = 20) -> bool:
    (p, c), _ = truth_tables([f, g], bound)
    return p == c
