"""Formulae of the calculus of structures.

Formulae are in negation normal form: negation sits only on atoms and
variables.  Disjunctions and conjunctions are n-ary (at least two children)
and are kept exactly as written; flattening is the job of :mod:`deepinf.equality`.

Concrete syntax::

    formula := 't' | 'f' | atom | var | '~' (atom | var)
             | '[' formula ('|' formula)+ ']'
             | '(' formula ('&' formula)+ ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, Union


class FormulaError(ValueError):
    """Raised for malformed formula text or bad paths."""


class ParseError(FormulaError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class PathError(FormulaError):
    """Path does not resolve against the formula."""


@dataclass(frozen=True, slots=True)
class Unit:
    value: bool  # True is t, False is f

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Atom:
    name: str
    negated: bool = False

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    negated: bool = False

    def __str__(self) -> str:
        return print_formula(self)


def _seal(f, tag: str) -> None:
    # hash and size are cached so that large formulae compare and hash fast
    object.__setattr__(f, "_hash", hash((tag, f.children)))
    object.__setattr__(f, "_size", sum(c._size if type(c) in (Or, And) else 1
                                       for c in f.children))


def _same(f, g) -> bool:
    if f is g:
        return True
    if type(f) is not type(g) or f._hash != g._hash:
        return False
    return f.children == g.children


@dataclass(frozen=True, slots=True)
class Or:
    children: tuple
    _hash: int = field(init=False, repr=False, compare=False)
    _size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise FormulaError("a disjunction needs at least two children")
        _seal(self, 'Or')

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return _same(self, other)

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class And:
    children: tuple
    _hash: int = field(init=False, repr=False, compare=False)
    _size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise FormulaError("a conjunction needs at least two children")
        _seal(self, 'And')

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return _same(self, other)

    def __str__(self) -> str:
        return print_formula(self)


Formula = Union[Unit, Atom, Var, Or, And]
Literal = Union[Atom, Var]
Path = tuple  # tuple[int, ...]

T = Unit(True)
F = Unit(False)


def disj(*children: Formula) -> Or:
    return Or(tuple(children))


def conj(*children: Formula) -> And:
    return And(tuple(children))


def atom(name: str, negated: bool = False) -> Atom:
    return Atom(name, negated)


def var(name: str, negated: bool = False) -> Var:
    return Var(name, negated)


def is_compound(f: Formula) -> bool:
    return isinstance(f, (Or, And))


def is_literal(f: Formula) -> bool:
    return isinstance(f, (Atom, Var))


# --------------------------------------------------------------------------
# parsing and printing

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<sym>[\[\]()|&~]))")
_ATOM = re.compile(r"[a-z][a-z0-9_]*\Z")
_VAR = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, self.pos if pos is None else pos, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def ident(self) -> str:
        self.skip()
        m = _TOKEN.match(self.text, self.pos)
        if not m or m.group("ident") is None:
            found = self.peek() or "end of input"
            raise self.error(f"expected identifier, found {found!r}")
        self.pos = m.end()
        return m.group("ident")

    def literal(self, negated: bool) -> Formula:
        start = self.pos
        name = self.ident()
        if not negated and name in ("t", "f"):
            return Unit(name == "t")
        if _ATOM.match(name):
            if name in ("t", "f"):
                raise self.error("units cannot be negated", start)
            return Atom(name, negated)
        if _VAR.match(name):
            return Var(name, negated)
        raise self.error(f"bad identifier {name!r}", start)

    def formula(self) -> Formula:
        ch = self.peek()
        if ch == "~":
            self.pos += 1
            return self.literal(True)
        if ch == "[":
            return self.compound("[", "|", "]", Or)
        if ch == "(":
            return self.compound("(", "&", ")", And)
        if ch == "":
            raise self.error("unexpected end of input")
        if ch.isalpha():
            return self.literal(False)
        raise self.error(f"unexpected character {ch!r}")

    def compound(self, open_: str, sep: str, close: str, cls):
        self.expect(open_)
        children = [self.formula()]
        while self.peek() == sep:
            self.pos += 1
            children.append(self.formula())
        if len(children) < 2:
            raise self.error(f"expected {sep!r}")
        self.expect(close)
        return cls(tuple(children))


def parse_formula(text: str) -> Formula:
    """Parse the concrete syntax into a formula."""
    p = _Parser(text)
    f = p.formula()
    if p.peek():
        raise p.error(f"trailing input {p.peek()!r}")
    return f


def parse_prefix(text: str, pos: int = 0) -> tuple[Formula, int]:
    """Parse one formula starting at pos; return it and the end position."""
    p = _Parser(text)
    p.pos = pos
    f = p.formula()
    return f, p.pos


def print_formula(f: Formula) -> str:
    if isinstance(f, Unit):
        return "t" if f.value else "f"
    if isinstance(f, (Atom, Var)):
        return ("~" if f.negated else "") + f.name
    if isinstance(f, Or):
        return "[" + " | ".join(print_formula(c) for c in f.children) + "]"
    if isinstance(f, And):
        return "(" + " & ".join(print_formula(c) for c in f.children) + ")"
    raise TypeError(f"not a formula: {f!r}")


def coerce(f: "Formula | str") -> Formula:
    return parse_formula(f) if isinstance(f, str) else f


# --------------------------------------------------------------------------
# duality, renaming, substitution


def dual(f: Formula) -> Formula:
    """De Morgan dual: swap connectives and units, flip every literal."""
    if isinstance(f, Unit):
        return Unit(not f.value)
    if isinstance(f, Atom):
        return Atom(f.name, not f.negated)
    if isinstance(f, Var):
        return Var(f.name, not f.negated)
    if isinstance(f, Or):
        return And(tuple(dual(c) for c in f.children))
    return Or(tuple(dual(c) for c in f.children))


Renaming = Mapping[str, Atom]
Substitution = Mapping[str, Formula]


def instantiate(f: Formula, renaming: Renaming | None = None,
                substitution: Substitution | None = None) -> Formula:
    """Apply a renaming of atoms and a substitution of variables at once.

    Negative occurrences receive the dual of the image.
    """
    renaming = renaming or {}
    substitution = substitution or {}
    if not renaming and not substitution:
        return f

    def go(g: Formula) -> Formula:
        if isinstance(g, Unit):
            return g
        if isinstance(g, Atom):
            image = renaming.get(g.name)
            if image is None:
                return g
            return dual(image) if g.negated else image
        if isinstance(g, Var):
            image = substitution.get(g.name)
            if image is None:
                return g
            return dual(image) if g.negated else image
        return type(g)(tuple(go(c) for c in g.children))

    return go(f)


# --------------------------------------------------------------------------
# paths


def subformula_at(f: Formula, path: Sequence[int]) -> Formula:
    g = f
    for depth, i in enumerate(path):
        if not is_compound(g) or not 0 <= i < len(g.children):
            raise PathError(f"path {format_path(path)} leaves the formula at step {depth}")
        g = g.children[i]
    return g


def replace_at(f: Formula, path: Sequence[int], g: Formula) -> Formula:
    if not path:
        return g
    i = path[0]
    if not is_compound(f) or not 0 <= i < len(f.children):
        raise PathError(f"path index {i} out of range")
    kids = list(f.children)
    kids[i] = replace_at(kids[i], path[1:], g)
    return type(f)(tuple(kids))


def format_path(path: Sequence[int]) -> str:
    return ".".join(str(i) for i in path) if path else "."


def parse_path(text: str) -> Path:
    text = text.strip()
    if text in ("", "."):
        return ()
    try:
        out = tuple(int(part) for part in text.split("."))
    except ValueError:
        raise FormulaError(f"bad path {text!r}") from None
    if any(i < 0 for i in out):
        raise FormulaError(f"bad path {text!r}")
    return out


def positions(f: Formula, prefix: Path = ()) -> Iterator[Path]:
    """All paths of f, preorder."""
    yield prefix
    if is_compound(f):
        for i, c in enumerate(f.children):
            yield from positions(c, prefix + (i,))


# --------------------------------------------------------------------------
# metrics


def size(f: Formula) -> int:
    """Number of unit, atom and variable occurrences."""
    if type(f) in (Or, And):
        return f._size
    return 1


def context_size(f: Formula, path: Sequence[int]) -> int:
    """Size of the context obtained by punching a hole at path."""
    return size(f) - size(subformula_at(f, path))


def andor_depth(f: Formula) -> int:
    """Maximal number of switches between conjunction and disjunction along
    a branch of the formula tree.  A single connective has depth 0."""

    def go(g: Formula, parent: type | None) -> int:
        if not is_compound(g):
            return 0
        here = 1 if parent is not None and type(g) is not parent else 0
        return here + max(go(c, type(g)) for c in g.children)

    return go(f, None)


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if is_compound(f):
        out: set[str] = set()
        for c in f.children:
            out |= atoms_of(c)
        return out
    return set()


def vars_of(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if is_compound(f):
        out: set[str] = set()
        for c in f.children:
            out |= vars_of(c)
        return out
    return set()


def is_ground(f: Formula) -> bool:
    return not vars_of(f)


def big_or(items: Sequence[Formula]) -> Formula:
    """Right-nested binary disjunction; a single item is returned as is."""
    if not items:
        return F
    acc = items[-1]
    for g in reversed(items[:-1]):
        acc = Or((g, acc))
    return acc


def big_and(items: Sequence[Formula]) -> Formula:
    if not items:
        return T
    acc = items[-1]
    for g in reversed(items[:-1]):
        acc = And((g, acc))
    return acc


def left_or(items: Sequence[Formula]) -> Formula:
    """Left-nested binary disjunction."""
    if not items:
        return F
    acc = items[0]
    for g in items[1:]:
        acc = Or((acc, g))
    return acc


def left_and(items: Sequence[Formula]) -> Formula:
    if not items:
        return T
    acc = items[0]
    for g in items[1:]:
        acc = And((acc, g))
    return acc
