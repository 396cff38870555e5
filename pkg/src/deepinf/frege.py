"""Frege formulae, the seventeen axiom schemes plus modus ponens, the
checker and the ``.frg`` text format.

Lines are numbered from 1.  Justifications::

    premiss
    axiom F<k> {A:=<formula>, ...}
    mp <i> <j>          line i is X, line j is X -> Y, this line is Y
    ext {A := <formula>}            (xFrege only)
    sub <i> {A:=<formula>, ...}     (sFrege only)
"""

from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union


class FregeParseError(ValueError):
    def __init__(self, message: str, position: int = 0):
        self.position = position
        super().__init__(f"{message} at position {position}")


# --------------------------------------------------------------------------
# formulae


@dataclass(frozen=True, slots=True)
class FConst:
    value: bool


@dataclass(frozen=True, slots=True)
class FVar:
    name: str


@dataclass(frozen=True, slots=True)
class Not:
    arg: "FFormula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("Not", self.arg)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not Not or other._hash != self._hash:
            return False
        return self.arg == other.arg


@dataclass(frozen=True, slots=True)
class FOr:
    left: "FFormula"
    right: "FFormula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(('FOr', self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not type(self) or other._hash != self._hash:
            return False
        return self.left == other.left and self.right == other.right


@dataclass(frozen=True, slots=True)
class FAnd:
    left: "FFormula"
    right: "FFormula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(('FAnd', self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not type(self) or other._hash != self._hash:
            return False
        return self.left == other.left and self.right == other.right


@dataclass(frozen=True, slots=True)
class Imp:
    left: "FFormula"
    right: "FFormula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(('Imp', self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not type(self) or other._hash != self._hash:
            return False
        return self.left == other.left and self.right == other.right


FFormula = Union[FConst, FVar, Not, FOr, FAnd, Imp]
FT = FConst(True)
FF = FConst(False)
BINARY = (FOr, FAnd, Imp)


def iff(a: FFormula, b: FFormula) -> FAnd:
    """A <=> B, short for ((A -> B) & (B -> A))."""
    return FAnd(Imp(a, b), Imp(b, a))


@lru_cache(maxsize=1 << 18)
def fsize(f: FFormula) -> int:
    """Occurrences of variables and units."""
    if isinstance(f, (FConst, FVar)):
        return 1
    if isinstance(f, Not):
        return fsize(f.arg)
    return fsize(f.left) + fsize(f.right)


@lru_cache(maxsize=1 << 18)
def fvars(f: FFormula) -> frozenset[str]:
    if isinstance(f, FVar):
        return frozenset((f.name,))
    if isinstance(f, FConst):
        return frozenset()
    if isinstance(f, Not):
        return fvars(f.arg)
    return fvars(f.left) | fvars(f.right)


def fsubst(f: FFormula, sigma: Mapping[str, FFormula], memo: dict | None = None) -> FFormula:
    """Simultaneous substitution of formulae for variables.  Pass the same
    memo dict to share work across calls with one sigma."""
    if not sigma:
        return f
    if memo is None:
        memo = {}

    def go(g):
        if isinstance(g, FVar):
            return sigma.get(g.name, g)
        if isinstance(g, FConst):
            return g
        r = memo.get(g)
        if r is None:
            r = Not(go(g.arg)) if isinstance(g, Not) else type(g)(go(g.left), go(g.right))
            memo[g] = r
        return r

    return go(f)


def fsub_at(f: FFormula, path: Sequence[int]) -> FFormula:
    for i in path:
        if isinstance(f, Not) and i == 0:
            f = f.arg
        elif isinstance(f, BINARY) and i in (0, 1):
            f = f.right if i else f.left
        else:
            raise ValueError(f"path {tuple(path)} leaves the formula")
    return f


def freplace_at(f: FFormula, path: Sequence[int], g: FFormula) -> FFormula:
    if not path:
        return g
    i, rest = path[0], path[1:]
    if isinstance(f, Not) and i == 0:
        return Not(freplace_at(f.arg, rest, g))
    if isinstance(f, BINARY) and i in (0, 1):
        if i == 0:
            return type(f)(freplace_at(f.left, rest, g), f.right)
        return type(f)(f.left, freplace_at(f.right, rest, g))
    raise ValueError(f"path {tuple(path)} leaves the formula")


# --------------------------------------------------------------------------
# text syntax

_TOK = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<sym>->|[\[\]()|&~]))")


class _P:
    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def peek(self):
        m = _TOK.match(self.text, self.pos)
        if not m:
            return None, None
        return (m.group("ident"), m.group("sym")), m

    def take(self):
        tok, m = self.peek()
        if tok is None:
            rest = self.text[self.pos:].strip()
            if rest:
                raise FregeParseError(f"unexpected {rest[0]!r}", self.pos)
            raise FregeParseError("unexpected end of input", len(self.text))
        self.pos = m.end()
        return tok

    def at(self, sym: str) -> bool:
        tok, _ = self.peek()
        return tok is not None and tok[1] == sym

    def imp(self):
        left = self.disj()
        if self.at("->"):
            self.take()
            return Imp(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.at("|"):
            self.take()
            left = FOr(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.at("&"):
            self.take()
            left = FAnd(left, self.unary())
        return left

    def unary(self):
        start = self.pos
        ident, sym = self.take()
        if sym == "~":
            return Not(self.unary())
        if sym in ("(", "["):
            inner = self.imp()
            close = ")" if sym == "(" else "]"
            if not self.at(close):
                raise FregeParseError(f"expected {close!r}", self.pos)
            self.take()
            return inner
        if ident is not None:
            if ident == "t":
                return FT
            if ident == "f":
                return FF
            return FVar(ident)
        raise FregeParseError(f"unexpected {sym!r}", start)


def parse_frege(text: str) -> FFormula:
    p = _P(text)
    f = p.imp()
    if p.text[p.pos:].strip():
        raise FregeParseError("trailing input", p.pos)
    return f


def parse_frege_prefix(text: str, pos: int = 0) -> tuple[FFormula, int]:
    p = _P(text, pos)
    return p.imp(), p.pos


def print_frege(f: FFormula) -> str:
    if isinstance(f, FConst):
        return "t" if f.value else "f"
    if isinstance(f, FVar):
        return f.name
    if isinstance(f, Not):
        return "~" + print_frege(f.arg)
    op = {FOr: "|", FAnd: "&", Imp: "->"}[type(f)]
    return f"({print_frege(f.left)} {op} {print_frege(f.right)})"


def fcoerce(f: "FFormula | str") -> FFormula:
    return parse_frege(f) if isinstance(f, str) else f


# --------------------------------------------------------------------------
# axioms

_AXIOM_TEXT = {
    1: "A -> (B -> (A & B))",
    2: "(A & B) -> A",
    3: "(A & B) -> B",
    4: "A -> (A | B)",
    5: "B -> (A | B)",
    6: "~~A -> A",
    7: "A -> ~~A",
    8: "A -> (B -> A)",
    9: "~A -> (A -> B)",
    10: "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
    11: "(A -> C) -> ((B -> C) -> ((A | B) -> C))",
    12: "(A -> (B -> C)) -> (B -> (A -> C))",
    13: "(A -> B) -> (~B -> ~A)",
    14: "f -> (A & ~A)",
    15: "(A & ~A) -> f",
    16: "t -> (A | ~A)",
    17: "(A | ~A) -> t",
}
AXIOMS: dict[int, FFormula] = {k: parse_frege(v) for k, v in _AXIOM_TEXT.items()}
SCHEME_VARS = ("A", "B", "C")


def fmatch(pattern: FFormula, target: FFormula, env: dict | None = None) -> dict | None:
    """Bind pattern variables so that the pattern becomes target."""
    env = {} if env is None else env
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, FVar):
            bound = env.get(p.name)
            if bound is None:
                env[p.name] = t
            elif bound != t:
                return None
        elif isinstance(p, FConst):
            if p != t:
                return None
        elif type(p) is not type(t):
            return None
        elif isinstance(p, Not):
            stack.append((p.arg, t.arg))
        else:
            stack.append((p.left, t.left))
            stack.append((p.right, t.right))
    return env


def axiom_instance(k: int, sigma: Mapping[str, FFormula]) -> FFormula:
    return fsubst(AXIOMS[k], {v: sigma.get(v, FVar(v)) for v in SCHEME_VARS})


# --------------------------------------------------------------------------
# derivations


@dataclass(frozen=True)
class Line:
    formula: FFormula
    rule: str                                   # premiss axiom mp ext sub
    axiom: int | None = None
    refs: tuple = ()
    subst: tuple = ()                           # sorted (name, formula) pairs

    @property
    def sigma(self) -> dict:
        return dict(self.subst)


def _pairs(sigma: Mapping[str, FFormula] | None) -> tuple:
    return tuple(sorted((sigma or {}).items()))


def premiss_line(f: FFormula) -> Line:
    return Line(f, "premiss")


def axiom_line(k: int, sigma: Mapping[str, FFormula] | None = None) -> Line:
    sigma = dict(sigma or {})
    return Line(axiom_instance(k, sigma), "axiom", k, (), _pairs(sigma))


def mp_line(f: FFormula, i: int, j: int) -> Line:
    return Line(f, "mp", None, (i, j))


def ext_line(name: str, body: FFormula) -> Line:
    return Line(iff(FVar(name), body), "ext", None, (), ((name, body),))


def sub_line(f: FFormula, i: int, sigma: Mapping[str, FFormula]) -> Line:
    return Line(f, "sub", None, (i,), _pairs(sigma))


@dataclass
class FregeDerivation:
    lines: list = field(default_factory=list)
    system: str = "Frege"

    @property
    def conclusion(self) -> FFormula | None:
        return self.lines[-1].formula if self.lines else None

    @property
    def premisses(self) -> list:
        return [ln.formula for ln in self.lines if ln.rule == "premiss"]

    @property
    def length(self) -> int:
        return len(self.lines)

    @property
    def size(self) -> int:
        return sum(fsize(ln.formula) for ln in self.lines)

    def formulas(self) -> list:
        return [ln.formula for ln in self.lines]


@dataclass
class FregeReport:
    valid: bool
    system: str
    length: int
    size: int
    premisses: list
    conclusion: FFormula | None
    is_proof: bool
    failed_line: int | None = None
    error: str | None = None
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "system": self.system,
            "length": self.length,
            "size": self.size,
            "premisses": [print_frege(p) for p in self.premisses],
            "conclusion": None if self.conclusion is None else print_frege(self.conclusion),
            "is_proof": self.is_proof,
            "failed_line": self.failed_line,
            "error": self.error,
            "reason": self.reason,
        }


SYSTEM_RULES = {
    "Frege": {"premiss", "axiom", "mp"},
    "xFrege": {"premiss", "axiom", "mp", "ext"},
    "sFrege": {"premiss", "axiom", "mp", "sub"},
}


def _check_line(k: int, ln: Line, forms: list, allowed: set) -> tuple[str, str] | None:
    if ln.rule not in allowed:
        return "rule-not-in-system", f"{ln.rule} lines are not allowed"
    if ln.rule == "premiss":
        return None
    if ln.rule == "axiom":
        if ln.axiom not in AXIOMS:
            return "unknown-axiom", f"no axiom F{ln.axiom}"
        env = fmatch(AXIOMS[ln.axiom], ln.formula)
        if env is None:
            return "not-an-instance", f"not an instance of F{ln.axiom}"
        given = ln.sigma
        for v, g in given.items():
            if v in env and env[v] != g:
                return "not-an-instance", f"substitution for {v} disagrees with the formula"
        return None
    if ln.rule == "mp":
        if len(ln.refs) != 2:
            return "bad-reference", "mp cites two lines"
        i, j = ln.refs
        for r in (i, j):
            if not 1 <= r < k:
                return "bad-reference", f"line {r} is not an earlier line"
        a, ab = forms[i - 1], forms[j - 1]
        if not (isinstance(ab, Imp) and ab.left == a and ab.right == ln.formula):
            return "mp-mismatch", f"lines {i} and {j} do not give this line by modus ponens"
        return None
    if ln.rule == "ext":
        (name, body), = ln.subst
        if ln.formula != iff(FVar(name), body):
            return "ext-mismatch", "extension line is not A <=> body"
        return None
    if ln.rule == "sub":
        if len(ln.refs) != 1 or not 1 <= ln.refs[0] < k:
            return "bad-reference", "sub cites one earlier line"
        if fsubst(forms[ln.refs[0] - 1], ln.sigma) != ln.formula:
            return "sub-mismatch", "line is not the substitution instance"
        return None
    return "unknown-rule", f"unknown justification {ln.rule}"


def check_frege(d: FregeDerivation, system: str | None = None) -> FregeReport:
    system = system or d.system
    allowed = SYSTEM_RULES[system]
    forms = d.formulas()
    failed = error = None
    reason = ""
    for k, ln in enumerate(d.lines, 1):
        bad = _check_line(k, ln, forms, allowed)
        if bad:
            failed, (error, reason) = k, bad
            break
    prem = d.premisses
    return FregeReport(
        valid=failed is None,
        system=system,
        length=d.length,
        size=d.size,
        premisses=prem,
        conclusion=d.conclusion,
        is_proof=failed is None and not prem and bool(d.lines),
        failed_line=failed,
        error=error,
        reason=reason,
    )


def is_valid_frege(d: FregeDerivation, system: str | None = None) -> bool:
    return check_frege(d, system).valid


def frege_tautology(f: FFormula, bound: int = 20) -> bool:
    """Truth-table check through the CoS translation."""
    from .frege_bridge import frege_to_cos_formula
    from .semantics import is_tautology
    return is_tautology(frege_to_cos_formula(f), bound)


def frege_semantic_check(d: FregeDerivation, atom_bound: int = 16) -> bool:
    """Every line follows by truth tables from the premiss and extension
    lines; sub lines are exempt (substitution is not truth-preserving)."""
    from .semantics import _columns
    names: set = set()
    for f in d.formulas():
        names |= fvars(f)
    cols, full = _columns(sorted(names), atom_bound)
    memo: dict = {}

    def ev(f):
        v = memo.get(f)
        if v is not None:
            return v
        if isinstance(f, FConst):
            v = full if f.value else 0
        elif isinstance(f, FVar):
            v = cols[f.name]
        elif isinstance(f, Not):
            v = full ^ ev(f.arg)
        elif isinstance(f, FOr):
            v = ev(f.left) | ev(f.right)
        elif isinstance(f, FAnd):
            v = ev(f.left) & ev(f.right)
        else:
            v = (full ^ ev(f.left)) | ev(f.right)
        memo[f] = v
        return v

    hyp = full
    for ln in d.lines:
        if ln.rule in ("premiss", "ext"):
            hyp &= ev(ln.formula)
    for ln in d.lines:
        if ln.rule == "sub":
            continue
        if hyp & ~ev(ln.formula) & full:
            return False
    return True


# --------------------------------------------------------------------------
# .frg format


def _subst_text(pairs: Iterable) -> str:
    return "{" + ", ".join(f"{k}:={print_frege(v)}" for k, v in pairs) + "}"


def dumps(d: FregeDerivation) -> str:
    out = [f"# system {d.system}"]
    for k, ln in enumerate(d.lines, 1):
        if ln.rule == "premiss":
            just = "premiss"
        elif ln.rule == "axiom":
            just = f"axiom F{ln.axiom}" + (" " + _subst_text(ln.subst) if ln.subst else "")
        elif ln.rule == "mp":
            just = f"mp {ln.refs[0]} {ln.refs[1]}"
        elif ln.rule == "ext":
            (name, body), = ln.subst
            just = f"ext {{{name} := {print_frege(body)}}}"
        else:
            just = f"sub {ln.refs[0]} {_subst_text(ln.subst)}"
        out.append(f"{k}: {print_frege(ln.formula)} ; {just}")
    return "\n".join(out) + "\n"


class FrgError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _parse_subst(text: str, lineno: int) -> dict:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise FrgError("expected '{A:=...}'", lineno)
    body = text[1:-1]
    out = {}
    pos = 0
    name_re = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*:=")
    while body[pos:].strip():
        m = name_re.match(body, pos)
        if not m:
            raise FrgError("bad substitution", lineno)
        try:
            val, pos = parse_frege_prefix(body, m.end())
        except FregeParseError as e:
            raise FrgError(f"bad substitution: {e}", lineno) from None
        out[m.group(1)] = val
        rest = body[pos:].lstrip()
        if rest.startswith(","):
            pos = len(body) - len(rest) + 1
        elif rest:
            raise FrgError("expected ','", lineno)
    return out


def loads(text: str, system: str | None = None) -> FregeDerivation:
    lines: list[Line] = []
    found_system = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            m = re.match(r"#\s*system\s+(\S+)", s)
            if m:
                found_system = m.group(1)
            continue
        m = re.match(r"(\d+)\s*:(.*)$", s)
        if not m:
            raise FrgError("expected '<n>: <formula> ; <justification>'", lineno)
        if int(m.group(1)) != len(lines) + 1:
            raise FrgError(f"line number {m.group(1)} out of sequence", lineno)
        body, sep, just = m.group(2).partition(";")
        if not sep:
            raise FrgError("missing ';'", lineno)
        try:
            f = parse_frege(body)
        except FregeParseError as e:
            raise FrgError(f"bad formula: {e}", lineno) from None
        just = just.strip()
        word, _, rest = just.partition(" ")
        if word == "premiss":
            lines.append(premiss_line(f))
        elif word == "axiom":
            am = re.match(r"F(\d+)\s*(.*)$", rest.strip())
            if not am:
                raise FrgError("expected 'axiom F<k>'", lineno)
            sigma = _parse_subst(am.group(2), lineno) if am.group(2).strip() else {}
            lines.append(Line(f, "axiom", int(am.group(1)), (), _pairs(sigma)))
        elif word == "mp":
            nums = rest.split()
            if len(nums) != 2 or not all(n.isdigit() for n in nums):
                raise FrgError("expected 'mp <i> <j>'", lineno)
            lines.append(mp_line(f, int(nums[0]), int(nums[1])))
        elif word == "ext":
            sigma = _parse_subst(rest, lineno)
            if len(sigma) != 1:
                raise FrgError("ext binds exactly one variable", lineno)
            (name, b), = sigma.items()
            lines.append(Line(f, "ext", None, (), ((name, b),)))
        elif word == "sub":
            sm = re.match(r"(\d+)\s*(.*)$", rest.strip())
            if not sm:
                raise FrgError("expected 'sub <i> {...}'", lineno)
            lines.append(sub_line(f, int(sm.group(1)), _parse_subst(sm.group(2), lineno)))
        else:
            raise FrgError(f"unknown justification {word!r}", lineno)
    if system is None:
        system = found_system or _guess_system(lines)
    if system not in SYSTEM_RULES:
        raise FrgError(f"unknown system {system!r}")
    return FregeDerivation(lines, system)


def _guess_system(lines: list) -> str:
    rules = {ln.rule for ln in lines}
    if "ext" in rules:
        return "xFrege"
    if "sub" in rules:
        return "sFrege"
    return "Frege"


def load(path) -> FregeDerivation:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(d: FregeDerivation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(d))
