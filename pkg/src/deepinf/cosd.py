"""Text format for CoS derivations (``.cosd``).

::

    format cosd 1
    system KS
    premiss t
    step ai↓ @ . bind a=b => [b | ~b]
    step i↓ @ 1.0 macro => ...
    step = => ...
    step sub {A:=(b & c)} => ...

Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import re

from .derivation import CosDerivation, Step
from .formula import (
    Atom, Formula, FormulaError, ParseError, format_path, parse_formula,
    parse_path, parse_prefix, print_formula,
)
from .rules import RULES, SYSTEMS, Justification, rule_name

FORMAT_VERSION = 1


class CosdError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _bindings_text(j: Justification, sub: bool) -> str:
    items = sorted({**j.renaming, **j.substitution}.items())
    if not items:
        return "{}" if sub else ""
    if sub:
        return "{" + ", ".join(f"{k}:={print_formula(v)}" for k, v in items) + "}"
    return "bind " + " ".join(f"{k}={print_formula(v)}" for k, v in items)


def dumps(d: CosDerivation) -> str:
    lines = [f"format cosd {FORMAT_VERSION}", f"system {d.system}",
             f"premiss {print_formula(d.premiss)}"]
    for s in d.steps:
        j = s.just
        concl = print_formula(s.result)
        if j.rule == "=":
            lines.append(f"step = => {concl}")
        elif j.rule == "sub":
            lines.append(f"step sub {_bindings_text(j, True)} => {concl}")
        else:
            parts = ["step", j.rule, "@", format_path(j.path)]
            if j.macro:
                parts.append("macro")
            b = _bindings_text(j, False)
            if b:
                parts.append(b)
            parts += ["=>", concl]
            lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


_WS = re.compile(r"\s*")
_NAME = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)")


def _parse_step(text: str, lineno: int) -> tuple[Justification, Formula]:
    try:
        head, concl_text = text.rsplit("=>", 1)
    except ValueError:
        raise CosdError("step without '=>'", lineno) from None
    try:
        conclusion = parse_formula(concl_text)
    except ParseError as e:
        raise CosdError(f"bad formula: {e}", lineno) from None
    head = head.strip()
    parts = head.split(None, 1)
    if not parts:
        raise CosdError("missing rule", lineno)
    try:
        rule = rule_name(parts[0])
    except ValueError as e:
        raise CosdError(str(e), lineno) from None
    rest = parts[1] if len(parts) > 1 else ""
    if rule == "=":
        if rest.strip():
            raise CosdError("= steps take no arguments", lineno)
        return Justification("="), conclusion
    if rule == "sub":
        return Justification("sub", (), substitution=_parse_braced(rest, lineno)), conclusion
    m = re.match(r"@\s*(\S*)\s*", rest)
    if not m:
        raise CosdError("expected '@ <path>'", lineno)
    try:
        path = parse_path(m.group(1))
    except FormulaError as e:
        raise CosdError(str(e), lineno) from None
    rest = rest[m.end():]
    macro = False
    if rest.startswith("macro"):
        macro = True
        rest = rest[len("macro"):].lstrip()
    binds: dict[str, Formula] = {}
    if rest.startswith("bind"):
        rest = rest[len("bind"):]
        pos = 0
        while True:
            pos = _WS.match(rest, pos).end()
            if pos >= len(rest):
                break
            if rest.startswith("bind", pos):
                pos += 4
                continue
            nm = _NAME.match(rest, pos)
            if not nm:
                raise CosdError("bad binding", lineno)
            pos = _WS.match(rest, nm.end()).end()
            if pos >= len(rest) or rest[pos] != "=":
                raise CosdError("expected '=' in binding", lineno)
            try:
                value, pos = parse_prefix(rest, pos + 1)
            except ParseError as e:
                raise CosdError(f"bad binding: {e}", lineno) from None
            binds[nm.group(1)] = value
    elif rest.strip():
        raise CosdError(f"unexpected {rest.strip()!r}", lineno)
    if RULES[rule].atomic:
        if any(not isinstance(v, Atom) for v in binds.values()):
            raise CosdError("atomic rules bind atoms only", lineno)
        return Justification(rule, path, renaming=binds, macro=macro), conclusion
    return Justification(rule, path, substitution=binds, macro=macro), conclusion


def _parse_braced(text: str, lineno: int) -> dict[str, Formula]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise CosdError("expected '{A:=...}'", lineno)
    body = text[1:-1]
    out: dict[str, Formula] = {}
    pos = 0
    while True:
        pos = _WS.match(body, pos).end()
        if pos >= len(body):
            break
        nm = _NAME.match(body, pos)
        if not nm:
            raise CosdError("bad substitution", lineno)
        pos = _WS.match(body, nm.end()).end()
        if not body.startswith(":=", pos):
            raise CosdError("expected ':='", lineno)
        try:
            value, pos = parse_prefix(body, pos + 2)
        except ParseError as e:
            raise CosdError(f"bad substitution: {e}", lineno) from None
        out[nm.group(1)] = value
        pos = _WS.match(body, pos).end()
        if pos < len(body):
            if body[pos] != ",":
                raise CosdError("expected ','", lineno)
            pos += 1
    return out


def loads(text: str) -> CosDerivation:
    system = None
    premiss = None
    steps: list[Step] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "format":
            fmt = rest.split()
            if len(fmt) != 2 or fmt[0] != "cosd" or fmt[1] != str(FORMAT_VERSION):
                raise CosdError(f"unsupported format {rest!r}", lineno)
        elif key == "system":
            system = rest.strip()
            if system not in SYSTEMS:
                raise CosdError(f"unknown system {system!r}", lineno)
        elif key == "premiss":
            try:
                premiss = parse_formula(rest)
            except ParseError as e:
                raise CosdError(f"bad formula: {e}", lineno) from None
        elif key == "step":
            if premiss is None:
                raise CosdError("step before premiss", lineno)
            j, f = _parse_step(rest, lineno)
            steps.append(Step(j, f))
        else:
            raise CosdError(f"unknown directive {key!r}", lineno)
    if system is None:
        raise CosdError("missing 'system' header")
    if premiss is None:
        raise CosdError("missing 'premiss' line")
    return CosDerivation(system, premiss, steps)


def load(path) -> CosDerivation:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(d: CosDerivation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(d))
