"""Command line entry point.

Exit status: 0 valid / tautology / success, 1 invalid proof or
non-tautology, 2 parse, IO or unsupported request, 3 budget exhausted.
"""

from __future__ import annotations

import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import cosd, frege, gentzen
from .derivation import CosDerivation, check_derivation
from .equality import canonicalize
from .extended import (
    ExtendedProof, check_extended, ssksg_to_sfrege, unfold_extension,
    xfrege_to_xsksg, xsksg_to_ssksg, xsksg_to_xfrege,
)
from .formula import FormulaError, parse_formula, print_formula, size
from .frege_bridge import TranslationError, frege_to_sksg, sksg_to_frege
from .macros import sksg_to_sks
from .semantics import TooManyAtoms, is_tautology

OK, INVALID, USAGE, BUDGET = 0, 1, 2, 3
REPORT_DIR_ENV = "DEEPINF_REPORT_DIR"

# which loader/kind each translation endpoint uses
FORMATS = {
    "gentzen": "gtz", "sksg": "cosd", "sks": "cosd", "frege": "frg",
    "xfrege": "frg", "xsksg": "cosd", "ssksg": "cosd", "sfrege": "frg",
}
TRANSLATIONS = {
    ("gentzen", "sksg"), ("frege", "sksg"), ("sksg", "frege"), ("sksg", "sks"),
    ("xfrege", "xsksg"), ("xsksg", "xfrege"), ("xsksg", "ssksg"),
    ("ssksg", "sfrege"), ("xfrege", "frege"),
}


class Failure(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


# --------------------------------------------------------------------------
# loading and reporting


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise Failure(USAGE, f"cannot read {path}: {e.strerror}")


def _guess_format(path: str, text: str) -> str:
    ext = Path(path).suffix.lower().lstrip(".")
    if ext in ("cosd", "frg", "gtz"):
        return ext
    head = text.lstrip()
    if head.startswith(("format cosd", "system", "premiss")):
        return "cosd"
    if head.startswith("("):
        return "gtz"
    return "frg"


def load_any(path: str, fmt: str | None = None):
    """Parse a proof file; returns (format, object)."""
    text = _read(path)
    if not text.strip():
        raise Failure(USAGE, f"{path}: empty input")
    fmt = fmt or _guess_format(path, text)
    try:
        if fmt == "cosd":
            return fmt, cosd.loads(text)
        if fmt == "frg":
            return fmt, frege.loads(text)
        if fmt == "gtz":
            return fmt, gentzen.loads(text)
    except (ValueError, FormulaError) as e:
        raise Failure(USAGE, f"{path}: {e}")
    raise Failure(USAGE, f"unknown format {fmt!r}")


def check_any(obj) -> dict:
    """Check a loaded object with the matching checker; returns a report dict."""
    if isinstance(obj, gentzen.GNode):
        return {"format": "gentzen", **gentzen.check_gentzen(obj).as_dict()}
    system = obj.system
    if system in ("xFrege", "sFrege", "xSKSg", "sSKSg"):
        return {"format": "extended", **check_extended(ExtendedProof(system, obj)).as_dict()}
    if isinstance(obj, frege.FregeDerivation):
        return {"format": "frege", **frege.check_frege(obj).as_dict()}
    return {"format": "cosd", **check_derivation(obj).as_dict()}


def dump_any(obj) -> str:
    if isinstance(obj, gentzen.GNode):
        return gentzen.dumps(obj)
    if isinstance(obj, ExtendedProof):
        obj = obj.derivation
    if isinstance(obj, frege.FregeDerivation):
        return frege.dumps(obj)
    return cosd.dumps(obj)


def metrics(obj) -> dict:
    if isinstance(obj, ExtendedProof):
        obj = obj.derivation
    if isinstance(obj, CosDerivation):
        return {"system": obj.system, "length": obj.length, "size": obj.size,
                "rule_counts": dict(sorted(obj.rule_counts().items()))}
    return {"system": obj.system, "length": obj.length, "size": obj.size}


class Reporter:
    def __init__(self, fmt: str, timings: bool, report_dir: str | None):
        self.fmt = fmt
        self.timings = timings
        self.report_dir = report_dir
        self.t0 = time.perf_counter()

    def emit(self, command: str, data: dict, text: str | None = None) -> None:
        if self.timings:
            data = {**data, "seconds": round(time.perf_counter() - self.t0, 6)}
        if self.fmt == "json":
            blob = json.dumps(data, sort_keys=True, ensure_ascii=False)
            click.echo(blob)
            if self.report_dir:
                out = Path(self.report_dir)
                out.mkdir(parents=True, exist_ok=True)
                (out / f"{command}.json").write_text(blob + "\n", encoding="utf-8")
        elif text is not None:
            click.echo(text)


def _run(ctx: click.Context, fn) -> None:
    try:
        code = fn()
    except Failure as e:
        click.echo(f"error: {e}", err=True)
        ctx.exit(e.code)
    except gentzen.BudgetExhausted as e:
        click.echo(f"budget exhausted: {e}", err=True)
        ctx.exit(BUDGET)
    except TooManyAtoms as e:
        click.echo(f"budget exhausted: {e}", err=True)
        ctx.exit(BUDGET)
    ctx.exit(code or OK)


# --------------------------------------------------------------------------
# commands


@click.group()
@click.option("--report", "report_fmt", type=click.Choice(["text", "json"]), default="text",
              help="Report format.")
@click.option("--timings", is_flag=True, help="Add wall-clock seconds to JSON reports.")
@click.option("--report-dir", envvar=REPORT_DIR_ENV, type=click.Path(file_okay=False),
              default=None, help=f"Also write JSON reports here (env {REPORT_DIR_ENV}).")
@click.version_option(package_name="artifact")
@click.pass_context
def main(ctx, report_fmt, timings, report_dir):
    """Proof checking and translation across deep inference, Gentzen and
    Frege systems."""
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 100000))
    ctx.obj = Reporter(report_fmt, timings, report_dir)


@main.command()
@click.argument("path")
@click.option("--gentzen", "fmt", flag_value="gtz", help="Read a Gentzen proof.")
@click.option("--frege", "fmt", flag_value="frg", help="Read a Frege proof.")
@click.option("--cosd", "fmt", flag_value="cosd", help="Read a CoS derivation.")
@click.pass_context
def check(ctx, path, fmt):
    """Check a proof file (.cosd, .frg or .gtz)."""

    def go():
        _, obj = load_any(path, fmt)
        rep = check_any(obj)
        text = "valid" if rep["valid"] else f"invalid: {rep.get('error')} {rep.get('reason', '')}".rstrip()
        ctx.obj.emit("check", rep, text)
        return OK if rep["valid"] else INVALID

    _run(ctx, go)


def _formula_arg(arg: str):
    text = _read(arg) if os.path.isfile(arg) else arg
    try:
        return parse_formula(text.strip())
    except FormulaError as e:
        raise Failure(USAGE, str(e))


@main.command()
@click.argument("formula")
@click.pass_context
def canon(ctx, formula):
    """Print the canonical form of FORMULA modulo AC and units."""

    def go():
        f = _formula_arg(formula)
        c = canonicalize(f)
        ctx.obj.emit("canon", {"input": print_formula(f), "canonical": print_formula(c),
                               "size": size(c)}, print_formula(c))

    _run(ctx, go)


@main.command()
@click.argument("formula")
@click.option("--bound", default=20, show_default=True, help="Largest atom count to evaluate.")
@click.pass_context
def taut(ctx, formula, bound):
    """Decide by truth table whether FORMULA (or a file holding one) is a tautology."""

    def go():
        f = _formula_arg(formula)
        yes = is_tautology(f, bound)
        ctx.obj.emit("taut", {"formula": print_formula(f), "tautology": yes},
                     "tautology" if yes else "not a tautology")
        return OK if yes else INVALID

    _run(ctx, go)


def translate_obj(src: str, dst: str, obj):
    """One hop of the translation graph; obj is what load_any returned."""
    if (src, dst) not in TRANSLATIONS:
        raise Failure(USAGE, f"no direct translation from {src} to {dst}; chain supported hops")
    try:
        if src == "gentzen":
            return gentzen.gentzen_to_sksg(obj)
        if (src, dst) == ("frege", "sksg"):
            return frege_to_sksg(obj)
        if (src, dst) == ("sksg", "frege"):
            return sksg_to_frege(obj)
        if (src, dst) == ("sksg", "sks"):
            return sksg_to_sks(obj)
        kind = {"xfrege": "xFrege", "xsksg": "xSKSg", "ssksg": "sSKSg"}[src]
        if obj.system != kind:
            if isinstance(obj, CosDerivation):
                obj = obj.with_system(kind)
            else:
                obj = frege.FregeDerivation(obj.lines, kind)
        p = ExtendedProof(kind, obj)
        fn = {("xfrege", "xsksg"): xfrege_to_xsksg, ("xsksg", "xfrege"): xsksg_to_xfrege,
              ("xsksg", "ssksg"): xsksg_to_ssksg, ("ssksg", "sfrege"): ssksg_to_sfrege,
              ("xfrege", "frege"): unfold_extension}[(src, dst)]
        return fn(p)
    except (TranslationError, ValueError) as e:
        raise Failure(INVALID, f"translation failed: {e}")


@main.command()
@click.argument("path")
@click.option("--from", "src", required=True, type=click.Choice(sorted(FORMATS)))
@click.option("--to", "dst", required=True, type=click.Choice(sorted(FORMATS)))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Write the translation here instead of stdout.")
@click.pass_context
def translate(ctx, path, src, dst, output):
    """Translate a proof along one edge of the translation graph."""

    def go():
        if (src, dst) not in TRANSLATIONS:
            raise Failure(USAGE, f"no direct translation from {src} to {dst}; chain supported hops")
        _, obj = load_any(path, FORMATS[src])
        rep = check_any(obj)
        if not rep["valid"]:
            raise Failure(INVALID, f"input is not valid: {rep.get('error')}")
        out = translate_obj(src, dst, obj)
        text = dump_any(out)
        if output:
            Path(output).write_text(text, encoding="utf-8")
        data = {"from": src, "to": dst, "input": metrics(obj) if not isinstance(obj, gentzen.GNode)
                else {"size": rep["size"]}, "output": metrics(out)}
        if ctx.obj.fmt == "json":
            ctx.obj.emit("translate", data)
        elif not output:
            click.echo(text, nl=False)

    _run(ctx, go)


# --------------------------------------------------------------------------
# generators


@main.group()
def gen():
    """Generators for tautologies and proofs."""


@gen.command("statman")
@click.argument("n", type=click.IntRange(min=1))
def gen_statman(n):
    """Print the Statman tautology S_n."""
    from .tautologies import statman
    click.echo(print_formula(statman(n)))


@gen.command("statman-proof")
@click.argument("n", type=click.IntRange(min=1))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.option("--expand", is_flag=True, help="Expand macro steps to atomic KS.")
def gen_statman_proof(n, output, expand):
    """Write the polynomial KS proof of S_n as .cosd."""
    from .tautologies import statman_proof
    text = cosd.dumps(statman_proof(n, expand=expand))
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@gen.command("dt")
@click.argument("n", type=click.IntRange(min=1))
def gen_dt(n):
    """Print the DT_n tautology."""
    from .tautologies import dt
    click.echo(print_formula(dt(n)))


CORPUS_KINDS = ("gentzen", "gentzen-cut", "frege", "xfrege", "xsksg", "ssksg")


@gen.command("corpus")
@click.option("--kind", type=click.Choice(CORPUS_KINDS), required=True)
@click.option("--count", default=10, show_default=True)
@click.option("--seed", default=0, show_default=True, help="Corpus seed.")
@click.option("-o", "--outdir", type=click.Path(file_okay=False), required=True)
@click.pass_context
def gen_corpus(ctx, kind, count, seed, outdir):
    """Write COUNT random proofs of one kind into OUTDIR."""
    from . import corpus
    import random
    rng = random.Random(seed)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(count):
        s = rng.randrange(1 << 30)
        if kind.startswith("gentzen"):
            obj, ext = corpus.random_gentzen(s, cut=kind == "gentzen-cut"), "gtz"
        elif kind == "frege":
            obj, ext = corpus.random_frege(s), "frg"
        elif kind == "xfrege":
            obj, ext = corpus.random_xfrege(s, h=1 + i % 2, steps=2), "frg"
        elif kind == "xsksg":
            obj, ext = corpus.random_xsksg(s, h=1 + i % 2), "cosd"
        else:
            obj, ext = corpus.random_ssksg(s), "cosd"
        (out / f"{kind}-{i:04d}.{ext}").write_text(dump_any(obj), encoding="utf-8")
    ctx.exit(OK)


# --------------------------------------------------------------------------
# benchmarks


def statman_row(n: int, budget: int, cutfree_max: int) -> dict:
    """One row of the Statman benchmark."""
    from .tautologies import statman, statman_proof
    sn = statman(n)
    rep = check_derivation(statman_proof(n))
    row = {"n": n, "statman_size": size(sn), "ks_size": rep.expanded_size,
           "ks_length": rep.expanded_length, "cutfree_size": "TIMEOUT", "nodes": ""}
    if n <= cutfree_max:
        try:
            _, stats = gentzen.cutfree_prove([sn], budget=budget)
            row["cutfree_size"], row["nodes"] = stats.min_size, stats.nodes
        except gentzen.BudgetExhausted as e:
            row["nodes"] = e.nodes
    return row


BENCH_COLUMNS = ("n", "statman_size", "ks_size", "ks_length", "cutfree_size", "nodes")


@main.group()
def bench():
    """Size benchmarks."""


@bench.command("statman")
@click.option("--max-n", default=6, show_default=True, type=click.IntRange(min=1))
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="CSV output path (stdout when omitted).")
@click.option("--budget", default=10 ** 6, show_default=True, help="Prover node budget per n.")
@click.option("--cutfree-max", default=None, type=int,
              help="Skip the prover above this n (reported as TIMEOUT).")
@click.option("--jobs", default=None, type=int, help="Worker processes.")
def bench_statman(max_n, csv_path, budget, cutfree_max, jobs):
    """KS proof size and length against minimal cut-free size for S_1..S_max-n."""
    cmax = max_n if cutfree_max is None else cutfree_max
    ns = list(range(1, max_n + 1))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        rows = list(pool.map(statman_row, ns, [budget] * len(ns), [cmax] * len(ns)))
    fh = open(csv_path, "w", newline="", encoding="utf-8") if csv_path else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if csv_path:
            fh.close()


@bench.command("cutfree")
@click.option("--statman-max", default=4, show_default=True, type=click.IntRange(min=1))
@click.option("--budget", default=10 ** 6, show_default=True)
@click.pass_context
def bench_cutfree(ctx, statman_max, budget):
    """Minimal cut-free proof sizes of S_1..S_statman-max."""
    from .tautologies import statman
    exhausted = False
    for n in range(1, statman_max + 1):
        try:
            _, stats = gentzen.cutfree_prove([statman(n)], budget=budget)
            click.echo(f"{n}\t{stats.min_size}\t{stats.nodes}")
        except gentzen.BudgetExhausted as e:
            click.echo(f"{n}\tTIMEOUT\t{e.nodes}")
            exhausted = True
            break
    ctx.exit(BUDGET if exhausted else OK)


if __name__ == "__main__":
    main()
