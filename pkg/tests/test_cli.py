import csv
import io
import json

import pytest
from click.testing import CliRunner

from deepinf import cosd, frege
from deepinf import gentzen
from deepinf.cli import BUDGET, INVALID, OK, TRANSLATIONS, USAGE, main
from deepinf.corpus import root_sub_example, random_frege, random_gentzen, random_xfrege, random_xsksg
from deepinf.tautologies import statman_proof


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args, env=None):
        return runner.invoke(main, [str(a) for a in args], env=env, catch_exceptions=False)
    return go


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_check_statman_proof(run, tmp_path):
    p = write(tmp_path, "s3.cosd", cosd.dumps(statman_proof(3)))
    r = run("check", p)
    assert r.exit_code == OK
    r = run("--report", "json", "check", p)
    data = json.loads(r.output)
    assert data["valid"] and data["format"] == "cosd" and "rule_counts" in data


def test_check_invalid_and_parse_error(run, tmp_path):
    bad = write(tmp_path, "bad.frg", "1: a ; axiom F2\n")
    assert run("check", bad).exit_code == INVALID
    broken = write(tmp_path, "broken.cosd", "system KS\npremiss [a |\n")
    assert run("check", broken).exit_code == USAGE
    assert run("check", tmp_path / "missing.cosd").exit_code == USAGE
    assert run("check", write(tmp_path, "empty.frg", "\n")).exit_code == USAGE


def test_canon_and_taut(run):
    r = run("canon", "[[b | d] | [c | a]]")
    assert r.exit_code == OK and r.output.strip() == "[a | b | c | d]"
    assert run("taut", "[a | ~a]").exit_code == OK
    assert run("taut", "a").exit_code == INVALID
    assert run("canon", "[a |").exit_code == USAGE


def test_unsupported_pair(run, tmp_path):
    p = write(tmp_path, "g.gtz", gentzen.dumps(random_gentzen(1)))
    r = run("translate", p, "--from", "gentzen", "--to", "frege")
    assert r.exit_code == USAGE


def sample(kind):
    if kind == "gentzen":
        return "x.gtz", gentzen.dumps(random_gentzen(5, cut=True))
    if kind == "frege":
        return "x.frg", frege.dumps(random_frege(5, steps=4))
    if kind in ("sksg", "sks"):
        return "x.cosd", cosd.dumps(statman_proof(2).with_system("SKSg"))
    if kind == "xfrege":
        return "x.frg", frege.dumps(random_xfrege(5, h=2, steps=2))
    if kind == "xsksg":
        return "x.cosd", cosd.dumps(random_xsksg(5, h=2))
    if kind == "ssksg":
        return "x.cosd", cosd.dumps(root_sub_example())
    raise KeyError(kind)


@pytest.mark.parametrize("src,dst", sorted(TRANSLATIONS))
def test_translation_graph_rechecks(run, tmp_path, src, dst):
    name, text = sample(src)
    p = write(tmp_path, name, text)
    out = tmp_path / "out.txt"
    r = run("translate", p, "--from", src, "--to", dst, "-o", out)
    assert r.exit_code == OK, r.output
    r = run("--report", "json", "check", out)
    assert r.exit_code == OK, r.output
    assert json.loads(r.output)["valid"]


def test_translate_json_metrics(run, tmp_path):
    p = write(tmp_path, "f.frg", frege.dumps(random_frege(2, steps=4)))
    r = run("--report", "json", "translate", p, "--from", "frege", "--to", "sksg")
    data = json.loads(r.output)
    assert data["from"] == "frege" and data["output"]["length"] > 0
    assert "seconds" not in data


def test_reports_byte_stable(run, tmp_path):
    p = write(tmp_path, "s.cosd", cosd.dumps(statman_proof(2)))
    a = run("--report", "json", "check", p).output
    b = run("--report", "json", "check", p).output
    assert a == b
    t = run("--report", "json", "--timings", "check", p).output
    assert "seconds" in json.loads(t)


def test_report_dir_env(run, tmp_path):
    p = write(tmp_path, "s.cosd", cosd.dumps(statman_proof(1)))
    rd = tmp_path / "reports"
    r = run("--report", "json", "check", p, env={"DEEPINF_REPORT_DIR": str(rd)})
    assert r.exit_code == OK
    assert json.loads((rd / "check.json").read_text())["valid"]


def test_gen_commands(run, tmp_path):
    r = run("gen", "statman", 2)
    assert r.exit_code == OK and "c2" in r.output
    out = tmp_path / "p.cosd"
    assert run("gen", "statman-proof", 3, "-o", out).exit_code == OK
    assert run("check", out).exit_code == OK
    r = run("gen", "dt", 1)
    assert r.output.strip() == "[((t & b1) & b1) | (~b1 & ~b1)]"
    d = tmp_path / "corpus"
    assert run("gen", "corpus", "--kind", "frege", "--count", 3, "--seed", 4, "-o", d).exit_code == OK
    files = sorted(d.iterdir())
    assert len(files) == 3
    for f in files:
        assert run("check", f).exit_code == OK
    again = tmp_path / "again"
    run("gen", "corpus", "--kind", "frege", "--count", 3, "--seed", 4, "-o", again)
    assert [f.read_text() for f in files] == [f.read_text() for f in sorted(again.iterdir())]


def test_bench_statman(run, tmp_path):
    out = tmp_path / "bench.csv"
    r = run("bench", "statman", "--max-n", 4, "--csv", out, "--jobs", 2)
    assert r.exit_code == OK
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert [int(x["n"]) for x in rows] == [1, 2, 3, 4]
    assert [int(x["cutfree_size"]) for x in rows] == [5, 17, 53, 161]
    assert all(int(x["ks_size"]) > 0 for x in rows)


def test_bench_cutfree_budget(run):
    r = run("bench", "cutfree", "--statman-max", 3, "--budget", 200)
    assert r.exit_code == BUDGET and "TIMEOUT" in r.output
    r = run("bench", "cutfree", "--statman-max", 2)
    assert r.exit_code == OK
