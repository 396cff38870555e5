"""Acceptance criteria, one test each.  Every test prints a single
PASS/FAIL line; conftest repeats them in the terminal summary.

Run standalone with ``python3 tests/test_acceptance.py`` for just the lines.
"""

import random
import sys
import time

import pytest

from deepinf.corpus import extended_corpus, random_formula, random_frege, random_gentzen
from deepinf.derivation import check_derivation, embed, ground, semantic_check
from deepinf.equality import canonicalize, equal_mod_ac
from deepinf.extended import (
    check_extended, ssksg_to_sfrege, unfold_extension, xfrege_to_xsksg, xsksg_to_ssksg,
    xsksg_to_xfrege,
)
from deepinf.formula import atoms_of, size
from deepinf.frege import check_frege, frege_semantic_check, frege_tautology
from deepinf.frege_bridge import (
    axiom_proofs, f2c, frege_to_cos_formula, frege_to_sksg, sksg_to_frege,
)
from deepinf.frege_lemmas import (
    EQUATION_TAUTOLOGIES, MONOTONICITY, RULE_TAUTOLOGIES, lemma_proof, statement,
)
from deepinf.gentzen import (
    BudgetExhausted, check_gentzen, cutfree_prove, gentzen_to_sksg, sequent_formula,
)
from deepinf.macros import interaction_down, interaction_up, sksg_to_sks
from deepinf.semantics import is_tautology
from deepinf.tautologies import dt, macro_length, statman, statman_proof, statman_step

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from oracles import closure_classes, nary_formulas, right_nest  # noqa: E402
from strategies import random_sksg_derivation  # noqa: E402

RESULTS: list[str] = []

# frozen oracle values and fitted constants (measured once, asserted since)
CUTFREE_SIZES = {1: 5, 2: 17, 3: 53, 4: 161}
CUTFREE_BUDGET = 10 ** 6
KS_RATIO = 3.07             # expanded proof size / size(S_n)^2, peak at n = 6
GENTZEN_SIZE_C = 0.5        # measured max 0.42 on the corpus below
FREGE_LENGTH_C = 7          # measured max 6.14 on the corpus below


def verdict(num, title, ok, detail=""):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def gentzen_corpus():
    return [random_gentzen(10_000 + i, depth=3 + i % 3, cut=i % 2 == 1) for i in range(200)]


def frege_corpus():
    return [random_frege(20_000 + i, steps=3 + i % 6) for i in range(200)]


def test_1_statman_sizes():
    t = time.perf_counter()
    bad = [n for n in range(1, 13) if size(statman(n)) != 2 * n * n + 2]
    dt_ = time.perf_counter() - t
    verdict(1, "size(S_n) = 2n^2+2 for n = 1..12", not bad and dt_ < 1,
            f"mismatches {bad}, {dt_:.3f}s")


def test_2_statman_polynomial_proofs():
    t = time.perf_counter()
    problems, ratios = [], {}
    for n in range(1, 13):
        d = statman_proof(n)
        r = check_derivation(d)
        if not (r.valid and r.is_proof and r.system == "KS" and d.conclusion == statman(n)):
            problems.append(f"n={n} invalid")
        if n >= 2:
            ratios[n] = r.expanded_size / size(statman(n)) ** 2
    for k in range(1, 12):
        if macro_length(statman_step(k)) != 28 * k - 6:
            problems.append(f"stage {k} length")
    peak = max(ratios.values())
    if not 0.9 * KS_RATIO <= peak <= 1.1 * KS_RATIO:
        problems.append(f"ratio {peak:.3f}")
    dt_ = time.perf_counter() - t
    verdict(2, "statman_proof valid in KS, stage length 28n-6, size/size(S_n)^2 bounded",
            not problems and dt_ < 30,
            f"peak ratio {peak:.3f} vs {KS_RATIO}, {dt_:.1f}s{', ' + '; '.join(problems) if problems else ''}")


@pytest.mark.slow
def test_3_cutfree_baseline():
    t = time.perf_counter()
    sizes = {}
    for n in range(1, 5):
        proof, stats = cutfree_prove([statman(n)], budget=CUTFREE_BUDGET)
        rep = check_gentzen(proof)
        assert rep.valid and rep.analytic
        sizes[n] = stats.min_size
    growth = all(sizes[n + 1] / sizes[n] >= 2 for n in range(1, 4))
    try:
        cutfree_prove([statman(5)], budget=CUTFREE_BUDGET)
        exhausted = False
    except BudgetExhausted as e:
        exhausted = e.nodes >= CUTFREE_BUDGET
    dt_ = time.perf_counter() - t
    verdict(3, "cut-free sizes, growth ratio >= 2, n = 5 exhausts 10^6 nodes",
            sizes == CUTFREE_SIZES and growth and exhausted and dt_ < 300,
            f"sizes {sizes}, n=5 exhausted {exhausted}, {dt_:.0f}s")


def _extended_round(p):
    """Translate one extended proof along its outgoing edges; every output
    must check, pass the semantic check and keep the conclusion."""
    outs = []
    if p.kind == "xFrege":
        x = xfrege_to_xsksg(p)
        assert x.conclusion == f2c(p.conclusion)
        outs += [x, xsksg_to_ssksg(x)]
        u = unfold_extension(p)
        assert check_frege(u).is_proof and u.conclusion == p.conclusion
        assert frege_semantic_check(u)
    elif p.kind == "xSKSg":
        outs += [xsksg_to_xfrege(p), xsksg_to_ssksg(p)]
    else:
        outs.append(ssksg_to_sfrege(p))
    for q in outs:
        assert check_extended(q).valid
        concl = f2c(q.conclusion) if q.is_frege else q.conclusion
        assert concl == (f2c(p.conclusion) if p.is_frege else p.conclusion)
        if q.is_frege:
            assert frege_semantic_check(q.derivation)
        else:
            assert semantic_check(q.derivation)
    return len(outs) + (p.kind == "xFrege")


def test_4_translator_validity():
    t = time.perf_counter()
    n_gentzen = n_frege = n_ext = 0
    for g in gentzen_corpus():
        assert check_gentzen(g).valid
        d = gentzen_to_sksg(g)
        r = check_derivation(d)
        assert r.valid and r.is_proof and semantic_check(d)
        assert d.conclusion == sequent_formula(g.sequent)
        n_gentzen += 1
    for f in frege_corpus():
        s = frege_to_sksg(f)
        r = check_derivation(s)
        assert r.valid and r.is_proof and semantic_check(s)
        assert s.conclusion == frege_to_cos_formula(f.conclusion)
        back = sksg_to_frege(s)
        assert check_frege(back).is_proof and frege_semantic_check(back)
        assert frege_to_cos_formula(back.conclusion) == s.conclusion
        n_frege += 1
    kinds = set()
    translations = 0
    for p in extended_corpus(0, 100):
        assert check_extended(p).valid
        kinds.add(p.kind)
        translations += _extended_round(p)
        n_ext += 1
    dt_ = time.perf_counter() - t
    ok = (n_gentzen >= 200 and n_frege >= 200 and n_ext >= 100
          and kinds == {"xFrege", "xSKSg", "sSKSg"} and dt_ < 300)
    verdict(4, "every translation checks, is sound and keeps the conclusion", ok,
            f"{n_gentzen} Gentzen, {n_frege} Frege, {n_ext} extended ({translations} outputs), {dt_:.0f}s")


def test_5_size_fits():
    worst_g = worst_f = worst_m = 0.0
    for g in gentzen_corpus():
        n = check_gentzen(g).size
        worst_g = max(worst_g, gentzen_to_sksg(g).size / n ** 2)
    for f in frege_corpus():
        worst_f = max(worst_f, frege_to_sksg(f).length / f.length)
    macro_ok = True
    for seed in range(500):
        a = random_formula(seed, leaves=1 + seed % 16, units=0.1)
        for fn in (interaction_down, interaction_up):
            ln = fn(a).length
            macro_ok &= ln <= 6 * size(a) + 6
            worst_m = max(worst_m, (ln - 6) / size(a))
    ok = worst_g <= GENTZEN_SIZE_C and worst_f <= FREGE_LENGTH_C and macro_ok
    verdict(5, "gentzen size <= c n^2, frege length <= c l, interaction macros <= 6 size + 6", ok,
            f"gentzen {worst_g:.2f} <= {GENTZEN_SIZE_C}, frege {worst_f:.2f} <= {FREGE_LENGTH_C}, "
            f"macro slope {worst_m:.2f} <= 6")


def test_6_equality_oracle():
    t = time.perf_counter()
    universe, cls = closure_classes(5)
    mismatches = 0
    seen_c, seen_k = {}, {}
    for f in universe:
        k = canonicalize(f)
        if seen_c.setdefault(cls[f], k) != k or seen_k.setdefault(k, cls[f]) != cls[f]:
            mismatches += 1
    nary = nary_formulas(5)
    for f in nary:
        if not equal_mod_ac(f, right_nest(f)):
            mismatches += 1
    dt_ = time.perf_counter() - t
    verdict(6, "equal_mod_ac agrees with the rewrite-closure oracle, size <= 5 over {a, b, t, f}",
            mismatches == 0 and dt_ < 120,
            f"{len(universe)} binary + {len(nary)} n-ary formulae, {len(set(cls.values()))} classes, "
            f"{mismatches} mismatches, {dt_:.0f}s")


def test_7_soundness_sweep():
    checks = 0
    failures = []

    def sound(d, proof=False):
        nonlocal checks
        checks += 1
        if not semantic_check(d):
            failures.append(d)
        if proof and check_derivation(d).is_proof:
            checks += 1
            if not is_tautology(d.conclusion, 16):
                failures.append(d)

    rng = random.Random(7)
    for i in range(3000):
        d = random_sksg_derivation(rng, steps=6)
        sound(d)
        sound(ground(d))
        if i % 3 == 0:
            sound(embed(d, (random_formula(rng, 3, variables=("z",)), ())))
        if i % 5 == 0:
            sound(sksg_to_sks(ground(d)))
    for seed in range(1500):
        a = random_formula(seed, leaves=1 + seed % 8, units=0.1)
        sound(interaction_down(a))
        sound(interaction_up(a))
    for i in range(1000):
        g = random_gentzen(30_000 + i, depth=3 + i % 2, cut=i % 2 == 0)
        sound(gentzen_to_sksg(g), proof=True)
    for i in range(300):
        f = random_frege(40_000 + i, steps=4)
        checks += 2
        if not (frege_semantic_check(f) and frege_tautology(f.conclusion)):
            failures.append(f)
        sound(frege_to_sksg(f), proof=True)
    for n in range(1, 7):
        sound(statman_proof(n), proof=True)
    ok = checks >= 10 ** 4 and not failures
    verdict(7, "soundness sweep over generated derivations and proofs", ok,
            f"{checks} checks, {len(failures)} failures")


def test_8_fixtures():
    bad = []
    phis = axiom_proofs()
    for k, d in phis.items():
        r = check_derivation(d)
        if not (r.valid and r.is_proof and semantic_check(d)):
            bad.append(f"F{k}")
    names = MONOTONICITY + tuple(RULE_TAUTOLOGIES.values()) + EQUATION_TAUTOLOGIES
    for name in names:
        d = lemma_proof(name)
        if not (check_frege(d).is_proof and d.conclusion == statement(name)
                and frege_semantic_check(d) and frege_tautology(d.conclusion)):
            bad.append(name)
    counts = (len(phis), len(MONOTONICITY), len(RULE_TAUTOLOGIES), len(EQUATION_TAUTOLOGIES))
    verdict(8, "axiom proofs and Frege lemma fixtures valid and sound",
            counts == (17, 4, 7, 16) and not bad, f"counts {counts}, bad {bad}")


def test_9_dt():
    t = time.perf_counter()
    tauts = [is_tautology(dt(n), 24) for n in (1, 2, 3)]
    atoms = set(atoms_of(dt(2)))
    dt_ = time.perf_counter() - t
    ok = all(tauts) and atoms == {f"b{i}" for i in range(1, 6)} and dt_ < 10
    verdict(9, "dt(1..3) tautologies, dt(2) atoms are b1..b5", ok,
            f"tautologies {tauts}, atoms {sorted(atoms)}, {dt_:.2f}s")


if __name__ == "__main__":
    sys.setrecursionlimit(100000)
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
