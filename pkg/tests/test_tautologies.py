import pytest

from deepinf.derivation import check_derivation, semantic_check
from deepinf.equality import equal_mod_ac
from deepinf.formula import atoms_of, parse_formula as P, print_formula, size
from deepinf.semantics import is_tautology
from deepinf.tautologies import (
    dt, middle_size, macro_length, statman, statman_proof, statman_step,
)


def test_first_statman_tautologies():
    assert statman(1) == P("[(c1 & d1) | [~c1 | ~d1]]")
    assert statman(2) == P("[(c2 & d2) | [(([~c2|~d2] & c1) & ([~c2|~d2] & d1)) | [~c1 | ~d1]]]")
    with pytest.raises(ValueError):
        statman(0)


def test_statman_size():
    assert size(statman(4)) == 34
    for n in range(1, 9):
        assert size(statman(n)) == 2 * n * n + 2


def test_statman_tautologies_oracle():
    for n in range(1, 7):
        assert is_tautology(statman(n))


def test_step_lengths():
    assert macro_length(statman_step(1)) == 22
    for n in range(1, 8):
        d = statman_step(n)
        assert check_derivation(d).valid
        assert macro_length(d) == 28 * n - 6
        assert middle_size(n) == 2 * n * n + 8 * n + 2


def test_step_endpoints():
    for n in range(1, 6):
        d = statman_step(n)
        assert equal_mod_ac(d.premiss, statman(n))
        assert d.conclusion == statman(n + 1)


def test_statman_proof_small():
    d1 = statman_proof(1)
    r = check_derivation(d1)
    assert r.valid and r.is_proof and d1.conclusion == statman(1)
    d3 = statman_proof(3)
    r3 = check_derivation(d3)
    assert r3.valid and r3.is_proof and d3.conclusion == statman(3)
    assert semantic_check(d3)
    assert not {"ai↑", "aw↑", "ac↑", "i↑", "w↑", "c↑"} & set(d3.rule_counts())


def test_statman_proof_expanded():
    d = statman_proof(2, expand=True)
    r = check_derivation(d)
    assert r.valid and r.is_proof and d.system == "KS"
    assert set(d.rule_counts()) <= {"ai↓", "aw↓", "ac↓", "s", "m", "="}


def test_dt_small():
    assert print_formula(dt(1)) == "[((t & b1) & b1) | (~b1 & ~b1)]"
    assert set(atoms_of(dt(2))) == {f"b{i}" for i in range(1, 6)}
    for n in (1, 2, 3):
        assert is_tautology(dt(n), 24)      # dt(3) has 21 atoms


def test_dt_index_disjointness():
    # the four recursive calls below dt(3) start at offsets 0, 5, 10, 15
    from deepinf.formula import T
    from deepinf.tautologies import dt_h
    sets = [set(atoms_of(dt_h(2, m, T))) for m in (0, 5, 10, 15)]
    for i in range(4):
        for j in range(i + 1, 4):
            assert not sets[i] & sets[j]
    assert set().union(*sets) | {"b25"} == set(atoms_of(dt(3)))


def test_oracle_basics():
    assert is_tautology(P("[a | ~a]"))
    assert not is_tautology(P("a"))
