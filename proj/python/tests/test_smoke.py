from fractions import Fraction

import pytest

import rookwalk


def test_terms():
    assert rookwalk.diagonal_terms(2, 6) == [1, 2, 14, 106, 838, 6802]
    assert rookwalk.diagonal_terms(3, 6)[-1] == 25267236
    assert rookwalk.naive_diagonal("rook", 3, 6) == rookwalk.diagonal_terms(3, 6)
    assert rookwalk.slice_table(2, 2, 2)[1] == [1, 2, 5]


def test_guess_check_extend():
    terms = rookwalk.diagonal_terms(2, 25)
    rec = rookwalk.guess(terms, max_order=4, max_degree=4, margin=8)
    assert rec.splitlines()[-3:] == ["coeff 0: 0 9", "coeff 1: -14 -10", "coeff 2: 2 1"]
    assert rookwalk.check(rec, terms) is None
    bad = list(terms)
    bad[2] = 15
    assert rookwalk.check(rec, bad) == 0
    assert rookwalk.extend(rec, terms[:3], 5)[-1] == 6802
    assert rookwalk.stats(rec)["maxint"] == 2


def test_asymptotics():
    terms = rookwalk.diagonal_terms(2, 25)
    rec = rookwalk.guess(terms, margin=8)
    e = rookwalk.expand(rec, 2)
    assert e["lambda"] == 9
    assert e["theta"] == Fraction(-1, 2)
    assert e["c"] == [Fraction(-5, 32), Fraction(-11, 2048)]
    assert rookwalk.alpha(3) == Fraction(243, 1600)
    long_terms = rookwalk.extend(rec, terms[:3], 2000)
    assert rookwalk.ratio_check(rec, long_terms, 2, 2000)["deviation"] < 1e-9


def test_fixed_n_and_table():
    assert rookwalk.fixed_n_counts(2, 3) == [2, 14, 222]
    rows = rookwalk.repro_table(3)
    assert [(r["order"], r["degree"], r["maxint"]) for r in rows[1:]] == [(2, 1, 2), (3, 4, 6)]
    assert all(r["status"] in ("match", "unlisted") for r in rows)


def test_errors():
    with pytest.raises(rookwalk.RookwalkError, match="insufficient-terms"):
        rookwalk.guess([1, 2, 3], margin=8)
    code, out, err = rookwalk.run_cli(["alpha", "--dim", "0"])
    assert code == 1 and err.startswith("error:") and err.count("\n") == 1
    assert rookwalk.run_cli(["alpha", "--dim", "2"]) == (0, "alpha: 2/9\n", "")
