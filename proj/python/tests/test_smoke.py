import pytest

import ltlz


def test_contradiction_is_unsat():
    r = ltlz.solve("p & box*(!p)")
    assert r["status"] == "unsat"
    assert r["engine"] == "star2sat"
    assert r["complete"]


def test_witness_checks():
    f = "p & box*(!p | boxF q) & box*(!q | nextF r)"
    r = ltlz.solve(f, witness=True, certificate=True)
    assert r["status"] == "sat"
    assert r["engine"] == "certsearch"
    assert "gap 0:" in r["certificate"]
    assert ltlz.check(f, r["witness"])


def test_classify_and_normalize():
    assert ltlz.classify("p & box*(!p | boxF q)") == "core/box"
    out = ltlz.normalize("q", "core/box")
    assert ltlz.classify(out).startswith("core/")


def test_generated_triangle():
    f = ltlz.generate("3col", "a b\nb c\na c\n")
    assert ltlz.solve(f)["status"] == "sat"
    k4 = ltlz.generate("3col", "a b\na c\na d\nb c\nb d\nc d\n")
    assert ltlz.solve(k4)["status"] == "unsat"


def test_oracle_incomplete():
    r = ltlz.solve("p & box*(!p | nextF p) & box*(p | q | nextF q)", engine="oracle")
    assert not r["complete"]
    assert ltlz.oracle("p & box*(!p | nextF p)", 6)["found"]


def test_errors():
    with pytest.raises(ValueError):
        ltlz.reprint("p & (")
    with pytest.raises(ValueError):
        ltlz.solve("p & box*(!p | nextF q)", engine="star2sat")
