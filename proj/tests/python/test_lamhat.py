import json
from pathlib import Path

import pytest

import lamhat

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"
T0 = (FIXTURES / "t0.lamhat").read_text()


def test_running_example():
    r = lamhat.evaluate(T0, 100)
    assert r["normal"]
    assert r["term"] == "C0"
    assert r["counters"] == [1, 1, 0, 4]
    assert [s["rule"] for s in r["steps"]] == ["dB", "e", "c", "e", "e", "e"]


def test_classify():
    r = lamhat.classify("Pair(I I, I) I")
    assert r["clash"] and r["clash_kind"] == "data-applied"
    assert not r["clash_free_nf"]
    assert lamhat.classify("Pair(I I, I)")["clash_free_nf"]


def test_sigma_fixture():
    text = (FIXTURES / "sigma.json").read_text()
    assert lamhat.check(text) == []
    assert lamhat.size(text) == 11


def test_synthesis_round_trip():
    r = lamhat.synthesize(T0, 100)
    assert r["outcome"] == "Typable"
    assert r["steps"] == 6 and r["bound"] >= 6
    assert lamhat.check(r["derivation"]) == []
    assert json.loads(r["derivation"])["conclusion"]["type"] == "C0"
    assert lamhat.synthesize("((\\x.Pair(I,I)) I) I")["outcome"] == "Untypable"
    assert lamhat.synthesize("(\\x.x x) (\\x.x x)", 50)["outcome"] == "Unknown"


def test_encodings():
    assert lamhat.alpha_eq(lamhat.encode("\\x.x", "cbv"), "V(\\x.V(x))")
    r = lamhat.simulate("(\\x.x) (\\y.y)", "cbv", 1)
    assert r["ok"]
    assert [s["rule"] for s in r["certificates"][0]["target_rules"]] == ["m", "e", "m", "e", "dB", "e"]


def test_errors():
    with pytest.raises(lamhat.Error, match="ParseError"):
        lamhat.pretty("case t of {}")
    with pytest.raises(lamhat.Error, match="OpenTerm"):
        lamhat.synthesize("x")
