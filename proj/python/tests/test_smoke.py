import pytest

import dedmod


def test_builtins_load_and_validate():
    names = dedmod.builtin_names()
    assert "assoc" in names and "crabbe" in names
    assoc = dedmod.Theory("assoc")
    assert assoc.name == "assoc"
    assert "terminating: yes" in assoc.report
    assert assoc.rules == ["rule assoc: (+ x (+ y z)) ~> (+ (+ x y) z)."]


def test_normalize_and_congruence():
    assoc = dedmod.Theory("assoc")
    assert dedmod.normalize(assoc, "(P (+ (+ a b) (+ (+ c d) e)))") == "(P (+ (+ (+ (+ a b) c) d) e))"
    addition = dedmod.Theory("addition")
    assert dedmod.congruent(addition, "(+ (S 0) (S 0))", "(S (S 0))") is True
    assert dedmod.congruent(addition, "(+ (S 0) (S 0))", "(S 0)") is False


def test_unify_modulo_associativity():
    assoc = dedmod.Theory("assoc")
    r = dedmod.unify(assoc, "(P (+ a x))", "(P (+ (+ a b) c))")
    assert r["syntactic"] is None
    assert r["solutions"][0] == {"x": "(+ b c)"}


def test_prove_and_check_round_trip():
    th = dedmod.Theory("def-conj")
    r = dedmod.prove(th, "(imp P A)", depth=8)
    assert r["status"] == "proved"
    c = dedmod.check(th, r["proof"], "(imp P A)")
    assert c["ok"] and c["cuts"] == 0


def test_crabbe_and_probes():
    crabbe = dedmod.Theory("crabbe")
    assert dedmod.prove(crabbe, "Q", depth=10)["status"] == "fail"
    assert dedmod.probe(dedmod.Theory("pf-collapse"), depth=10)["status"] == "fail"
    axiom = "(forall x:i (iff (P x) (P (f x))))"
    assert dedmod.probe(dedmod.Theory("empty"), depth=6, hypotheses=[axiom])["status"] == "bound-exceeded"


def test_theory_from_text_and_errors():
    th = dedmod.Theory.from_text("pred P. pred Q. rule r: P ~> (imp Q Q).", "p-qq")
    assert dedmod.prove(th, "P", depth=4)["status"] == "proved"
    with pytest.raises(dedmod.DedmodError):
        dedmod.Theory.from_text("sort i. func a : -> i. pred R : i. rule r: x ~> a.")
    with pytest.raises(dedmod.DedmodError):
        dedmod.Theory("no-such-theory")


def test_run_matches_command_line():
    code, report = dedmod.run("validate", "comm")
    assert code == 1
    assert report.rstrip().splitlines()[-1].startswith("#verdict:")
    code, report = dedmod.run("probe", "pf-collapse", depth=10)
    assert code == 0 and "#verdict: consistent-at-depth 10" in report
