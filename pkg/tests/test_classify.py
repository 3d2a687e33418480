from pathlib import Path

import pytest

from artifact.classify import (FLAGS, THEOREMS, applicable_theorems, classify_system,
                               format_report)
from artifact.common import Tri
from artifact.rulefile import load_builtin, parse_rulefile

GOLDEN = Path(__file__).parent / "golden"


def classify(name):
    c = classify_system(load_builtin(name).system)
    return c, applicable_theorems(c)


@pytest.mark.parametrize("name", ["tree", "sp", "minus_cond"])
def test_golden_reports(name):
    c, v = classify(name)
    assert format_report(c, v) == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


def test_tree_meets_every_hypothesis():
    c, v = classify("tree")
    assert all(getattr(c, f).value is Tri.TRUE for f in FLAGS)
    assert v.applicable == tuple(t.key for t in THEOREMS)


def test_sp_lists_nothing():
    c, v = classify("sp")
    assert c.left_linear.value is Tri.FALSE and v.applicable == ()


def test_minus_cond_not_semi_closed():
    c, v = classify("minus_cond")
    assert c.semi_closed.value is Tri.FALSE and v.applicable == ()


def test_filter_is_applicative_not_algebraic():
    c, v = classify("filter")
    assert c.algebraic.value is Tri.FALSE and c.applicative.value is Tri.TRUE
    assert "p x" in c.algebraic.reason
    assert "beta-Rbeta/orthonormal" in v.applicable and "beta-R/applicative" in v.applicable
    assert "beta-R/arity" not in v.applicable


def test_termsys():
    c, v = classify("termsys")
    assert c.orthonormal and c.respects_arity
    assert not c.right_applicative
    assert v.applicable == ("beta-R/normal", "beta-Rbeta/orthonormal")


def test_respects_arity_false():
    rs = parse_rulefile("sig f/1 a/0 ; rule r: f x -> f a a ;").system
    c = classify_system(rs)
    assert c.respects_arity.value is Tri.FALSE and "f applied to 2" in c.respects_arity.reason


def test_normal_unknown_with_defined_symbol():
    rs = parse_rulefile("sig f g a ; rule r: f x -> a if x = g a ; rule s: g x -> a ;").system
    assert classify_system(rs).normal.value is Tri.UNKNOWN


def test_report_lists_unmet_hypotheses():
    c, v = classify("minus")
    assert v.hypotheses_unmet["beta-R/applicative"] == ("left_linear",)
    assert v.applicable == ("beta-R/arity", "beta-Rbeta/arity")
    text = format_report(c, v)
    assert "unmet beta-R/applicative: left_linear" in text
    c, v = classify("sp")
    assert "applies: none" in format_report(c, v)


def test_as_dict_shape():
    c, v = classify("tree")
    d = c.as_dict()
    assert list(d) == list(FLAGS) and d["orthonormal"]["value"] == "true"
    assert v.as_dict()["applicable"][0]["theorem"] == "beta-R/applicative"
