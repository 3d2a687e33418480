import pytest
from hypothesis import given, settings

from artifact.beta import (AN, FuelExhausted, NotARedex, Normalized, beta_redexes, beta_step_at,
                           beta_successors, bnf, contract, head_step, head_steps_to_normal, in_AN,
                           lo_normalize, lo_step, parallel_beta_successors, succ_descendants)
from artifact.common import Fuel
from artifact.lab import closed_terms
from artifact.terms import Step, has_beta_redex, parse_term

from strategies import SIGNATURE, closed_lambda_terms, lambda_terms

SIG = {"f", "g", "a", "b", "succ", "id"}
OMEGA = r"(\x. x x) (\x. x x)"


def p(text):
    return parse_term(text, SIG)


class TestContraction:
    def test_contract(self):
        assert contract(p(r"(\x. g x x) a")) == p("g a a")

    def test_contract_under_binder_shifts(self):
        assert contract(p(r"(\x. \y. x) y")) == p(r"\z. y")

    def test_not_a_redex(self):
        with pytest.raises(NotARedex):
            contract(p("f a"))
        with pytest.raises(NotARedex):
            beta_step_at(p("f a"), (Step.ARG,))

    def test_redexes_in_lo_order(self):
        t = p(r"(\x. x) ((\y. y) a)")
        assert beta_redexes(t) == [(), (Step.ARG,)]
        assert [u for _, u in beta_successors(t)] == [p(r"(\y. y) a"), p(r"(\x. x) a")]


class TestNormalization:
    def test_k_i(self):
        out = lo_normalize(p(rf"(\x y. x) a ({OMEGA})"))
        assert out == Normalized(p("a"), 2)

    def test_omega_exhausts_fuel(self):
        out = lo_normalize(p(OMEGA), Fuel(max_steps=10))
        assert isinstance(out, FuelExhausted) and out.steps == 10

    def test_size_cap(self):
        big = r"(\x. x x x) (\x. x x x)"
        assert isinstance(lo_normalize(p(big), Fuel(max_term_size=40)), FuelExhausted)

    def test_lo_step_none_on_normal(self):
        assert lo_step(p(r"\x. f x")) is None

    def test_bnf(self):
        assert bnf(p(r"(\x. f x) a")) == p("f a")
        assert bnf(p(OMEGA), Fuel(max_steps=5)) is None

    @settings(max_examples=200)
    @given(lambda_terms())
    def test_normal_forms_have_no_redex(self, t):
        out = lo_normalize(t, Fuel(max_steps=30, max_term_size=150))
        if isinstance(out, Normalized):
            assert not has_beta_redex(out.term)
            assert lo_normalize(out.term) == Normalized(out.term, 0)


class TestHead:
    def test_head_step_under_binders(self):
        assert head_step(p(r"\z. (\x. x) z a")) == p(r"\z. z a")
        assert head_step(p(r"f ((\x. x) a)")) is None

    def test_head_steps_to_normal(self):
        assert head_steps_to_normal(p(r"(\x. x) (f ((\y. y) a))")) == 2
        assert head_steps_to_normal(p(OMEGA), Fuel(max_steps=5)) is None

    def test_descendants(self):
        assert succ_descendants(p("g a b")) == [p("a"), p("b")]
        assert succ_descendants(p(r"(\x. x) a b")) == [p("a b")]
        assert succ_descendants(p("a")) == []


class TestParallel:
    def test_nested_redexes_in_one_step(self):
        t = p(r"(\x. f x) ((\y. y) a)")
        succ = parallel_beta_successors(t)
        assert t in succ and p("f a") in succ and p(r"(\x. f x) a") in succ

    @settings(max_examples=150)
    @given(closed_lambda_terms())
    def test_contains_beta_steps_and_self(self, t):
        succ = parallel_beta_successors(t)
        assert t in succ
        for _, u in beta_successors(t):
            assert u in succ

    def test_diamond_on_small_terms(self):
        for t in closed_terms(5):
            succ = parallel_beta_successors(t)
            for u in succ:
                for v in succ:
                    assert set(parallel_beta_successors(u)) & set(parallel_beta_successors(v))


class TestAN:
    ALPHA = {"id": 1, "f": 1, "succ": 1, "a": 0}

    def test_yes(self):
        v = in_AN(p(r"(\x. id x) a"), self.ALPHA)
        assert v.answer is AN.YES and v.bnf == p("id a")

    def test_no(self):
        assert in_AN(p(r"(\x. id x x) a"), self.ALPHA).answer is AN.NO

    def test_unknown(self):
        assert in_AN(p(OMEGA), self.ALPHA, Fuel(max_steps=5)).answer is AN.UNKNOWN
