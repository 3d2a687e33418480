import pytest
from hypothesis import given, settings, strategies as st

from artifact.common import Fuel
from artifact.corpus import Y_SUCC, termsys_generator, tree_generator
from artifact.rewrite import (BETA, Engine, Joinable, Mode, NotJoinableWithinBudget, Refuted,
                              Strategy, format_derivation, joinable, nested_parallel_successors,
                              parallel_closure_successors, rbeta_successors, reduce_many, replay,
                              successors)
from artifact.rulefile import load_builtin, parse_rulefile
from artifact.terms import Step, parse_term, pretty

TREE = load_builtin("tree").system
TERMSYS = load_builtin("termsys").system
FILTER = load_builtin("filter").system
SMALL = Fuel(max_steps=8, max_term_size=120, max_nodes=2000)


def t_(rs, text):
    return parse_term(text, rs.signature)


class TestModes:
    @pytest.mark.parametrize("text,mode", [("R", Mode.R), ("rbeta", Mode.RBETA),
                                           ("BetaUnionRBeta", Mode.BETA_RBETA),
                                           ("beta_r", Mode.BETA_R), ("Beta", Mode.BETA)])
    def test_parse(self, text, mode):
        assert Mode.parse(text) is mode

    def test_parse_unknown(self):
        with pytest.raises(ValueError):
            Mode.parse("gamma")

    def test_condition_modes(self):
        assert Mode.R.condition_mode is Mode.R
        assert Mode.BETA_R.condition_mode is Mode.R
        assert Mode.RBETA.condition_mode is Mode.BETA_RBETA
        assert Mode.BETA_RBETA.condition_mode is Mode.BETA_RBETA


class TestSteps:
    def test_level_zero_is_empty(self):
        t = t_(TREE, "length nil")
        assert successors(t, TREE, Mode.R, 0) == ()
        assert [s.rule for s in successors(t, TREE, Mode.R, 1)] == ["length1"]

    def test_conditional_step_needs_a_level(self):
        t = t_(TREE, "occ (cons zero nil) (node zero nil)")
        assert successors(t, TREE, Mode.R, 1) == ()
        (step,) = successors(t, TREE, Mode.R, 2)
        assert step.rule == "occ2" and pretty(step.target) == "false"
        (w,) = step.condition_trace
        assert pretty(w.d) == "gt (length nil) zero" and pretty(w.witness) == "false"

    def test_positions_leftmost_outermost(self):
        t = t_(TREE, "cons (length nil) (cdr (cons zero nil))")
        got = [(s.position, s.rule) for s in successors(t, TREE, Mode.R, 1)]
        assert got == [((Step.FUN, Step.ARG), "length1"), ((Step.ARG,), "cdr1")]

    def test_beta_only_in_beta_modes(self):
        t = t_(TREE, r"(\x. x) nil")
        assert successors(t, TREE, Mode.R, 3) == ()
        assert [s.rule for s in successors(t, TREE, Mode.BETA_R, 3)] == [BETA]

    def test_rbeta_conditions_use_beta(self):
        t = t_(FILTER, r"filter (\x. x) (cons true nil)")
        assert all(successors(t, FILTER, Mode.R, lv) == () for lv in range(1, 5))
        assert [s.rule for s in rbeta_successors(t, FILTER, 1)] == ["filter2"]

    def test_redex_under_lambda(self):
        t = t_(TREE, r"\x. length nil")
        (s,) = successors(t, TREE, Mode.R, 1)
        assert s.position == (Step.BODY,) and s.target == t_(TREE, r"\x. zero")


class TestJoin:
    def test_identical(self):
        assert joinable(t_(TREE, "nil"), t_(TREE, "nil"), TREE, Mode.R, 1) == Joinable(
            t_(TREE, "nil"), 0, 0)

    def test_joinable_witness(self):
        v = joinable(t_(TREE, "length (cons zero nil)"), t_(TREE, "succ (length nil)"), TREE,
                     Mode.R, 1)
        assert isinstance(v, Joinable) and pretty(v.witness) in ("succ (length nil)",
                                                                 "succ zero")

    def test_refuted_distinct_normal_forms(self):
        v = joinable(t_(TREE, "true"), t_(TREE, "false"), TREE, Mode.R, 3)
        assert isinstance(v, Refuted)

    def test_budget_exhausted(self):
        rs = load_builtin("minus").system
        y = t_(rs, Y_SUCC)
        v = joinable(y, t_(rs, "zero"), rs, Mode.BETA_R, 1, Fuel(max_steps=4))
        assert isinstance(v, NotJoinableWithinBudget) and v.fuel.max_steps == 4

    def test_verdict_dicts(self):
        assert Refuted("why").as_dict()["verdict"] == "Refuted"
        v = joinable(t_(TREE, "length nil"), t_(TREE, "zero"), TREE, Mode.R, 1)
        assert v.as_dict()["verdict"] == "Joinable"


class TestDerivations:
    def test_filter_trace(self):
        steps = reduce_many(t_(FILTER, "filter id (cons true nil)"), FILTER, Mode.R, 2)
        text = format_derivation(steps)
        assert text.splitlines()[0] == "step 1: filter2 @ root level=2"
        assert "if id true = true joined at true (1+0 steps)" in text
        assert replay(steps, FILTER, mode=Mode.R)

    def test_replay_rejects_forgery(self):
        steps = reduce_many(t_(TREE, "length (cons zero nil)"), TREE, Mode.R, 1)
        forged = [steps[0].__class__(steps[0].source, t_(TREE, "zero"), steps[0].position,
                                     steps[0].rule, 1, ())]
        assert not replay(forged, TREE, mode=Mode.R)

    def test_full_enumeration_finds_shortest(self):
        rs = parse_rulefile("sig f a b c ; rule r1: f x -> f x ; rule r2: f x -> b ;").system
        t = t_(rs, "f a")
        lo = reduce_many(t, rs, Mode.R, 1, Fuel(max_steps=5))
        assert len(lo) == 5 and lo[-1].target == t
        full = reduce_many(t, rs, Mode.R, 1, Fuel(max_steps=5),
                           strategy=Strategy.FULL_ENUMERATION_FIRST)
        assert [s.rule for s in full] == ["r2"]

    def test_stable_level(self):
        eng = Engine(TREE)
        t = t_(TREE, "occ (cons zero nil) (node zero nil)")
        level, stable = eng.stable_level(t, Mode.R)
        assert stable and level == 2


def generated(rs, gen_factory):
    return st.integers(0, 10_000).map(lambda seed: gen_factory(rs, seed=seed,
                                                               max_size=10).term())


TREE_TERMS = generated(TREE, tree_generator)
TERMSYS_TERMS = generated(TERMSYS, termsys_generator)


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(TREE_TERMS, st.integers(1, 3))
    def test_level_monotone(self, t, i):
        eng = Engine(TREE, SMALL)
        for mode in (Mode.R, Mode.BETA_RBETA):
            assert set(eng.reducts(t, mode, i)) <= set(eng.reducts(t, mode, i + 1))

    @settings(max_examples=60, deadline=None)
    @given(TERMSYS_TERMS, st.integers(1, 3))
    def test_mode_inclusions(self, t, i):
        eng = Engine(TERMSYS, SMALL)
        r, rb = set(eng.reducts(t, Mode.R, i)), set(eng.reducts(t, Mode.RBETA, i))
        br, brb = set(eng.reducts(t, Mode.BETA_R, i)), set(eng.reducts(t, Mode.BETA_RBETA, i))
        beta = set(eng.reducts(t, Mode.BETA, i))
        assert r <= rb and br <= brb and r <= br and rb <= brb and beta <= br
        assert brb == rb | beta

    @settings(max_examples=40, deadline=None)
    @given(TERMSYS_TERMS, st.integers(1, 2))
    def test_step_par_nested_star(self, t, i):
        eng = Engine(TERMSYS, SMALL)
        mode = Mode.BETA_RBETA
        one = set(eng.reducts(t, mode, i)) | {t}
        par = set(eng.parallel_closure_successors(t, mode, i))
        nested = set(eng.nested_parallel_successors(t, mode, i))
        assert one <= par <= nested
        star = Engine(TERMSYS, Fuel(max_steps=12, max_term_size=400, max_nodes=20000))
        reach = star.reachable(t, mode, i)
        assert all(u in reach for u in sorted(nested, key=lambda u: u.size)[:8])

    @settings(max_examples=30, deadline=None)
    @given(TERMSYS_TERMS)
    def test_deterministic(self, t):
        a = [s.as_dict() for s in Engine(TERMSYS, SMALL).successors(t, Mode.BETA_RBETA, 2)]
        b = [s.as_dict() for s in Engine(TERMSYS, SMALL).successors(t, Mode.BETA_RBETA, 2)]
        assert a == b

    @settings(max_examples=30, deadline=None)
    @given(TREE_TERMS)
    def test_derivations_replay(self, t):
        steps = reduce_many(t, TREE, Mode.BETA_RBETA, 3, SMALL)
        assert replay(steps, TREE, SMALL, Mode.BETA_RBETA)

    def test_functional_surface_matches_engine(self):
        t = t_(TREE, r"(\x. length x) (cons zero nil)")
        eng = Engine(TREE)
        assert parallel_closure_successors(t, TREE, Mode.BETA_R, 1) == \
            eng.parallel_closure_successors(t, Mode.BETA_R, 1)
        assert nested_parallel_successors(t, TREE, Mode.BETA_R, 1) == \
            eng.nested_parallel_successors(t, Mode.BETA_R, 1)
