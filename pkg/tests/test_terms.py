import pytest
from hypothesis import given, settings, strategies as st

from artifact.terms import (App, Bound, Lam, ParseError, Step, Sym, TermClass, Var,
                            arity_violations, classify_term, close, format_position,
                            free_vars, head_decompose, instantiate, is_algebraic,
                            is_applicative, is_linear, lam, mk_app, parse_position, parse_term,
                            positions, pretty, rebuild, replace_at, respects_arity, substitute,
                            subterm_at)

from strategies import SIGNATURE, lambda_terms

SIG = {"f", "g", "a", "b", "succ", "zero"}


def p(text):
    return parse_term(text, SIG)


class TestSyntax:
    def test_symbols_and_variables(self):
        assert p("f x") == App(Sym("f"), Var("x"))

    def test_application_is_left_associative(self):
        assert p("g a b") == App(App(Sym("g"), Sym("a")), Sym("b"))

    def test_lambda_extends_right(self):
        assert p(r"\x. f x a") == Lam(App(App(Sym("f"), Bound(0)), Sym("a")))

    def test_multi_binder_and_unicode_lambda(self):
        assert p(r"\x y. x") == p("λx. λy. x") == Lam(Lam(Bound(1)))

    def test_trailing_lambda_argument(self):
        assert p(r"f \x. x") == App(Sym("f"), Lam(Bound(0)))

    def test_alpha_equivalence_is_equality(self):
        assert p(r"\x. x") == p(r"\y. y")
        assert hash(p(r"\x. g x a")) == hash(p(r"\z. g z a"))
        assert p(r"\x. x") != p(r"\x. y")

    def test_pretty_avoids_capture(self):
        t = Lam(App(Var("x"), Bound(0)), "x")
        assert pretty(t) == r"\x'. x x'"

    def test_pretty_parenthesization(self):
        assert pretty(p(r"(\x. x) (f (g a b))")) == r"(\x. x) (f (g a b))"

    @pytest.mark.parametrize("text,line,col", [("f (", 1, 4), ("f )", 1, 3), ("f $", 1, 3),
                                               ("a\n  (b", 2, 5)])
    def test_parse_errors_carry_locations(self, text, line, col):
        with pytest.raises(ParseError) as info:
            p(text)
        assert (info.value.line, info.value.col) == (line, col)

    @given(lambda_terms())
    def test_pretty_parse_round_trip(self, t):
        assert parse_term(pretty(t), SIGNATURE) == t


class TestPositions:
    def test_preorder_leftmost_outermost(self):
        t = p("g (f a) b")
        got = [format_position(q) for q in positions(t)]
        assert got == ["root", "root.Fun", "root.Fun.Fun", "root.Fun.Arg", "root.Fun.Arg.Fun",
                       "root.Fun.Arg.Arg", "root.Arg"]

    def test_parse_position_round_trip(self):
        q = (Step.FUN, Step.ARG, Step.BODY)
        assert parse_position(format_position(q)) == q

    def test_replace_and_subterm(self):
        t = p("g (f a) b")
        q = (Step.FUN, Step.ARG)
        assert subterm_at(t, q) == p("f a")
        assert replace_at(t, q, Sym("b")) == p("g b b")

    def test_invalid_position(self):
        with pytest.raises(ValueError):
            subterm_at(Sym("a"), (Step.FUN,))

    @given(lambda_terms())
    def test_replace_own_subterm_is_identity(self, t):
        for q in positions(t):
            assert replace_at(t, q, subterm_at(t, q)) == t


class TestSubstitution:
    def test_capture_avoiding(self):
        t = p(r"\y. g x y")
        assert substitute(t, {"x": Var("y")}) == Lam(App(App(Sym("g"), Var("y")), Bound(0)))
        assert pretty(substitute(t, {"x": Var("y")})) == r"\y'. g y y'"

    def test_simultaneous(self):
        assert substitute(p("g x y"), {"x": Var("y"), "y": Var("x")}) == p("g y x")

    def test_instantiate_is_beta(self):
        assert instantiate(p(r"\y. g x y").body, Sym("a")) == p("g x a")
        assert instantiate(Lam(App(Bound(1), Bound(0))), p(r"\z. z")) == Lam(App(p(r"\z. z"),
                                                                                  Bound(0)))

    def test_close_then_instantiate(self):
        t = p("g x (f x)")
        assert instantiate(close(t, "x"), Sym("a")) == p("g a (f a)")
        assert lam("x", t) == p(r"\x. g x (f x)")

    @given(lambda_terms(), lambda_terms(), lambda_terms())
    def test_substitution_lemma(self, t, u, v):
        # t[x:=u][y:=v] == t[y:=v][x:=u[y:=v]]  (x not free in v)
        v = substitute(v, {"x": Sym("a")})
        lhs = substitute(substitute(t, {"x": u}), {"y": v})
        rhs = substitute(substitute(t, {"y": v}), {"x": substitute(u, {"y": v})})
        assert lhs == rhs

    @given(lambda_terms(), lambda_terms())
    def test_instantiate_agrees_with_substitution(self, t, u):
        body = close(substitute(t, {"z": Sym("b")}), "x")
        assert instantiate(body, u) == substitute(substitute(t, {"z": Sym("b")}), {"x": u})

    @given(lambda_terms())
    def test_free_vars_after_substitution(self, t):
        s = substitute(t, {"x": Sym("a")})
        assert free_vars(s) == free_vars(t) - {"x"}


class TestClasses:
    @pytest.mark.parametrize("text,cls", [("g x (f a)", TermClass.ALGEBRAIC),
                                          ("x a", TermClass.APPLICATIVE_ONLY),
                                          (r"f (\x. x)", TermClass.GENERAL)])
    def test_classify(self, text, cls):
        assert classify_term(p(text)) is cls

    def test_algebraic_implies_applicative(self):
        assert is_applicative(p("x a")) and not is_algebraic(p("x a"))

    def test_linearity(self):
        assert is_linear(p("g x y")) and not is_linear(p("g x x"))

    def test_arity(self):
        alpha = {"f": 1, "g": 2, "a": 0}
        assert respects_arity(p("g (f a) a"), alpha)
        assert arity_violations(p("f a a"), alpha) == [("f", 2)]
        assert not respects_arity(p(r"(\x. f x a) a"), alpha)


class TestHeadForm:
    def test_shapes(self):
        hf = head_decompose(p(r"\x. (\y. y) a x"))
        assert hf.shape == "b" and hf.outer_binders == ("x",) and len(hf.args) == 1
        assert head_decompose(p("g a b")).shape == "a"

    @given(lambda_terms())
    def test_rebuild_inverts_decompose(self, t):
        assert rebuild(head_decompose(t)) == t

    def test_mk_app(self):
        assert mk_app(Sym("g"), Sym("a"), Sym("b")) == p("g a b")

    @settings(max_examples=50)
    @given(st.integers(0, 5))
    def test_bound_levels(self, n):
        t = Bound(n)
        for _ in range(n + 1):
            t = Lam(t)
        assert free_vars(t) == frozenset() and t.loose == 0
