import pytest
from hypothesis import given, settings, strategies as st

from artifact.rulefile import (ArityRedeclared, UndeclaredSymbol, builtin_names, load_builtin,
                               parse_rulefile, print_rulefile, rulefile_from_system)
from artifact.rules import (CondRule, Symbol, infer_arity, make_system, respects_arity_system,
                            stability_system, validate)
from artifact.terms import App, MissingArity, ParseError, Sym, free_vars, parse_term, substitute

from strategies import algebraic_terms

SIG = {"f", "g", "a", "b", "h"}


def p(text):
    return parse_term(text, SIG)


class TestSystems:
    def test_signature_and_defined(self):
        rs = make_system([CondRule("r", p("f x"), p("g x a"), ((p("h x"), p("b")),))])
        assert rs.signature == {"f", "g", "a", "h", "b"}
        assert rs.defined_symbols == {"f"}
        assert rs.constructors == {"g", "a", "h", "b"}
        assert rs.alpha is None

    def test_alpha_only_when_complete(self):
        rs = make_system([CondRule("r", p("f x"), p("a"))], arity={"f": 1, "a": 0})
        assert rs.alpha == {"f": 1, "a": 0}
        assert respects_arity_system(rs)

    def test_missing_arity(self):
        rs = make_system([CondRule("r", p("f x"), p("a"))])
        with pytest.raises(MissingArity):
            respects_arity_system(rs)

    def test_negative_arity(self):
        with pytest.raises(ValueError):
            Symbol("f", -1)

    @pytest.mark.parametrize("rule,kind", [
        (CondRule("r", p("x"), p("a")), "LhsIsVariable"),
        (CondRule("r", p(r"f (\u. u)"), p("a")), "LhsNotAlgebraic"),
        (CondRule("r", p("x a"), p("a")), "LhsNotAlgebraic"),
        (CondRule("r", p("f x"), p("y")), "ExtraVariable"),
        (CondRule("r", p("f x"), p("a"), ((p("y"), p("a")),)), "ExtraVariable"),
    ])
    def test_violations(self, rule, kind):
        assert [v.kind for v in validate(make_system([rule]))] == [kind]

    def test_duplicates_and_undeclared(self):
        rs = make_system([CondRule("r", p("f x"), p("a")), CondRule("r", p("g x y"), p("a"))])
        assert [v.kind for v in validate(rs)] == ["DuplicateName"]
        narrow = rs.with_rules((CondRule("s", p("f x"), Sym("k")),))
        assert [(v.kind, v.detail) for v in validate(narrow)] == [("UndeclaredSymbol", "k")]

    def test_stability_system(self):
        rs = make_system([CondRule("r", p("f x"), p("g x a"), ((p("h x"), p("b")),))])
        bar = stability_system(rs)
        assert [(r.name, str(r)) for r in bar.rules] == [("r.d1", "f x -> h x"),
                                                         ("r.r", "f x -> g x a")]

    def test_infer_arity(self):
        rs = load_builtin("tree").system
        assert infer_arity(rs) == rs.alpha
        bad = make_system([CondRule("r", p("f x"), p("a")), CondRule("s", p("f x y"), p("a"))])
        assert infer_arity(bad) is None

    @settings(max_examples=100)
    @given(st.lists(algebraic_terms(), min_size=1, max_size=4))
    def test_inferred_arity_is_respected(self, rhss):
        rules = [CondRule(f"r{i}", p("h x y z"), t) for i, t in enumerate(rhss)]
        alpha = infer_arity(make_system(rules))
        assert alpha is not None and alpha["h"] == 3
        assert respects_arity_system(make_system(rules, arity=alpha))


class TestRuleFiles:
    TEXT = """
    # comment
    system demo ;
    sig f/1 g/2 a/0 ;
    rule r1: f x -> g x a ;
    rule r2: g x y -> x if f x = a, f y = a ;
    claim orthonormal false ;
    """

    def test_parse(self):
        rf = parse_rulefile(self.TEXT)
        assert rf.name == "demo"
        assert [s.name for s in rf.symbols] == ["f", "g", "a"]
        assert rf.system.alpha == {"f": 1, "g": 2, "a": 0}
        assert str(rf.system.rule("r2")) == "f x = a & f y = a => g x y -> x"
        assert rf.claim("orthonormal") == "false"

    def test_round_trip(self):
        rf = parse_rulefile(self.TEXT)
        again = parse_rulefile(print_rulefile(rf))
        assert again == rf

    @pytest.mark.parametrize("name", builtin_names())
    def test_builtins_round_trip_and_validate(self, name):
        rf = load_builtin(name)
        assert parse_rulefile(print_rulefile(rf), rf.name) == rf
        assert validate(rf.system) == []

    def test_builtin_list(self):
        assert {"tree", "termsys", "filter", "occ", "minus", "minus_cond", "dough", "sp",
                "bconfl1", "bconfl2", "bconfl3", "bconfl4"} <= set(builtin_names())

    def test_undeclared_head(self):
        with pytest.raises(UndeclaredSymbol) as info:
            parse_rulefile("sig a ;\nrule r: f x -> a ;")
        assert (info.value.line, info.value.col) == (2, 9)

    def test_arity_redeclared(self):
        with pytest.raises(ArityRedeclared):
            parse_rulefile("sig f/1 f/2 ;")

    @pytest.mark.parametrize("text", ["sig f ; rule r f x -> a ;", "rule r: -> a ;",
                                      "bogus ;", "sig f/x ;", "sig f ; rule r: f x -> f"])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse_rulefile(text)

    def test_from_system(self):
        rs = load_builtin("minus").system
        assert rulefile_from_system(rs).system == rs

    @settings(max_examples=100)
    @given(st.lists(st.tuples(algebraic_terms(), algebraic_terms()), min_size=1, max_size=3))
    def test_generated_round_trip(self, pairs):
        rules = []
        for i, (lhs_arg, rhs) in enumerate(pairs):
            lhs = App(Sym("h"), lhs_arg)
            rhs = substitute(rhs, {v: Sym("a") for v in free_vars(rhs) - free_vars(lhs)})
            rules.append(CondRule(f"r{i}", lhs, rhs, ((rhs, Sym("b")),)))
        rf = rulefile_from_system(make_system(rules, name="gen"))
        assert parse_rulefile(print_rulefile(rf)) == rf
