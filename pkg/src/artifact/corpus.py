"""The built-in corpus: example systems with machine-checkable claims."""
from __future__ import annotations

from .classify import applicable_theorems, classify_system
from .common import Fuel, Tri
from .critical import UnfeasibleByOrthonormality, critical_pairs, orthonormal_check, \
    probe_feasibility
from .lab import (Claim, CorpusEntry, HypothesisViolated, SortedGenerator, check_peak,
                  check_projection_bnf, check_shallow_confluence, factorizes)
from .rewrite import Engine, Joinable, Mode, Refuted
from .rulefile import load_builtin
from .terms import parse_term, pretty, respects_arity

Y_SUCC = r"(\x. succ (x x)) (\x. succ (x x))"
OMEGA_SUCC = r"\x. succ (x x)"

_TREE_SORTS = {
    "zero": [((), "nat")],
    "succ": [(("nat",), "nat")],
    "true": [((), "bool")],
    "false": [((), "bool")],
    "nil": [((), "nlist"), ((), "tlist")],
    "cons": [(("nat", "nlist"), "nlist"), (("tree", "tlist"), "tlist")],
    "node": [(("nat", "tlist"), "tree")],
    "car": [(("nlist",), "nat"), (("tlist",), "tree")],
    "cdr": [(("nlist",), "nlist"), (("tlist",), "tlist")],
    "get": [(("nlist", "nat"), "nat"), (("tlist", "nat"), "tree")],
    "length": [(("nlist",), "nat"), (("tlist",), "nat")],
    "gt": [(("nat", "nat"), "bool")],
    "occ": [(("nlist", "tree"), "bool")],
}

TREE_SORTS = dict(_TREE_SORTS)

TERMSYS_SORTS = dict(_TREE_SORTS, **{
    "filter": [((("->", "nat", "bool"), "nlist"), "nlist"),
               ((("->", "tree", "bool"), "tlist"), "tlist")],
    "apply": [((("->", "tree", "tree"), "nat", "tlist"), "tlist")],
    "app": [((("->", "tree", "tree"), "nat", "tlist"), "tlist")],
    "replace": [(("tree", "nlist", "tree"), "tree")],
    "rep": [(("tree", "nlist", "tree"), "tree")],
})

ROOT_SORTS = ("nat", "bool", "nlist", "tlist", "tree")


def tree_generator(rs, seed: int = 0, **kw) -> SortedGenerator:
    kw.setdefault("prefer", ("occ",))
    kw.setdefault("rule_weight", 0.8)
    return SortedGenerator(rs, TREE_SORTS, ROOT_SORTS, seed=seed, **kw)


def termsys_generator(rs, seed: int = 0, **kw) -> SortedGenerator:
    kw.setdefault("prefer", ("occ", "replace", "apply", "filter"))
    kw.setdefault("rule_weight", 0.5)
    return SortedGenerator(rs, TERMSYS_SORTS, ROOT_SORTS, seed=seed, **kw)


def _t(rs, text):
    return parse_term(text, rs.signature)


def _flag(rs, name, want: Tri):
    def check():
        got = getattr(classify_system(rs), name)
        return got.value is want, f"{name} = {got.value.value} ({got.reason})"
    return Claim(f"{name} is {want.value}", check)


def _theorems(rs, want):
    def check():
        got = applicable_theorems(classify_system(rs)).applicable
        return set(want) <= set(got) if want else not got, f"applicable: {list(got) or 'none'}"
    return Claim(f"applicable theorems include {list(want) or 'none'}" if want
                 else "no theorem applies", check)


def _orthonormal(rs, want: bool):
    def check():
        got = orthonormal_check(rs)
        return got.ok is want, got.reason or "orthonormal"
    return Claim(f"orthonormal is {str(want).lower()}", check)


def _peak(rs, t, u, v, mode, level, fuel, want=Refuted):
    def check():
        rep = check_peak(_t(rs, t), _t(rs, u), _t(rs, v), rs, mode, mode, level, level, fuel)
        if want is None:
            return rep.ok, str(rep)
        if not rep.failures:
            return False, "peak joins"
        verdict = rep.failures[0].verdict
        return verdict.startswith(want.__name__) if want else True, verdict
    return Claim(f"peak {u} <- {t} -> {v} is not joinable", check)


def _entry_minus():
    rs = load_builtin("minus").system
    fuel = Fuel(max_steps=6, max_term_size=60, max_nodes=2000)
    t = f"minus ({Y_SUCC}) ({Y_SUCC})"
    return CorpusEntry("ex-minus", rs, (
        _peak(rs, t, "succ zero", "zero", Mode.BETA_R, 1, fuel),
        Claim("no critical pairs (occurs-check)",
              lambda: (not critical_pairs(rs), f"{len(critical_pairs(rs))} pairs")),
        _flag(rs, "left_linear", Tri.FALSE),
    ))


def _entry_minus_cond():
    rs = load_builtin("minus_cond").system
    fuel = Fuel(max_steps=6, max_term_size=60, max_nodes=2000)
    t = f"minus ({Y_SUCC}) ({Y_SUCC})"
    return CorpusEntry("ex-minus-cond", rs, (
        _flag(rs, "semi_closed", Tri.FALSE),
        _theorems(rs, ()),
        _peak(rs, t, "succ zero", "zero", Mode.BETA_R, 2, fuel),
    ))


def _entry_dough():
    rs = load_builtin("dough").system
    alpha = rs.alpha
    t = f"minus (id ({OMEGA_SUCC}) ({OMEGA_SUCC})) (id ({OMEGA_SUCC}) ({OMEGA_SUCC}))"

    def projection_refused():
        try:
            check_projection_bnf(rs, alpha, _t(rs, t), [])
        except HypothesisViolated as exc:
            return True, str(exc)
        return False, "projection accepted a term outside AN"

    return CorpusEntry("ex-dough", rs, (
        Claim("id W W violates the arity of id",
              lambda: (not respects_arity(_t(rs, f"id ({OMEGA_SUCC}) ({OMEGA_SUCC})"), alpha),
                       "checked")),
        Claim("projection hypothesis fails on minus (id W W) (id W W)", projection_refused),
        _peak(rs, t, "succ zero", "zero", Mode.BETA_R, 1,
              Fuel(max_steps=8, max_term_size=80, max_nodes=4000)),
    ))


def _entry_bconfl(k: int):
    rs = load_builtin(f"bconfl{k}").system
    fuel = Fuel(max_steps=8, max_term_size=60, max_nodes=4000)
    t, a, b = _t(rs, r"f (\x. d)"), _t(rs, r"a (\x. d)"), _t(rs, r"b (\x. d)")

    def steps():
        eng = Engine(rs, fuel)
        got_a = a in eng.reducts(t, Mode.RBETA, 2)
        got_b = b in eng.reducts(t, Mode.RBETA, 1)
        return got_a and got_b, f"a-step at level 2: {got_a}, b-step at level 1: {got_b}"

    def r_only():
        eng = Engine(rs, fuel)
        hit = [lv for lv in range(1, 6) if a in eng.reducts(t, Mode.R, lv)]
        return not hit, f"R-levels reaching a: {hit or 'none'}"

    def unjoinable():
        v = Engine(rs, fuel).join(a, b, Mode.BETA_RBETA, 5)
        return not isinstance(v, Joinable), str(v)

    def no_factor():
        found, complete = factorizes(rs, t, a, 6)
        return not found, f"factorization found: {found}, exhaustive: {complete}"

    return CorpusEntry(f"ex-Bconfl-{k}", rs, (
        Claim("f (\\x. d) steps to a (\\x. d) and b (\\x. d) under R(beta)", steps),
        Claim("the a-step is not an R-step", r_only),
        Claim("the peak does not join under beta ∪ R(beta)", unjoinable),
        Claim("the a-step does not factor through beta* R* beta*-expansion", no_factor),
        _orthonormal(rs, False),
    ))


def _entry_filter():
    rs = load_builtin("filter").system

    def evaluates():
        eng = Engine(rs, Fuel(max_steps=4))
        der = eng.reduce_many(_t(rs, "filter id (cons true nil)"), Mode.R, 2)
        return (bool(der) and der[-1].target == _t(rs, "cons true nil"),
                " ; ".join(pretty(s.target) for s in der))

    def needs_beta():
        eng = Engine(rs)
        t = _t(rs, r"filter (\x. x) (cons true nil)")
        r_steps = [lv for lv in range(1, 9) if eng.successors(t, Mode.R, lv)]
        rb = eng.successors(t, Mode.RBETA, 1)
        return not r_steps and len(rb) == 1, f"R levels with steps: {r_steps or 'none'}; " \
                                              f"R(beta) level-1 steps: {len(rb)}"

    return CorpusEntry("filter", rs, (
        Claim("filter id (cons true nil) evaluates to cons true nil", evaluates),
        Claim("filter (\\x. x) (cons true nil) needs beta in conditions", needs_beta),
    ))


def _entry_occ():
    rs = load_builtin("occ").system

    def one_cp():
        cps = critical_pairs(rs)
        want = "gt (length l) x = true ∧ gt (length l) x = false ⊃ (false, occ o (get l x))"
        return len(cps) == 1 and str(cps[0]) == want, "; ".join(map(str, cps))

    def unfeasible():
        v = probe_feasibility(critical_pairs(rs)[0], rs)
        return isinstance(v, UnfeasibleByOrthonormality), str(v)

    return CorpusEntry("ex-orthonormal-occ", rs, (
        Claim("exactly one critical pair, as displayed", one_cp),
        Claim("the critical pair is unfeasible by orthonormality", unfeasible),
    ))


def _entry_tree():
    rs = load_builtin("tree").system
    return CorpusEntry("tree", rs, (
        _flag(rs, "left_linear", Tri.TRUE),
        _flag(rs, "semi_closed", Tri.TRUE),
        _flag(rs, "algebraic", Tri.TRUE),
        _theorems(rs, ("beta-R/applicative",)),
    ))


def _entry_termsys():
    rs = load_builtin("termsys").system

    def peaks_join():
        gen = termsys_generator(rs, seed=7, max_size=10)
        rep = check_shallow_confluence(rs, gen.term, 10, fuel=Fuel(max_steps=8), seed=7)
        return rep.ok and not rep.truncated, str(rep)

    return CorpusEntry("tree-full", rs, (
        _orthonormal(rs, True),
        _theorems(rs, ("beta-Rbeta/orthonormal",)),
        Claim("sampled shallow-confluence peaks join", peaks_join),
    ))


def _entry_sp():
    rs = load_builtin("sp").system
    return CorpusEntry("sp", rs, (
        _flag(rs, "left_linear", Tri.FALSE),
        _theorems(rs, ()),
        _orthonormal(rs, False),
    ))


def build_corpus() -> list:
    return [_entry_minus(), _entry_minus_cond(), _entry_dough(),
            *(_entry_bconfl(k) for k in range(1, 5)),
            _entry_filter(), _entry_occ(), _entry_tree(), _entry_termsys(), _entry_sp()]


__all__ = ["OMEGA_SUCC", "ROOT_SORTS", "TERMSYS_SORTS", "TREE_SORTS", "Y_SUCC", "build_corpus",
           "termsys_generator", "tree_generator"]
