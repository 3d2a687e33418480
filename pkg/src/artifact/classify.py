"""Syntactic classification of conditional systems and the table of
confluence results whose hypotheses they meet."""
from __future__ import annotations

from dataclasses import dataclass, field

from .common import Tri
from .critical import orthonormal_check
from .rules import RuleSystem, arity_problems
from .terms import (MissingArity, has_beta_redex, is_algebraic, is_applicative, is_closed,
                    is_linear, pretty, symbols)


@dataclass(frozen=True)
class Flag:
    value: Tri
    reason: str = ""

    def __bool__(self):
        return self.value is Tri.TRUE


FLAGS = ("left_linear", "semi_closed", "right_applicative", "right_algebraic", "applicative",
         "algebraic", "respects_arity", "normal", "orthonormal")


@dataclass(frozen=True)
class Classification:
    left_linear: Flag
    semi_closed: Flag
    right_applicative: Flag
    right_algebraic: Flag
    applicative: Flag
    algebraic: Flag
    respects_arity: Flag
    normal: Flag
    orthonormal: Flag

    def items(self):
        return [(name, getattr(self, name)) for name in FLAGS]

    def as_dict(self):
        return {name: {"value": f.value.value, "reason": f.reason} for name, f in self.items()}


def _first(rs, pred, what):
    """TRUE unless some rule fails ``pred``; the reason names the first one."""
    for r in rs.rules:
        bad = pred(r)
        if bad:
            return Flag(Tri.FALSE, f"rule {r.name}: {bad}")
    return Flag(Tri.TRUE, what)


def classify_system(rs: RuleSystem) -> Classification:
    defined = rs.defined_symbols

    def nonlinear(r):
        return "" if is_linear(r.lhs) else f"left-hand side {pretty(r.lhs)} repeats a variable"

    def open_or_lambda(r):
        for _d, c in r.conditions:
            if not is_applicative(c):
                return f"condition right-hand side {pretty(c)} is not applicative"
            if not is_closed(c):
                return f"condition right-hand side {pretty(c)} is not closed"
        return ""

    def rhs_not(test, kind):
        return lambda r: "" if test(r.rhs) else f"right-hand side {pretty(r.rhs)} is not {kind}"

    def conds_not(test, kind):
        def check(r):
            if not test(r.rhs):
                return f"right-hand side {pretty(r.rhs)} is not {kind}"
            for d, c in r.conditions:
                for t in (d, c):
                    if not test(t):
                        return f"condition term {pretty(t)} is not {kind}"
            return ""
        return check

    left_linear = _first(rs, nonlinear, "every left-hand side is linear")
    semi_closed = _first(rs, open_or_lambda,
                         "every condition right-hand side is applicative and closed")
    right_applicative = _first(rs, rhs_not(is_applicative, "applicative"),
                               "every right-hand side is applicative")
    right_algebraic = _first(rs, rhs_not(is_algebraic, "algebraic"),
                             "every right-hand side is algebraic")
    applicative = _first(rs, conds_not(is_applicative, "applicative"),
                         "right-hand sides and conditions are applicative")
    algebraic = _first(rs, conds_not(is_algebraic, "algebraic"),
                       "right-hand sides and conditions are algebraic")

    alpha = rs.alpha
    if alpha is None:
        missing = sorted(s.name for s in rs.symbols if s.declared_arity is None)
        respects = Flag(Tri.UNKNOWN, "no arity declared for " + ", ".join(missing))
    else:
        try:
            problems = arity_problems(rs, alpha)
        except MissingArity as exc:
            problems = [f"no arity for {exc}"]
        respects = (Flag(Tri.FALSE, problems[0]) if problems
                    else Flag(Tri.TRUE, "every rule respects the declared arity"))

    normal = Flag(Tri.TRUE, "condition right-hand sides are closed beta-normal constructor terms")
    for r in rs.rules:
        for _d, c in r.conditions:
            if not is_closed(c) or has_beta_redex(c) or symbols(c) & defined:
                normal = Flag(Tri.UNKNOWN, f"rule {r.name}: cannot certify that {pretty(c)} "
                                           f"is a closed normal form")
                break
        if normal.value is not Tri.TRUE:
            break

    ortho = orthonormal_check(rs)
    orthonormal = Flag(Tri.TRUE, "left-linear, inert conditions, exclusive critical pairs") \
        if ortho else Flag(Tri.FALSE, ortho.reason)

    return Classification(left_linear, semi_closed, right_applicative, right_algebraic,
                          applicative, algebraic, respects, normal, orthonormal)


@dataclass(frozen=True)
class Theorem:
    key: str
    hypotheses: tuple  # flag names that must be TRUE
    conclusion: str
    assumptions: str  # semantic hypotheses echoed, never checked


THEOREMS = (
    Theorem("beta-R/applicative", ("left_linear", "semi_closed", "right_applicative"),
            "beta ∪ R is confluent", "R is confluent"),
    Theorem("beta-R/normal", ("left_linear", "semi_closed", "normal"),
            "beta ∪ R is confluent", "R is confluent"),
    Theorem("beta-R/arity", ("algebraic", "respects_arity"),
            "beta ∪ R is confluent on AN", "R is confluent on AN"),
    Theorem("beta-Rbeta/stable",
            ("left_linear", "semi_closed", "algebraic", "respects_arity"),
            "beta ∪ R(beta) is confluent on conditionally stable sets",
            "R is confluent; terms range over a conditionally stable set"),
    Theorem("beta-Rbeta/arity", ("algebraic", "respects_arity"),
            "beta ∪ R(beta) is confluent on AN", "R is confluent on AN"),
    Theorem("beta-Rbeta/orthonormal", ("orthonormal",),
            "beta ∪ R(beta) is shallow confluent, hence confluent", "none"),
)


@dataclass(frozen=True)
class TheoremVerdict:
    applicable: tuple  # theorem keys
    hypotheses_unmet: dict = field(default_factory=dict)  # key -> tuple of flag names

    def as_dict(self):
        by_key = {t.key: t for t in THEOREMS}
        return {"applicable": [{"theorem": k, "conclusion": by_key[k].conclusion,
                                "assuming": by_key[k].assumptions} for k in self.applicable],
                "hypotheses_unmet": {k: list(v) for k, v in self.hypotheses_unmet.items()}}


def applicable_theorems(c: Classification) -> TheoremVerdict:
    ok, unmet = [], {}
    for th in THEOREMS:
        missing = tuple(h for h in th.hypotheses if not getattr(c, h))
        if missing:
            unmet[th.key] = missing
        else:
            ok.append(th.key)
    return TheoremVerdict(tuple(ok), unmet)


def format_report(c: Classification, v: TheoremVerdict) -> str:
    lines = [f"{name}: {f.value.value} ({f.reason})" for name, f in c.items()]
    by_key = {t.key: t for t in THEOREMS}
    if v.applicable:
        for k in v.applicable:
            th = by_key[k]
            lines.append(f"applies {k}: {th.conclusion} [assuming: {th.assumptions}]")
    else:
        lines.append("applies: none")
    for k, missing in v.hypotheses_unmet.items():
        lines.append(f"unmet {k}: {', '.join(missing)}")
    return "\n".join(lines) + "\n"


__all__ = ["Classification", "Flag", "THEOREMS", "Theorem", "TheoremVerdict",
           "applicable_theorems", "classify_system", "format_report"]
