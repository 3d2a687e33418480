"""Conditional rewrite rules and rule systems."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .terms import (Lam, MissingArity, Sym, Term, arity_violations, free_vars, is_algebraic,
                    pretty, spine, symbols)


@dataclass(frozen=True)
class Symbol:
    name: str
    declared_arity: Optional[int] = None

    def __post_init__(self):
        if self.declared_arity is not None and self.declared_arity < 0:
            raise ValueError(f"negative arity for {self.name}")


@dataclass(frozen=True)
class CondRule:
    """``d1 = c1 & ... & dn = cn  =>  lhs -> rhs``."""

    name: str
    lhs: Term
    rhs: Term
    conditions: tuple = ()  # tuple of (d, c) pairs

    @property
    def head(self) -> Optional[str]:
        h, _ = spine(self.lhs)
        return h.name if type(h) is Sym else None

    @property
    def is_unconditional(self) -> bool:
        return not self.conditions

    def terms(self):
        yield self.lhs
        yield self.rhs
        for d, c in self.conditions:
            yield d
            yield c

    def __str__(self):
        return format_rule(self)


def format_rule(rule: CondRule) -> str:
    conds = " & ".join(f"{pretty(d)} = {pretty(c)}" for d, c in rule.conditions)
    core = f"{pretty(rule.lhs)} -> {pretty(rule.rhs)}"
    return f"{conds} => {core}" if conds else core


@dataclass(frozen=True)
class RuleSystem:
    symbols: tuple  # tuple[Symbol, ...]
    rules: tuple  # tuple[CondRule, ...]
    name: str = field(default="", compare=False)

    @property
    def signature(self) -> frozenset:
        return frozenset(s.name for s in self.symbols)

    @property
    def alpha(self) -> Optional[dict]:
        """The declared arity map, or None unless every symbol has one."""
        if self.symbols and all(s.declared_arity is not None for s in self.symbols):
            return {s.name: s.declared_arity for s in self.symbols}
        return None

    @property
    def defined_symbols(self) -> frozenset:
        return frozenset(r.head for r in self.rules if r.head is not None)

    @property
    def constructors(self) -> frozenset:
        return self.signature - self.defined_symbols

    def rule(self, name: str) -> CondRule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def with_rules(self, rules, name: str = "") -> "RuleSystem":
        return RuleSystem(self.symbols, tuple(rules), name or self.name)


def make_system(rules, arity: Mapping = None, extra_symbols=(), name: str = "") -> RuleSystem:
    """Build a system whose signature is every symbol the rules mention."""
    names = set(extra_symbols)
    for r in rules:
        for t in r.terms():
            names |= symbols(t)
    if arity:
        names |= set(arity)
    syms = tuple(Symbol(n, arity.get(n) if arity else None) for n in sorted(names))
    return RuleSystem(syms, tuple(rules), name)


@dataclass(frozen=True)
class Violation:
    rule: str
    kind: str  # LhsIsVariable | LhsNotAlgebraic | ExtraVariable | UndeclaredSymbol | DuplicateName
    detail: str = ""

    def __str__(self):
        return f"{self.rule}: {self.kind}" + (f"({self.detail})" if self.detail else "")


def validate(rs: RuleSystem) -> list:
    out = []
    seen = set()
    sig = rs.signature
    for r in rs.rules:
        if r.name in seen:
            out.append(Violation(r.name, "DuplicateName"))
        seen.add(r.name)
        h, _ = spine(r.lhs)
        lhs_vars = free_vars(r.lhs)
        if not is_algebraic(r.lhs):
            out.append(Violation(r.name, "LhsNotAlgebraic", pretty(r.lhs)))
        elif type(h) is not Sym:
            out.append(Violation(r.name, "LhsIsVariable", pretty(r.lhs)))
        extra = set()
        for t in r.terms():
            extra |= free_vars(t) - lhs_vars
        for v in sorted(extra):
            out.append(Violation(r.name, "ExtraVariable", v))
        used = set()
        for t in r.terms():
            used |= symbols(t)
        for s in sorted(used - sig):
            out.append(Violation(r.name, "UndeclaredSymbol", s))
    return out


def respects_arity_system(rs: RuleSystem, alpha: Mapping = None) -> bool:
    """Every lhs applies its head to exactly alpha(f) arguments and every
    term of every rule respects alpha."""
    alpha = rs.alpha if alpha is None else alpha
    if alpha is None:
        missing = sorted(s.name for s in rs.symbols if s.declared_arity is None)
        raise MissingArity(missing[0] if missing else "?")
    return not arity_problems(rs, alpha)


def arity_problems(rs: RuleSystem, alpha: Mapping) -> list:
    out = []
    for r in rs.rules:
        h, args = spine(r.lhs)
        if type(h) is Sym:
            if h.name not in alpha:
                raise MissingArity(h.name)
            if len(args) != alpha[h.name]:
                out.append(f"{r.name}: lhs applies {h.name} to {len(args)} arguments, "
                           f"arity is {alpha[h.name]}")
        for t in r.terms():
            for f, n in arity_violations(t, alpha):
                out.append(f"{r.name}: {f} applied to {n} arguments in {pretty(t)}")
    return out


def stability_system(rs: RuleSystem) -> RuleSystem:
    """Unconditional system pairing each lhs with each condition lhs and with
    its rhs; conditional stability of a term set is stability under it."""
    out = []
    for r in rs.rules:
        for k, (d, _c) in enumerate(r.conditions, 1):
            out.append(CondRule(f"{r.name}.d{k}", r.lhs, d))
        out.append(CondRule(f"{r.name}.r", r.lhs, r.rhs))
    return rs.with_rules(out, (rs.name + "-bar") if rs.name else "")


def infer_arity(rs: RuleSystem) -> Optional[dict]:
    """Arity read off the rules: lhs spine length for defined symbols, the
    longest observed spine for the others. None when lhs spines disagree or
    the result would not be respected."""
    alpha: dict = {s.name: 0 for s in rs.symbols}
    defined: dict = {}
    for r in rs.rules:
        h, args = spine(r.lhs)
        if type(h) is not Sym:
            return None
        if defined.setdefault(h.name, len(args)) != len(args):
            return None
    for r in rs.rules:
        for t in r.terms():
            _observe_spines(t, alpha)
    for f, n in defined.items():
        if alpha.get(f, 0) > n:
            return None
        alpha[f] = n
    if arity_problems(rs, alpha):
        return None
    return alpha


def _observe_spines(t: Term, alpha: dict):
    stack = [t]
    while stack:
        u = stack.pop()
        h, args = spine(u)
        if type(h) is Sym:
            alpha[h.name] = max(alpha.get(h.name, 0), len(args))
        elif type(h) is Lam:
            stack.append(h.body)
        stack.extend(args)
