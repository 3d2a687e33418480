"""Conditional critical pairs, orthonormality and bounded feasibility probing."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from .common import DEFAULT_FUEL, Fuel
from .rewrite import Engine, Joinable, Mode
from .terms import (Sym, Term, Var, format_position, free_vars, fresh_name, has_beta_redex,
                    is_closed, is_linear, mk_app, position_key, positions, pretty, rename_vars,
                    replace_at, subterm_at, substitute, symbols)
from .unify import UnifyStatus, unify_all


@dataclass(frozen=True)
class CriticalPair:
    conditions: tuple  # ((d, c), ...): outer rule's first, then inner rule's
    left: Term  # outer lhs with the inner rhs plugged in at the overlap
    right: Term  # outer rhs
    overlap: tuple  # (outer rule name, inner rule name, position)
    trivial: bool

    def __str__(self):
        conds = " ∧ ".join(f"{pretty(d)} = {pretty(c)}" for d, c in self.conditions)
        peak = f"({pretty(self.left)}, {pretty(self.right)})"
        return f"{conds} ⊃ {peak}" if conds else peak

    def as_dict(self):
        outer, inner, pos = self.overlap
        return {"outer": outer, "inner": inner, "position": format_position(pos),
                "conditions": [[pretty(d), pretty(c)] for d, c in self.conditions],
                "left": pretty(self.left), "right": pretty(self.right),
                "trivial": self.trivial}


def rename_apart(rule, avoid) -> tuple:
    """Rename the variables of ``rule`` away from ``avoid`` by priming them."""
    taken = set(avoid)
    mapping = {}
    for v in sorted(set().union(*(free_vars(t) for t in rule.terms()))):
        new = fresh_name(v, taken)
        taken.add(new)
        mapping[v] = new
    ren = lambda t: rename_vars(t, mapping)  # noqa: E731
    return (ren(rule.lhs), ren(rule.rhs),
            tuple((ren(d), ren(c)) for d, c in rule.conditions))


def overlaps(outer, inner, same: bool) -> list:
    """Critical pairs from plugging ``inner`` into ``outer``'s lhs."""
    out = []
    outer_vars = set().union(*(free_vars(t) for t in outer.terms()))
    il, ir, iconds = rename_apart(inner, outer_vars)
    for p in positions(outer.lhs):
        sub = subterm_at(outer.lhs, p)
        if type(sub) is Var or (same and p == ()):
            continue
        u = unify_all([(il, sub)])
        if u.status is not UnifyStatus.SOME:
            continue
        s = u.mgu
        left = substitute(replace_at(outer.lhs, p, ir), s)
        right = substitute(outer.rhs, s)
        conds = tuple((substitute(d, s), substitute(c, s))
                      for d, c in tuple(outer.conditions) + iconds)
        out.append(CriticalPair(conds, left, right, (outer.name, inner.name, p), left == right))
    return out


def critical_pairs(rs) -> list:
    """All conditional critical pairs, in (outer, inner, position) order.

    A root overlap between two distinct rules is reported once, with the
    later rule as the outer one.
    """
    out = []
    rules = rs.rules
    for j, outer in enumerate(rules):
        for i, inner in enumerate(rules):
            for cp in overlaps(outer, inner, i == j):
                if cp.overlap[2] == () and i > j:
                    continue
                out.append(cp)
    out.sort(key=lambda cp: (cp.overlap[0], cp.overlap[1], position_key(cp.overlap[2])))
    return out


def exclusive_pair(cp: CriticalPair) -> Optional[tuple]:
    """First ``(i, j)`` (1-based) with ``d_i = d_j`` and ``c_i != c_j``."""
    for (i, (di, ci)), (j, (dj, cj)) in itertools.combinations(enumerate(cp.conditions, 1), 2):
        if di == dj and ci != cj:
            return i, j
    return None


@dataclass(frozen=True)
class Orthonormality:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def orthonormal_check(rs) -> Orthonormality:
    for r in rs.rules:
        if not is_linear(r.lhs):
            return Orthonormality(False, f"not left-linear: rule {r.name}")
    defined = rs.defined_symbols
    for r in rs.rules:
        for _d, c in r.conditions:
            why = None
            if not is_closed(c):
                why = "is not closed"
            elif has_beta_redex(c):
                why = "is not beta-normal"
            elif symbols(c) & defined:
                why = "contains a defined symbol"
            if why:
                return Orthonormality(False, f"condition right-hand side {pretty(c)} "
                                             f"of rule {r.name} {why}")
    for cp in critical_pairs(rs):
        if exclusive_pair(cp) is None:
            outer, inner, p = cp.overlap
            return Orthonormality(False, f"critical pair of {outer} and {inner} at "
                                         f"{format_position(p)} has no exclusive conditions")
    return Orthonormality(True)


# feasibility


@dataclass(frozen=True)
class FeasibleWitness:
    sigma: dict
    traces: tuple  # Joinable verdicts, one per condition

    def __str__(self):
        s = ", ".join(f"{x} := {pretty(t)}" for x, t in sorted(self.sigma.items()))
        return f"FeasibleWitness({{{s}}})"


@dataclass(frozen=True)
class UnfeasibleByOrthonormality:
    i: int
    j: int

    def __str__(self):
        return f"UnfeasibleByOrthonormality({self.i}, {self.j})"


@dataclass(frozen=True)
class UnknownWithinBudget:
    tried: int

    def __str__(self):
        return f"UnknownWithinBudget(tried={self.tried})"


FeasibilityVerdict = Union[FeasibleWitness, UnfeasibleByOrthonormality, UnknownWithinBudget]


def ground_terms(rs, max_size: int, limit: int) -> list:
    """Closed algebraic terms of the signature, smallest first.

    With a declared arity only well-formed applications are built; otherwise
    every symbol is tried with up to two arguments.
    """
    alpha = rs.alpha
    names = sorted(rs.signature)
    arities = {f: ([alpha[f]] if alpha else [0, 1, 2]) for f in names}
    by_size: dict = {}
    out = []
    for size in range(1, max_size + 1):
        level = []
        for f in names:
            for n in arities[f]:
                if n == 0 and size == 1:
                    level.append(Sym(f))
                elif n > 0 and size > n:
                    for sizes in _compositions(size - 1, n):
                        pools = [by_size.get(k, []) for k in sizes]
                        for args in itertools.product(*pools):
                            level.append(mk_app(Sym(f), *args))
                            if len(out) + len(level) >= limit:
                                break
        by_size[size] = level
        out.extend(level)
        if len(out) >= limit:
            return out[:limit]
    return out


def _compositions(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for k in range(1, total - parts + 2):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def _inert(c: Term, rs) -> bool:
    """Closed, beta-normal and free of defined symbols: no relation moves it."""
    return is_closed(c) and not has_beta_redex(c) and not (symbols(c) & rs.defined_symbols)


def probe_feasibility(cp: CriticalPair, rs, mode: Mode = Mode.BETA_RBETA, level: int = 3,
                      fuel: Fuel = DEFAULT_FUEL, generator_budget: int = 200) -> FeasibilityVerdict:
    """Look for a substitution making every condition of ``cp`` joinable.

    A pair with two conditions ``d = c`` and ``d = c'``, ``c != c'`` closed
    normal constructor terms, cannot be satisfied by a confluent relation.
    """
    excl = exclusive_pair(cp)
    if excl is not None and all(_inert(cp.conditions[k - 1][1], rs) for k in excl):
        return UnfeasibleByOrthonormality(*excl)
    xs = sorted(set().union(*(free_vars(d) | free_vars(c) for d, c in cp.conditions))
                if cp.conditions else set())
    eng = Engine(rs, fuel)
    pool = ground_terms(rs, 5, max(generator_budget, 1))
    tried = 0
    for values in itertools.product(pool, repeat=len(xs)):
        if tried >= generator_budget:
            break
        tried += 1
        sigma = dict(zip(xs, values))
        traces = []
        for d, c in cp.conditions:
            v = eng.join(substitute(d, sigma), substitute(c, sigma), mode, level)
            if not isinstance(v, Joinable):
                break
            traces.append(v)
        else:
            return FeasibleWitness(sigma, tuple(traces))
    return UnknownWithinBudget(tried)


__all__ = [
    "CriticalPair", "FeasibleWitness", "FeasibilityVerdict", "Orthonormality",
    "UnfeasibleByOrthonormality", "UnknownWithinBudget", "critical_pairs", "exclusive_pair",
    "ground_terms", "orthonormal_check", "overlaps", "probe_feasibility", "rename_apart",
]
