"""First-order matching and unification over algebraic terms.

Application is treated as an anonymous binary constructor, so two spines of
different lengths clash.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .terms import (App, Lam, Step, Sym, Term, Var, free_vars, is_algebraic, is_applicative,
                    substitute)


class NotAlgebraic(ValueError):
    pass


class NotAlgebraicPattern(NotAlgebraic):
    pass


def match_pattern(pattern: Term, subject: Term) -> Optional[dict]:
    """The unique ``s`` with ``pattern s == subject`` (up to alpha), or None.

    Non-linear patterns require every occurrence of a variable to be bound to
    alpha-equal subterms; subjects may be arbitrary lambda-terms.
    """
    if not is_algebraic(pattern):
        raise NotAlgebraicPattern(str(pattern))
    return _match(pattern, subject, {})


def _match(p: Term, t: Term, s: dict) -> Optional[dict]:
    tp = type(p)
    if tp is Var:
        bound = s.get(p.name)
        if bound is None:
            s[p.name] = t
            return s
        return s if bound == t else None
    if tp is Sym:
        return s if t == p else None
    # App: an algebraic pattern only has Var/Sym/App nodes
    if type(t) is not App:
        return None
    if _match(p.fun, t.fun, s) is None:
        return None
    return _match(p.arg, t.arg, s)


def find_redexes(rs, t: Term) -> list:
    """All ``(position, rule, substitution)`` whose lhs matches, conditions
    unchecked, in leftmost-outermost order then rule order."""
    out = []
    stack = [((), t)]
    while stack:
        p, u = stack.pop()
        for r in rs.rules:
            s = _match(r.lhs, u, {})
            if s is not None:
                out.append((p, r, s))
        if type(u) is App:
            stack.append((p + (Step.ARG,), u.arg))
            stack.append((p + (Step.FUN,), u.fun))
        elif type(u) is Lam:
            stack.append((p + (Step.BODY,), u.body))
    return out


class UnifyStatus(enum.Enum):
    SOME = "some"
    CLASH = "clash"
    OCCURS_CHECK = "occurs-check"


@dataclass(frozen=True)
class Unifier:
    status: UnifyStatus
    mgu: Optional[dict] = None

    def __bool__(self):
        return self.status is UnifyStatus.SOME


def unify(t: Term, u: Term) -> Unifier:
    """Robinson unification with occurs-check; the mgu returned is idempotent."""
    for x in (t, u):
        if not is_applicative(x):
            raise NotAlgebraic(str(x))
    return unify_all([(t, u)])


def unify_all(equations) -> Unifier:
    s: dict = {}
    work = list(equations)
    while work:
        a, b = work.pop()
        a, b = _walk(a, s), _walk(b, s)
        if a == b:
            continue
        if type(a) is Var or type(b) is Var:
            v, other = (a, b) if type(a) is Var else (b, a)
            if v.name in free_vars(_resolve(other, s)):
                return Unifier(UnifyStatus.OCCURS_CHECK)
            s[v.name] = other
            continue
        if type(a) is App and type(b) is App:
            work.append((a.arg, b.arg))
            work.append((a.fun, b.fun))
            continue
        return Unifier(UnifyStatus.CLASH)
    return Unifier(UnifyStatus.SOME, {x: _resolve(v, s) for x, v in s.items()})


def _walk(t: Term, s: dict) -> Term:
    while type(t) is Var and t.name in s:
        t = s[t.name]
    return t


def _resolve(t: Term, s: dict) -> Term:
    fv = free_vars(t)
    if not fv.intersection(s):
        return t
    return _resolve(substitute(t, {x: s[x] for x in fv if x in s}), s)


__all__ = ["NotAlgebraic", "NotAlgebraicPattern", "Unifier", "UnifyStatus", "find_redexes",
           "match_pattern", "unify", "unify_all"]
