"""Beta-reduction: single steps, parallel (Tait/Martin-Lof) steps, head steps,
leftmost-outermost normalization and the descent relation used for
induction on weakly normalizing terms."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from .common import DEFAULT_FUEL, Fuel
from .terms import (App, Lam, Position, Redex, Step, Term, head_decompose, instantiate,
                    mk_app, replace_at, respects_arity, subterm_at)


class NotARedex(ValueError):
    pass


def contract(t: Term) -> Term:
    """Contract the beta-redex at the root of ``t``."""
    if type(t) is not App or type(t.fun) is not Lam:
        raise NotARedex("root is not a beta-redex")
    return instantiate(t.fun.body, t.arg)


def beta_redexes(t: Term) -> list:
    out = []
    stack = [((), t)]
    while stack:
        p, u = stack.pop()
        if type(u) is App:
            if type(u.fun) is Lam:
                out.append(p)
            stack.append((p + (Step.ARG,), u.arg))
            stack.append((p + (Step.FUN,), u.fun))
        elif type(u) is Lam:
            stack.append((p + (Step.BODY,), u.body))
    return out


def beta_step_at(t: Term, p: Position) -> Term:
    try:
        sub = subterm_at(t, p)
    except ValueError as exc:
        raise NotARedex(str(exc)) from None
    if type(sub) is not App or type(sub.fun) is not Lam:
        raise NotARedex(f"no beta-redex at {p}")
    return replace_at(t, p, contract(sub))


def beta_successors(t: Term) -> list:
    """All one-step beta reducts, paired with the contracted position."""
    return [(p, beta_step_at(t, p)) for p in beta_redexes(t)]


@dataclass(frozen=True)
class TermSet:
    """A finite set of terms in deterministic order, flagged when cut short."""

    terms: tuple
    truncated: bool = False

    def __contains__(self, t):
        return t in self._index

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def _index(self):
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = frozenset(self.terms)
            object.__setattr__(self, "_idx", idx)
        return idx


def parallel_beta_successors(t: Term, fuel: Fuel = DEFAULT_FUEL) -> TermSet:
    """All ``u`` with ``t`` parallel-beta ``u`` (reflexive, nested redexes allowed)."""
    cap = fuel.max_nodes
    memo: dict = {}
    truncated = False

    def go(u):
        nonlocal truncated
        hit = memo.get(u)
        if hit is not None:
            return hit
        tp = type(u)
        if tp is App:
            fs, as_ = go(u.fun), go(u.arg)
            out = {}
            for f in fs:
                for a in as_:
                    out[App(f, a)] = None
                    if len(out) >= cap:
                        break
            if tp is App and type(u.fun) is Lam:
                for b in go(u.fun.body):
                    for a in as_:
                        out[instantiate(b, a)] = None
            if len(out) > cap:
                truncated = True
                out = dict(list(out.items())[:cap])
            res = tuple(out)
        elif tp is Lam:
            res = tuple(Lam(b, u.hint) for b in go(u.body))
        else:
            res = (u,)
        memo[u] = res
        return res

    terms = go(t)
    return TermSet(terms, truncated)


def head_step(t: Term) -> Optional[Term]:
    """Contract the head redex ``\\xs.(\\y.b) a0 a1..an``, if any."""
    prefix = []
    while type(t) is Lam:
        prefix.append(t.hint)
        t = t.body
    head_path = t
    args = []
    while type(head_path) is App:
        args.append(head_path.arg)
        head_path = head_path.fun
    if type(head_path) is not Lam or not args:
        return None
    args.reverse()
    body = mk_app(instantiate(head_path.body, args[0]), *args[1:])
    for hint in reversed(prefix):
        body = Lam(body, hint)
    return body


def lo_step(t: Term) -> Optional[Term]:
    """Contract the leftmost-outermost beta-redex, or None when t is beta-normal."""
    tp = type(t)
    if tp is App:
        if type(t.fun) is Lam:
            return instantiate(t.fun.body, t.arg)
        f = lo_step(t.fun)
        if f is not None:
            return App(f, t.arg)
        a = lo_step(t.arg)
        if a is not None:
            return App(t.fun, a)
        return None
    if tp is Lam:
        b = lo_step(t.body)
        return None if b is None else Lam(b, t.hint)
    return None


@dataclass(frozen=True)
class Normalized:
    term: Term
    steps: int


@dataclass(frozen=True)
class FuelExhausted:
    last: Term
    steps: int


BetaOutcome = Union[Normalized, FuelExhausted]


def lo_normalize(t: Term, fuel: Fuel = DEFAULT_FUEL):
    steps = 0
    while True:
        if t.size > fuel.max_term_size:
            return FuelExhausted(t, steps)
        nxt = lo_step(t)
        if nxt is None:
            return Normalized(t, steps)
        if steps >= fuel.max_steps:
            return FuelExhausted(t, steps)
        t = nxt
        steps += 1


def head_steps_to_normal(t: Term, fuel: Fuel = DEFAULT_FUEL) -> Optional[int]:
    """Number of head steps in the leftmost-outermost derivation of ``t``.

    The leftmost-outermost derivation performs head steps until the term is in
    head normal form, then normalizes the arguments from left to right.
    """
    budget = [fuel.max_steps]

    def count(u):
        n = 0
        while True:
            nxt = head_step(u)
            if nxt is None:
                break
            if budget[0] <= 0 or nxt.size > fuel.max_term_size:
                raise _OutOfFuel
            budget[0] -= 1
            n += 1
            u = nxt
        hf = head_decompose(u)
        return n + sum(count(a) for a in hf.args)

    try:
        return count(t)
    except _OutOfFuel:
        return None


class _OutOfFuel(Exception):
    pass


def succ_descendants(t: Term) -> list:
    """Immediate descendants of ``t`` under the well-founded relation.

    Case (a), ``\\xs. v a0..an``: each argument, possibly open in the binders;
    a head without arguments has none. Case (b), ``\\xs.(\\y.b) a0 a1..an``: its head contractum.
    """
    hf = head_decompose(t)
    if isinstance(hf.head, Redex):
        return [head_step(t)]
    return list(hf.args)


class AN(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ANVerdict:
    answer: AN
    bnf: Optional[Term] = None


def in_AN(t: Term, alpha: Mapping, fuel: Fuel = DEFAULT_FUEL) -> ANVerdict:
    """Is ``t`` beta-normalizing with a normal form that respects ``alpha``?"""
    out = lo_normalize(t, fuel)
    if isinstance(out, FuelExhausted):
        return ANVerdict(AN.UNKNOWN)
    if respects_arity(out.term, alpha):
        return ANVerdict(AN.YES, out.term)
    return ANVerdict(AN.NO, out.term)


def bnf(t: Term, fuel: Fuel = DEFAULT_FUEL) -> Optional[Term]:
    out = lo_normalize(t, fuel)
    return out.term if isinstance(out, Normalized) else None


__all__ = [
    "AN", "ANVerdict", "FuelExhausted", "NotARedex", "Normalized", "TermSet",
    "beta_redexes", "beta_step_at", "beta_successors", "bnf", "contract",
    "head_step", "head_steps_to_normal", "in_AN", "lo_normalize", "lo_step",
    "parallel_beta_successors", "succ_descendants",
]
