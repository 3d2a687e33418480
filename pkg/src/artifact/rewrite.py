"""Stratified join-conditional rewriting, alone and combined with beta.

``R_0`` is empty; a rule fires at level ``i+1`` when each instantiated
condition ``d = c`` joins at level ``i``. For plain rewriting (mode ``R``)
conditions join under ``R_i``; for beta-conditional rewriting (``RBETA``)
they join under ``beta ∪ R(beta)_i``.

Every search is bounded by a :class:`Fuel`. A condition whose joinability
is not settled within the budget does not fire: reported steps are always
genuine, and the engine remembers that its answer may be incomplete.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, replace
from typing import Optional, Union

from .common import DEFAULT_FUEL, Fuel
from .terms import (App, Lam, Position, Step, Term, format_position, free_vars, instantiate, pretty,
                    replace_at, sort_key, substitute, subterm_at)
from .unify import _match

BETA = "beta"


class Mode(enum.Enum):
    R = "R"
    RBETA = "RBeta"
    BETA = "Beta"
    BETA_R = "BetaUnionR"
    BETA_RBETA = "BetaUnionRBeta"

    @property
    def has_beta(self) -> bool:
        return self in (Mode.BETA, Mode.BETA_R, Mode.BETA_RBETA)

    @property
    def has_rules(self) -> bool:
        return self is not Mode.BETA

    @property
    def condition_mode(self) -> "Mode":
        """Relation used to join the conditions of a rule at the level below."""
        return Mode.R if self in (Mode.R, Mode.BETA_R) else Mode.BETA_RBETA

    @classmethod
    def parse(cls, text: str) -> "Mode":
        for m in cls:
            if text.lower() in (m.value.lower(), m.name.lower()):
                return m
        raise ValueError(f"unknown mode {text!r}")


class Strategy(enum.Enum):
    LEFTMOST_OUTERMOST = "LeftmostOutermost"
    FULL_ENUMERATION_FIRST = "FullEnumerationFirst"


# ---------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class Joinable:
    witness: Term
    left_steps: int
    right_steps: int

    def as_dict(self):
        return {"verdict": "Joinable", "witness": pretty(self.witness),
                "left_steps": self.left_steps, "right_steps": self.right_steps}

    def __str__(self):
        return f"Joinable({pretty(self.witness)}, {self.left_steps}, {self.right_steps})"


@dataclass(frozen=True)
class NotJoinableWithinBudget:
    explored: int
    fuel: Fuel = DEFAULT_FUEL

    def as_dict(self):
        return {"verdict": "NotJoinableWithinBudget", "explored": self.explored,
                "max_steps": self.fuel.max_steps, "max_term_size": self.fuel.max_term_size,
                "max_nodes": self.fuel.max_nodes}

    def __str__(self):
        f = self.fuel
        return (f"NotJoinableWithinBudget(explored={self.explored}, depth={f.max_steps}, "
                f"size={f.max_term_size}, nodes={f.max_nodes})")


@dataclass(frozen=True)
class Refuted:
    reason: str

    def as_dict(self):
        return {"verdict": "Refuted", "reason": self.reason}

    def __str__(self):
        return f"Refuted({self.reason})"


JoinVerdict = Union[Joinable, NotJoinableWithinBudget, Refuted]


@dataclass(frozen=True)
class ConditionWitness:
    d: Term
    c: Term
    witness: Term
    left_steps: int
    right_steps: int

    def __str__(self):
        return (f"{pretty(self.d)} = {pretty(self.c)} joined at {pretty(self.witness)} "
                f"({self.left_steps}+{self.right_steps} steps)")


@dataclass(frozen=True)
class LevelStep:
    source: Term
    target: Term
    position: Position
    rule: str  # rule name or BETA
    level: int
    condition_trace: tuple = ()

    def as_dict(self):
        return {"from": pretty(self.source), "to": pretty(self.target),
                "position": format_position(self.position), "rule": self.rule,
                "level": self.level,
                "conditions": [str(w) for w in self.condition_trace]}


@dataclass(frozen=True)
class RootStep:
    rule: str
    contractum: Term
    sigma: Optional[dict] = None
    condition_trace: tuple = ()


# ------------------------------------------------------------------ engine


class Engine:
    """Memoizing evaluator for one rule system under one budget."""

    def __init__(self, rs, fuel: Fuel = DEFAULT_FUEL):
        self.rs = rs
        self.fuel = fuel
        self._root: dict = {}
        self._succ: dict = {}
        self._join: dict = {}
        self.incomplete: dict = {}  # (rule, term, level) -> None; excluded candidates

    # one-step relations

    def root_steps(self, u: Term, mode: Mode, level: int) -> tuple:
        """Steps contracting a redex at the root of ``u``, and whether some
        candidate was excluded for lack of budget."""
        key = (u, mode, level)
        hit = self._root.get(key)
        if hit is not None:
            return hit
        out = []
        incomplete = False
        if mode.has_beta and type(u) is App and type(u.fun) is Lam:
            out.append(RootStep(BETA, instantiate(u.fun.body, u.arg)))
        if mode.has_rules and level > 0:
            for r in self.rs.rules:
                s = _match(r.lhs, u, {})
                if s is None:
                    continue
                trace = []
                ok = True
                for d, c in r.conditions:
                    v = self.join(substitute(d, s), substitute(c, s),
                                  mode.condition_mode, level - 1)
                    if isinstance(v, Joinable):
                        trace.append(ConditionWitness(substitute(d, s), substitute(c, s),
                                                      v.witness, v.left_steps, v.right_steps))
                        continue
                    ok = False
                    if isinstance(v, NotJoinableWithinBudget):
                        incomplete = True
                        self.incomplete[(r.name, u, level)] = None
                    break
                if ok:
                    out.append(RootStep(r.name, substitute(r.rhs, s), s, tuple(trace)))
        res = (tuple(out), incomplete)
        self._root[key] = res
        return res

    def successors(self, t: Term, mode: Mode, level: int) -> tuple:
        """All one-step successors, leftmost-outermost, as LevelSteps."""
        return self._successors(t, mode, level)[0]

    def _successors(self, t: Term, mode: Mode, level: int) -> tuple:
        key = (t, mode, level)
        hit = self._succ.get(key)
        if hit is not None:
            return hit
        steps = []
        incomplete = False
        stack = [((), t)]
        while stack:
            p, u = stack.pop()
            roots, inc = self.root_steps(u, mode, level)
            incomplete |= inc
            for rstep in roots:
                steps.append(LevelStep(t, replace_at(t, p, rstep.contractum), p, rstep.rule,
                                       level, rstep.condition_trace))
            if type(u) is App:
                stack.append((p + (Step.ARG,), u.arg))
                stack.append((p + (Step.FUN,), u.fun))
            elif type(u) is Lam:
                stack.append((p + (Step.BODY,), u.body))
        res = (tuple(steps), incomplete)
        self._succ[key] = res
        return res

    def reducts(self, t: Term, mode: Mode, level: int) -> list:
        """Distinct one-step reducts in first-occurrence order."""
        return list(dict.fromkeys(s.target for s in self.successors(t, mode, level)))

    # joinability

    def join(self, t: Term, u: Term, mode: Mode, level: int,
             right: Optional[tuple] = None) -> JoinVerdict:
        """Bidirectional bounded search for a common reduct.

        ``right`` optionally gives a different ``(mode, level)`` for the
        right-hand side, as in commutation and level diagrams.
        """
        rmode, rlevel = right if right is not None else (mode, level)
        key = (t, u, mode, level, rmode, rlevel)
        hit = self._join.get(key)
        if hit is None:
            hit = self._join[key] = self._search(t, u, (mode, level), (rmode, rlevel))
        return hit

    def _search(self, t, u, lrel, rrel) -> JoinVerdict:
        if t == u:
            return Joinable(t, 0, 0)
        quick = self._along_strategy(t, u, lrel, rrel)
        if quick is not None:
            return quick
        fuel = self.fuel
        left = _Side(self, t, lrel)
        right = _Side(self, u, rrel)
        for _depth in range(fuel.max_steps):
            if not left.frontier and not right.frontier:
                break
            meets = []
            for w in left.expand():
                if w in right.dist:
                    meets.append((left.dist[w] + right.dist[w], sort_key(w), w))
            for w in right.expand():
                if w in left.dist:
                    meets.append((left.dist[w] + right.dist[w], sort_key(w), w))
            if meets:
                _, _, w = min(meets, key=lambda m: (m[0], m[1]))
                return Joinable(w, left.dist[w], right.dist[w])
            if left.capped or right.capped:
                break
        explored = len(left.dist) + len(right.dist)
        if left.complete() and right.complete():
            if len(left.dist) == 1 and len(right.dist) == 1:
                reason = f"distinct normal forms {pretty(t)} and {pretty(u)}"
            else:
                reason = (f"disjoint finite reachable sets "
                          f"({len(left.dist)} and {len(right.dist)} terms)")
            return Refuted(reason)
        return NotJoinableWithinBudget(explored, fuel)

    def _lo_path(self, t, rel) -> list:
        path = [t]
        seen = {t}
        while len(path) <= self.fuel.max_steps:
            steps = self.successors(path[-1], *rel)
            if not steps:
                break
            nxt = steps[0].target
            if nxt in seen or nxt.size > self.fuel.max_term_size:
                break
            seen.add(nxt)
            path.append(nxt)
        return path

    def _along_strategy(self, t, u, lrel, rrel) -> Optional[Joinable]:
        """Cheap first try: follow leftmost-outermost reductions on both
        sides and report the closest meeting point, if any."""
        lp = {w: i for i, w in enumerate(self._lo_path(t, lrel))}
        best = None
        for j, w in enumerate(self._lo_path(u, rrel)):
            i = lp.get(w)
            if i is not None and (best is None or i + j < best[0]):
                best = (i + j, w, i, j)
        return None if best is None else Joinable(best[1], best[2], best[3])

    # derivations

    def reduce_many(self, t: Term, mode: Mode, level: int,
                    strategy: Strategy = Strategy.LEFTMOST_OUTERMOST) -> list:
        if strategy is Strategy.FULL_ENUMERATION_FIRST:
            path = self._shortest_to_normal(t, mode, level)
            if path is not None:
                return path
        out = []
        while len(out) < self.fuel.max_steps:
            steps = self.successors(t, mode, level)
            if not steps:
                break
            step = steps[0]
            if step.target.size > self.fuel.max_term_size:
                break
            out.append(self.least_level(step, mode))
            t = step.target
        return out

    def least_level(self, step: LevelStep, mode: Mode) -> LevelStep:
        """The same step, labelled with the least level at which it fires
        (0 for beta steps)."""
        if step.rule == BETA:
            return replace(step, level=0)
        u = subterm_at(step.source, step.position)
        for i in range(1, step.level):
            for r in self.root_steps(u, mode, i)[0]:
                if r.rule == step.rule and replace_at(step.source, step.position,
                                                      r.contractum) == step.target:
                    return replace(step, level=i, condition_trace=r.condition_trace)
        return step

    def _shortest_to_normal(self, t, mode, level) -> Optional[list]:
        back = {t: None}
        queue = deque([(t, 0)])
        while queue:
            u, d = queue.popleft()
            steps = self.successors(u, mode, level)
            if not steps:
                path = []
                while back[u] is not None:
                    path.append(back[u])
                    u = back[u].source
                return [self.least_level(s, mode) for s in path[::-1]]
            if d >= self.fuel.max_steps:
                continue
            for s in steps:
                v = s.target
                if v in back or v.size > self.fuel.max_term_size:
                    continue
                if len(back) >= self.fuel.max_nodes:
                    return None
                back[v] = s
                queue.append((v, d + 1))
        return None

    def reachable(self, t: Term, mode: Mode, level: int, depth: Optional[int] = None) -> dict:
        """Terms reachable in at most ``depth`` steps, with their distance."""
        side = _Side(self, t, (mode, level))
        for _ in range(self.fuel.max_steps if depth is None else depth):
            if not side.frontier or side.capped:
                break
            side.expand()
        return side.dist

    # parallel relations

    def parallel_closure_successors(self, t: Term, mode: Mode, level: int) -> list:
        """Simultaneous contraction of pairwise-disjoint redexes (t included)."""
        cap = self.fuel.max_nodes
        memo: dict = {}

        def go(u):
            hit = memo.get(u)
            if hit is not None:
                return hit
            out = {}
            if type(u) is App:
                fs, as_ = go(u.fun), go(u.arg)
                for f in fs:
                    for a in as_:
                        out[App(f, a)] = None
            elif type(u) is Lam:
                for b in go(u.body):
                    out[Lam(b, u.hint)] = None
            else:
                out[u] = None
            for rstep in self.root_steps(u, mode, level)[0]:
                out[rstep.contractum] = None
            res = tuple(out)[:cap]
            memo[u] = res
            return res

        return list(go(t))

    def nested_parallel_successors(self, t: Term, mode: Mode, level: int) -> list:
        """Nested parallel reduction: a root rule step ``l s`` may contract to
        ``r u`` for any ``s ⊳ u`` on the variables of ``r``; beta redexes
        (in modes with beta) contract as in the Tait/Martin-Lof relation."""
        cap = self.fuel.max_nodes
        memo: dict = {}

        def go(u):
            hit = memo.get(u)
            if hit is not None:
                return hit
            out = {}
            if type(u) is App:
                fs, as_ = go(u.fun), go(u.arg)
                for f in fs:
                    for a in as_:
                        out[App(f, a)] = None
                if mode.has_beta and type(u.fun) is Lam:
                    for b in go(u.fun.body):
                        for a in as_:
                            out[instantiate(b, a)] = None
            elif type(u) is Lam:
                for b in go(u.body):
                    out[Lam(b, u.hint)] = None
            else:
                out[u] = None
            for rstep in self.root_steps(u, mode, level)[0]:
                if rstep.rule == BETA:
                    continue
                rhs = self.rs.rule(rstep.rule).rhs
                for tau in _products(sorted(free_vars(rhs)), rstep.sigma, go, cap):
                    out[substitute(rhs, tau)] = None
            res = tuple(out)[:cap]
            memo[u] = res
            return res

        return list(go(t))

    def stable_level(self, t: Term, mode: Mode, cap: int = 16) -> tuple:
        """Double the level until the reduct set stops growing.

        Returns ``(level, stable)``; ``stable`` is False when ``cap`` was hit.
        """
        level = 1
        prev = self.reducts(t, mode, level)
        while level < cap:
            nxt = self.reducts(t, mode, min(2 * level, cap))
            if nxt == prev:
                return level, True
            level, prev = min(2 * level, cap), nxt
        return cap, False


def _products(names, sigma, go, cap):
    combos = [{}]
    for x in names:
        combos = [dict(c, **{x: v}) for c in combos for v in go(sigma[x])][:cap]
    return combos


class _Side:
    """One frontier of the bidirectional join search."""

    def __init__(self, engine: Engine, root: Term, rel: tuple):
        self.engine = engine
        self.mode, self.level = rel
        self.dist = {root: 0}
        self.frontier = [root]
        self.truncated = False
        self.capped = False
        self.unsure = False

    def _next(self, u):
        steps, inc = self.engine._successors(u, self.mode, self.level)
        self.unsure |= inc
        return dict.fromkeys(s.target for s in steps)

    def expand(self) -> list:
        fuel = self.engine.fuel
        new = []
        for u in self.frontier:
            d = self.dist[u] + 1
            for v in self._next(u):
                if v in self.dist:
                    continue
                if v.size > fuel.max_term_size:
                    self.truncated = True
                    continue
                if len(self.dist) >= fuel.max_nodes:
                    self.capped = self.truncated = True
                    break
                self.dist[v] = d
                new.append(v)
        self.frontier = new
        return new

    def complete(self) -> bool:
        """Is the reachable set exhausted, with nothing skipped?"""
        if self.truncated or self.capped or self.unsure:
            return False
        for u in self.frontier:
            if any(v not in self.dist for v in self._next(u)):
                return False
        return not self.unsure


# ------------------------------------------------------ functional surface


def successors(t: Term, rs, mode: Mode, level: int, fuel: Fuel = DEFAULT_FUEL) -> tuple:
    return Engine(rs, fuel).successors(t, mode, level)


def rbeta_successors(t: Term, rs, level: int, fuel: Fuel = DEFAULT_FUEL) -> tuple:
    return Engine(rs, fuel).successors(t, Mode.RBETA, level)


def joinable(t: Term, u: Term, rs, mode: Mode, level: int,
             fuel: Fuel = DEFAULT_FUEL) -> JoinVerdict:
    return Engine(rs, fuel).join(t, u, mode, level)


def reduce_many(t: Term, rs, mode: Mode, level: int, fuel: Fuel = DEFAULT_FUEL,
                strategy: Strategy = Strategy.LEFTMOST_OUTERMOST) -> list:
    return Engine(rs, fuel).reduce_many(t, mode, level, strategy)


def parallel_closure_successors(t: Term, rs, mode: Mode, level: int,
                                fuel: Fuel = DEFAULT_FUEL) -> list:
    return Engine(rs, fuel).parallel_closure_successors(t, mode, level)


def nested_parallel_successors(t: Term, rs, mode: Mode, level: int,
                               fuel: Fuel = DEFAULT_FUEL) -> list:
    return Engine(rs, fuel).nested_parallel_successors(t, mode, level)


def format_derivation(steps) -> str:
    """``step <n>: <rule|beta> @ <position> level=<i>`` plus indented
    condition witnesses, one line each."""
    lines = []
    for n, s in enumerate(steps, 1):
        lines.append(f"step {n}: {s.rule} @ {format_position(s.position)} level={s.level}")
        lines.append(f"    -> {pretty(s.target)}")
        for w in s.condition_trace:
            lines.append(f"    if {w}")
    return "\n".join(lines)


def replay(steps, rs, fuel: Fuel = DEFAULT_FUEL, mode: Mode = None) -> bool:
    """Check that every step of a derivation is produced by the engine."""
    eng = Engine(rs, fuel)
    for s in steps:
        m = mode
        if m is None:
            m = Mode.BETA if s.rule == BETA else Mode.BETA_RBETA
        if not any(x.target == s.target and x.position == s.position and x.rule == s.rule
                   for x in eng.successors(s.source, m, s.level)):
            return False
    return all(a.target == b.source for a, b in zip(steps, steps[1:]))


__all__ = [
    "BETA", "ConditionWitness", "Engine", "JoinVerdict", "Joinable", "LevelStep", "Mode",
    "NotJoinableWithinBudget", "Refuted", "RootStep", "Strategy", "format_derivation",
    "joinable", "nested_parallel_successors", "parallel_closure_successors", "rbeta_successors",
    "reduce_many", "replay", "successors",
]
