"""Bounded exploration of reduction graphs and sampled diagram checks.

Every check returns a :class:`DiagramReport`. A report without failures and
without truncation certifies the property on the explored fragment only.
"""
from __future__ import annotations

import itertools
import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .beta import AN, in_AN, parallel_beta_successors
from .common import DEFAULT_FUEL, Fuel
from .rewrite import BETA, Engine, Joinable, Mode, Refuted
from .rules import RuleSystem, arity_problems
from .terms import (App, Bound, Lam, Sym, Term, Var, close, head_decompose, is_algebraic, mk_app,
                    positions, pretty, replace_at, subterm_at, var_occurrences)


class PeakNotReproducible(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


# ------------------------------------------------------------------ graphs


@dataclass(frozen=True)
class ReductionGraph:
    root: Term
    nodes: tuple
    edges: tuple  # (source index, target index, label)
    truncated: bool

    def as_dict(self):
        return {"root": pretty(self.root), "nodes": [pretty(n) for n in self.nodes],
                "edges": [list(e) for e in self.edges], "truncated": self.truncated}

    def to_dot(self) -> str:
        lines = ["digraph reductions {"]
        for i, n in enumerate(self.nodes):
            lines.append(f"  n{i} [label={json.dumps(pretty(n), ensure_ascii=False)}];")
        for a, b, label in self.edges:
            lines.append(f"  n{a} -> n{b} [label={json.dumps(label)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _label(step) -> str:
    return BETA if step.rule == BETA else f"{step.rule}@{step.level}"


def explore(t: Term, rs: RuleSystem, mode: Mode, level: int,
            fuel: Fuel = DEFAULT_FUEL, engine: Optional[Engine] = None) -> ReductionGraph:
    """Breadth-first closure of ``t`` up to ``fuel.max_steps`` steps."""
    eng = engine or Engine(rs, fuel)
    index = {t: 0}
    nodes = [t]
    edges = []
    truncated = False
    frontier = [t]
    for _ in range(fuel.max_steps):
        nxt = []
        for u in frontier:
            seen = set()
            for s in eng.successors(u, mode, level):
                v = s.target
                if v.size > fuel.max_term_size:
                    truncated = True
                    continue
                if v not in index:
                    if len(nodes) >= fuel.max_nodes:
                        truncated = True
                        continue
                    index[v] = len(nodes)
                    nodes.append(v)
                    nxt.append(v)
                edge = (index[u], index[v], _label(s))
                if edge not in seen:
                    seen.add(edge)
                    edges.append(edge)
        frontier = nxt
        if not frontier:
            break
    else:
        truncated = truncated or any(eng.successors(u, mode, level) for u in frontier)
    return ReductionGraph(t, tuple(nodes), tuple(edges), truncated)


# ----------------------------------------------------------------- reports


@dataclass(frozen=True)
class Failure:
    source: Term
    left: Term
    right: Term
    verdict: str
    note: str = ""

    def as_dict(self):
        d = {"source": pretty(self.source), "left": pretty(self.left),
             "right": pretty(self.right), "verdict": self.verdict}
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class DiagramReport:
    diagram: str
    checked_peaks: int
    failures: tuple
    truncated: bool = False
    seed: Optional[int] = None
    inconclusive: int = 0  # peaks whose closing search ran out of budget

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self):
        return {"diagram": self.diagram, "checked_peaks": self.checked_peaks,
                "failures": [f.as_dict() for f in self.failures],
                "truncated": self.truncated, "seed": self.seed,
                "inconclusive": self.inconclusive}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, ensure_ascii=False, indent=2)

    def __str__(self):
        head = (f"{self.diagram}: {self.checked_peaks} peaks, {len(self.failures)} failures"
                + (", truncated" if self.truncated else "")
                + (f", seed {self.seed}" if self.seed is not None else ""))
        body = [f"  {pretty(f.left)} <- {pretty(f.source)} -> {pretty(f.right)}: {f.verdict}"
                for f in self.failures]
        return "\n".join([head] + body)


# ---------------------------------------------------------------- relations


@dataclass(frozen=True)
class Rel:
    """A one-step relation for diagram checks.

    ``kind`` is ``pbeta`` (parallel beta), ``par`` (parallel closure of a
    mode), ``nested`` (nested parallel closure of a mode) or ``step``.
    """

    kind: str
    mode: Mode = Mode.BETA
    level: int = 0

    def step(self, eng: Engine, t: Term) -> list:
        if self.kind == "pbeta":
            return list(parallel_beta_successors(t, eng.fuel))
        if self.kind == "par":
            return eng.parallel_closure_successors(t, self.mode, self.level)
        if self.kind == "nested":
            return eng.nested_parallel_successors(t, self.mode, self.level)
        return eng.reducts(t, self.mode, self.level)

    @property
    def star(self) -> tuple:
        """``(mode, level)`` of the reflexive-transitive closure."""
        return (Mode.BETA, 0) if self.kind == "pbeta" else (self.mode, self.level)

    def __str__(self):
        if self.kind == "pbeta":
            return "pbeta"
        return f"{self.kind}:{self.mode.value}@{self.level}"


PBETA = Rel("pbeta")


def reaches(eng: Engine, t: Term, target: Term, mode: Mode, level: int) -> Optional[int]:
    """Length of a shortest derivation ``t ->* target`` within the budget."""
    if t == target:
        return 0
    fuel = eng.fuel
    dist = {t: 0}
    queue = deque([t])
    while queue:
        u = queue.popleft()
        if dist[u] >= fuel.max_steps:
            continue
        for v in eng.reducts(u, mode, level):
            if v in dist or v.size > fuel.max_term_size:
                continue
            dist[v] = dist[u] + 1
            if v == target:
                return dist[v]
            if len(dist) >= fuel.max_nodes:
                return None
            queue.append(v)
    return None


def check_peak(t: Term, u: Term, v: Term, rs: RuleSystem, mode_left: Mode, mode_right: Mode,
               level_left: int, level_right: int, fuel: Fuel = DEFAULT_FUEL,
               engine: Optional[Engine] = None) -> DiagramReport:
    """Check ``u <-*_left t ->*_right v`` closes as ``u ->*_right w <-*_left v``."""
    eng = engine or Engine(rs, fuel)
    if reaches(eng, t, u, mode_left, level_left) is None:
        raise PeakNotReproducible(f"{pretty(u)} not reached from {pretty(t)}")
    if reaches(eng, t, v, mode_right, level_right) is None:
        raise PeakNotReproducible(f"{pretty(v)} not reached from {pretty(t)}")
    verdict = eng.join(u, v, mode_right, level_right, right=(mode_left, level_left))
    diagram = f"Peak({mode_left.value}@{level_left},{mode_right.value}@{level_right})"
    if isinstance(verdict, Joinable):
        return DiagramReport(diagram, 1, ())
    return DiagramReport(diagram, 1, (Failure(t, u, v, str(verdict)),),
                         inconclusive=0 if isinstance(verdict, Refuted) else 1)


# --------------------------------------------------------------- generators


class TermGenerator:
    """Seeded, size-stratified random closed terms over a signature.

    Symbols are applied to exactly their declared number of arguments (two
    at most when no arity is declared); abstractions and beta-redexes are
    mixed in, and bound variables occur only in argument positions, so every
    generated term is strongly beta-normalizing.
    """

    def __init__(self, rs: RuleSystem, seed: int = 0, min_size: int = 3, max_size: int = 12,
                 lam_weight: float = 0.15, redex_weight: float = 0.25, prefer=()):
        self.rs = rs
        self.rng = random.Random(seed)
        self.seed = seed
        self.min_size = min_size
        self.max_size = max_size
        self.lam_weight = lam_weight
        self.redex_weight = redex_weight
        alpha = rs.alpha or {}
        self.arity = {s.name: alpha.get(s.name, s.declared_arity if s.declared_arity is not None
                                        else 0) for s in rs.symbols}
        self.constants = sorted(f for f, n in self.arity.items() if n == 0)
        self.functions = sorted(f for f, n in self.arity.items() if n > 0)
        self.prefer = [f for f in prefer if f in self.arity]

    def sizes(self):
        """Cycle through the size strata."""
        return itertools.cycle(range(self.min_size, self.max_size + 1))

    def term(self, size: Optional[int] = None) -> Term:
        if size is None:
            size = self.rng.randint(self.min_size, self.max_size)
        if self.prefer and self.rng.random() < 0.5:
            f = self.rng.choice(self.prefer)
            n = self.arity[f]
            return mk_app(Sym(f), *[self._gen(s, 0) for s in self._split(max(size - 1, n), n)])
        return self._gen(size, 0)

    def _split(self, total: int, parts: int) -> list:
        if parts == 0:
            return []
        cuts = sorted(self.rng.randint(0, total - parts) for _ in range(parts - 1))
        out, prev = [], 0
        for c in cuts + [total - parts]:
            out.append(c - prev + 1)
            prev = c
        return out

    def _leaf(self, depth: int) -> Term:
        if depth and self.rng.random() < 0.4:
            return Bound(self.rng.randrange(depth))
        if self.constants:
            return Sym(self.rng.choice(self.constants))
        return Bound(0) if depth else Sym(self.rng.choice(self.functions))

    def _gen(self, size: int, depth: int) -> Term:
        r = self.rng.random()
        if size <= 1:
            return self._leaf(depth)
        if size >= 4 and r < self.redex_weight:
            b = self.rng.randint(1, size - 3)
            body = self._gen(b, depth + 1)
            return App(Lam(body, "x"), self._gen(size - 2 - b, depth))
        if r < self.redex_weight + self.lam_weight:
            return Lam(self._gen(size - 1, depth + 1), "x")
        fits = [f for f in self.functions if self.arity[f] <= size - 1]
        if not fits:
            return self._leaf(depth)
        f = self.rng.choice(fits)
        n = self.arity[f]
        return mk_app(Sym(f), *[self._gen(s, depth) for s in self._split(size - 1, n)])

    def expanded(self, size: Optional[int] = None, expansions: int = 2) -> Term:
        """An algebraic term dressed up by beta-expansions; its beta-normal
        form is the algebraic term itself."""
        saved = self.redex_weight, self.lam_weight
        self.redex_weight = self.lam_weight = 0.0
        try:
            t = self.term(size)
        finally:
            self.redex_weight, self.lam_weight = saved
        for _ in range(expansions):
            t = self.expand(t)
        return t

    def expand(self, t: Term) -> Term:
        """One random beta-expansion: abstract every occurrence of a subterm,
        or wrap a subterm in an identity or an erasing redex."""
        ps = [p for p in positions(t)]
        p = self.rng.choice(ps)
        s = subterm_at(t, p)
        if s.loose:
            return t
        k = self.rng.randrange(3)
        if k == 0:
            name = "v"
            abstracted = close(_replace_all(t, s, Var(name)), name)
            return App(Lam(abstracted, "x"), s)
        if k == 1:
            return replace_at(t, p, App(Lam(Bound(0), "x"), s))
        junk = self._leaf(0)
        return replace_at(t, p, App(Lam(s, "x"), junk))


class SortedGenerator(TermGenerator):
    """Like :class:`TermGenerator`, but terms are well-sorted.

    ``sorts`` maps each symbol to a list of ``(argument sorts, result sort)``
    signatures; a sort is a name or ``("->", a, b)`` for functions, which
    are generated as abstractions. ``roots`` are the sorts of whole terms.
    """

    def __init__(self, rs: RuleSystem, sorts: dict, roots, seed: int = 0, min_size: int = 3,
                 max_size: int = 12, lam_weight: float = 0.0, redex_weight: float = 0.2,
                 prefer=(), rule_weight: float = 0.0):
        super().__init__(rs, seed, min_size, max_size, lam_weight, redex_weight, prefer)
        self.rule_weight = rule_weight
        self._values_only = False
        self.sorts = sorts
        self.roots = list(roots)
        self.by_result: dict = {}
        for f in sorted(sorts):
            for args, res in sorts[f]:
                self.by_result.setdefault(res, []).append((f, tuple(args)))
        self.arg_sorts = sorted({a for sigs in sorts.values() for args, _ in sigs for a in args
                                 if isinstance(a, str)})
        self.sort_min = {}
        changed = True
        while changed:
            changed = False
            for res, ops in self.by_result.items():
                for f, args in ops:
                    need = [self._min(a) for a in args]
                    if None in need:
                        continue
                    n = 1 + sum(need)
                    if n < self.sort_min.get(res, n + 1):
                        self.sort_min[res] = n
                        changed = True

    def _min(self, sort):
        if isinstance(sort, tuple):
            inner = self._min(sort[2])
            return None if inner is None else 1 + inner
        return self.sort_min.get(sort)

    def term(self, size: Optional[int] = None) -> Term:
        if size is None:
            size = self.rng.randint(self.min_size, self.max_size)
        sort = self.rng.choice(self.roots)
        if self.rng.random() < self.rule_weight:
            f = self.rng.choice(self.prefer or sorted(self.sorts))
            fits = sorted({res for _args, res in self.sorts.get(f, ()) if isinstance(res, str)})
            inst = self._lhs_instance(self.rng.choice(fits), size, [], (f,)) if fits else None
            if inst is not None:
                return inst
        if self.prefer and self.rng.random() < 0.6:
            cands = [(f, args) for f in self.prefer for args, res in self.sorts[f]]
            f, args = self.rng.choice(cands)
            return mk_app(Sym(f), *self._args(args, size, []))
        return self._sorted(sort, size, [])

    def _leaf_of(self, sort, env):
        bound = [i for i, s in enumerate(reversed(env)) if s == sort]
        consts = [f for f, args in self.by_result.get(sort, []) if not args
                  and not (self._values_only and f in self.rs.defined_symbols)]
        if bound and (not consts or self.rng.random() < 0.5):
            return Bound(self.rng.choice(bound))
        if consts:
            return Sym(self.rng.choice(consts))
        return None

    def _sorted(self, sort, size: int, env: list) -> Term:
        if isinstance(sort, tuple):
            _, a, b = sort
            return Lam(self._sorted(b, max(size - 1, 1), env + [a]), "x")
        if size >= 4 and not self._values_only and self.rng.random() < self.redex_weight:
            a = self.rng.choice(self.arg_sorts)
            b = self.rng.randint(1, size - 3)
            body = self._sorted(sort, b, env + [a])
            return App(Lam(body, "x"), self._sorted(a, size - 2 - b, env))
        if size >= 3 and not self._values_only and self.rng.random() < self.rule_weight:
            inst = self._lhs_instance(sort, size, env)
            if inst is not None:
                return inst
        allowed = [(f, args) for f, args in self.by_result.get(sort, [])
                   if not (self._values_only and f in self.rs.defined_symbols)]
        ops = [(f, args) for f, args in allowed if args
               and 1 + sum(self._min(a) for a in args) <= size]
        if size <= 1 or not ops:
            leaf = self._leaf_of(sort, env)
            if leaf is not None:
                return leaf
            ops = [(f, args) for f, args in allowed if args]
            if not ops:
                raise ValueError(f"no term of sort {sort}")
            least = min(1 + sum(self._min(a) for a in args) for _f, args in ops)
            ops = [(f, args) for f, args in ops if 1 + sum(self._min(a) for a in args) == least]
        f, args = self.rng.choice(ops)
        return mk_app(Sym(f), *self._args(args, size, env))

    def _lhs_instance(self, sort, size: int, env: list, heads=None) -> Optional[Term]:
        """A random rule left-hand side of result ``sort`` (headed by one of
        ``heads``, if given) whose variables are filled with well-sorted
        terms, or None if none fits."""
        fits = []
        for r in self.rs.rules:
            hf = head_decompose(r.lhs)
            name = getattr(hf.head, "name", None)
            if heads is not None and name not in heads:
                continue
            for args, res in self.sorts.get(name, ()):
                if res == sort and len(args) == len(hf.args):
                    fits.append(r.lhs)
        if not fits:
            return None
        pattern = self.rng.choice(fits)
        holes = max(len(var_occurrences(pattern)), 1)
        budget = max((size - pattern.size) // holes, 3)
        return self._fill(pattern, sort, budget, env)

    def _fill(self, p: Term, sort, budget: int, env: list) -> Term:
        if type(p) is Var:
            size = self.rng.randint(1, budget)
            if self.rng.random() >= 0.5:
                return self._sorted(sort, size, env)
            # constructor values make the rule's conditions decidable
            saved, self._values_only = self._values_only, True
            try:
                return self._sorted(sort, size, env)
            finally:
                self._values_only = saved
        hf = head_decompose(p)
        for args, res in self.sorts.get(hf.head.name, ()):
            if res == sort and len(args) == len(hf.args):
                return mk_app(hf.head, *(self._fill(a, s, budget, env)
                                         for a, s in zip(hf.args, args)))
        return self._sorted(sort, budget, env)

    def _args(self, args, size: int, env: list) -> list:
        """Split ``size - 1`` among ``args``, respecting each sort's minimum."""
        mins = [self._min(a) for a in args]
        spare = max(size - 1 - sum(mins), 0)
        extra = self._split(spare + len(args), len(args)) if args else []
        return [self._sorted(a, m + e - 1, env) for a, m, e in zip(args, mins, extra)]


def _replace_all(t: Term, s: Term, x: Term) -> Term:
    if t == s:
        return x
    if type(t) is App:
        return App(_replace_all(t.fun, s, x), _replace_all(t.arg, s, x))
    if type(t) is Lam:
        return Lam(_replace_all(t.body, s, x), t.hint)
    return t


def closed_terms(max_size: int, constants=("a",), unary=("f",)) -> list:
    """Every closed lambda-term up to ``max_size`` nodes over the given
    symbols, with applications unrestricted."""
    memo: dict = {}

    def gen(size, depth):
        key = (size, depth)
        if key in memo:
            return memo[key]
        out = []
        if size == 1:
            out.extend(Sym(c) for c in constants)
            out.extend(Sym(f) for f in unary)
            out.extend(Bound(i) for i in range(depth))
        else:
            out.extend(Lam(b, "x") for b in gen(size - 1, depth + 1))
            for k in range(1, size - 1):
                for f in gen(k, depth):
                    for a in gen(size - 1 - k, depth):
                        out.append(App(f, a))
        memo[key] = out
        return out

    return [t for n in range(1, max_size + 1) for t in gen(n, 0)]


# ---------------------------------------------------------------- diagrams


def check_diamond(terms, fuel: Fuel = DEFAULT_FUEL) -> DiagramReport:
    """Parallel beta has the diamond property on ``terms``."""
    failures = []
    peaks = 0
    truncated = False
    cache: dict = {}

    def par(u):
        hit = cache.get(u)
        if hit is None:
            hit = cache[u] = parallel_beta_successors(u, fuel)
        return hit

    for t in terms:
        ps = par(t)
        truncated |= ps.truncated
        for u, v in itertools.combinations_with_replacement(ps.terms, 2):
            peaks += 1
            pu, pv = par(u), par(v)
            truncated |= pu.truncated or pv.truncated
            if not any(w in pv for w in pu):
                failures.append(Failure(t, u, v, "no common parallel-beta reduct"))
    return DiagramReport("Diamond(pbeta)", peaks, tuple(failures), truncated)


def check_commutation_sample(rs: RuleSystem, rel_a: Rel, rel_b: Rel, term_generator,
                             samples: int, fuel: Fuel = DEFAULT_FUEL,
                             seed: Optional[int] = None,
                             engine: Optional[Engine] = None) -> DiagramReport:
    """For sampled peaks ``u <-A t ->B v`` look for ``u ->*B w <-*A v``.

    ``term_generator`` is a zero-argument callable; terms without both an A-
    and a B-step are skipped (after a bounded number of draws).
    """
    eng = engine or Engine(rs, fuel)
    rng = random.Random(seed)
    failures = []
    checked = inconclusive = 0
    draws = 0
    while checked < samples and draws < 50 * samples:
        draws += 1
        t = term_generator()
        us = [u for u in rel_a.step(eng, t)]
        vs = [v for v in rel_b.step(eng, t) if v != t]
        if not us or not vs:
            continue
        u, v = rng.choice(us), rng.choice(vs)
        checked += 1
        verdict = eng.join(u, v, *rel_b.star, right=rel_a.star)
        if not isinstance(verdict, Joinable):
            inconclusive += not isinstance(verdict, Refuted)
            failures.append(Failure(t, u, v, str(verdict)))
    return DiagramReport(f"Commutation({rel_a},{rel_b})", checked, tuple(failures),
                         checked < samples, seed, inconclusive)


def random_derivation(eng: Engine, t: Term, mode: Mode, level: int, length: int,
                      rng: random.Random) -> list:
    out = []
    for _ in range(length):
        steps = [s for s in eng.successors(t, mode, level)
                 if s.target.size <= eng.fuel.max_term_size]
        if not steps:
            break
        s = rng.choice(steps)
        out.append(s)
        t = s.target
    return out


def check_projection_bnf(rs: RuleSystem, alpha, t: Term, derivation, fuel: Fuel = DEFAULT_FUEL,
                         level: Optional[int] = None,
                         engine: Optional[Engine] = None) -> DiagramReport:
    """A beta ∪ R_i (or beta ∪ R(beta)_i) derivation ``t ->* u`` of an
    AN term projects to ``bnf(t) ->*_{R_i} bnf(u)``."""
    for r in rs.rules:
        for x in r.terms():
            if not is_algebraic(x):
                raise HypothesisViolated(f"system is not algebraic: rule {r.name}")
    if arity_problems(rs, alpha):
        raise HypothesisViolated("system does not respect the arity")
    verdict = in_AN(t, alpha, fuel)
    if verdict.answer is not AN.YES:
        raise HypothesisViolated(f"{pretty(t)} is not in AN ({verdict.answer.value})")
    eng = engine or Engine(rs, fuel)
    cur = t
    for s in derivation:
        if s.source != cur:
            raise HypothesisViolated("derivation is not contiguous")
        cur = s.target
    if level is None:
        level = max([s.level for s in derivation if s.rule != BETA], default=0)
    u = cur
    diagram = f"ProjectionBnf({level})"
    vu = in_AN(u, alpha, fuel)
    if vu.answer is not AN.YES:
        return DiagramReport(diagram, 1, (Failure(t, u, u, "reduct not in AN"),))
    bt, bu = verdict.bnf, vu.bnf
    if reaches(eng, bt, bu, Mode.R, level) is None:
        return DiagramReport(diagram, 1, (Failure(t, bt, bu, "no R-derivation between "
                                                              "beta-normal forms"),))
    return DiagramReport(diagram, 1, ())


def check_projection_sample(rs: RuleSystem, generator: TermGenerator, samples: int,
                            max_length: int = 5, levels=(1, 2, 3), fuel: Fuel = DEFAULT_FUEL,
                            seed: int = 0) -> DiagramReport:
    rng = random.Random(seed)
    eng = Engine(rs, fuel)
    alpha = rs.alpha
    failures = []
    for _ in range(samples):
        t = generator.expanded()
        level = rng.choice(levels)
        mode = rng.choice((Mode.BETA_R, Mode.BETA_RBETA))
        der = random_derivation(eng, t, mode, level, rng.randint(1, max_length), rng)
        rep = check_projection_bnf(rs, alpha, t, der, fuel, level, eng)
        failures.extend(rep.failures)
    return DiagramReport("ProjectionBnf", samples, tuple(failures), False, seed)


def check_parallel_moves(rs: RuleSystem, i: int, j: int, term_generator, samples: int,
                         fuel: Fuel = DEFAULT_FUEL, seed: Optional[int] = None,
                         mode: Mode = Mode.RBETA, exhaustive_below: int = 32) -> DiagramReport:
    """Peaks ``u <-par_j t par_i-> v`` close by one parallel step each side."""
    eng = Engine(rs, fuel)
    rng = random.Random(seed)
    failures = []
    checked = 0
    for _ in range(samples):
        t = term_generator()
        us = eng.parallel_closure_successors(t, mode, j)
        vs = eng.parallel_closure_successors(t, mode, i)
        if len(us) * len(vs) <= exhaustive_below:
            pairs = list(itertools.product(us, vs))
        else:
            pairs = [(rng.choice(us), rng.choice(vs)) for _ in range(exhaustive_below)]
        for u, v in pairs:
            checked += 1
            pu = set(eng.parallel_closure_successors(u, mode, i))
            if not any(w in pu for w in eng.parallel_closure_successors(v, mode, j)):
                failures.append(Failure(t, u, v, "no closing parallel steps"))
    return DiagramReport(f"ParallelMoves({i},{j})", checked, tuple(failures), False, seed)


def random_peak(eng: Engine, t: Term, left: tuple, right: tuple, rng: random.Random,
                max_length: int = 2) -> tuple:
    dl = random_derivation(eng, t, *left, rng.randint(1, max_length), rng)
    dr = random_derivation(eng, t, *right, rng.randint(1, max_length), rng)
    u = dl[-1].target if dl else t
    v = dr[-1].target if dr else t
    return u, v, bool(dl and dr)


def check_shallow_confluence(rs: RuleSystem, term_generator, samples: int,
                             levels=(1, 2, 3), fuel: Fuel = DEFAULT_FUEL,
                             seed: Optional[int] = None, max_length: int = 2) -> DiagramReport:
    """Peaks ``u <-*_i t ->*_j v`` of beta ∪ R(beta) close as
    ``u ->*_j w <-*_i v``."""
    eng = Engine(rs, fuel)
    rng = random.Random(seed)
    failures = []
    checked = inconclusive = draws = 0
    while checked < samples and draws < 50 * samples:
        draws += 1
        t = term_generator()
        i, j = rng.choice(levels), rng.choice(levels)
        u, v, proper = random_peak(eng, t, (Mode.BETA_RBETA, i), (Mode.BETA_RBETA, j), rng,
                                   max_length)
        if not proper:
            continue
        checked += 1
        verdict = eng.join(u, v, Mode.BETA_RBETA, j, right=(Mode.BETA_RBETA, i))
        if not isinstance(verdict, Joinable):
            inconclusive += not isinstance(verdict, Refuted)
            failures.append(Failure(t, u, v, str(verdict), f"levels {i},{j}"))
    return DiagramReport("ShallowConfluence", checked, tuple(failures), checked < samples,
                         seed, inconclusive)


def check_hindley_rosen(rs: RuleSystem, term_generator, samples: int, level: int = 2,
                        fuel: Fuel = DEFAULT_FUEL, seed: Optional[int] = None) -> DiagramReport:
    """Where beta peaks, R peaks and mixed peaks all close on a sample, the
    union's peaks close too. Failures are samples where the premises hold
    and the conclusion does not."""
    eng = Engine(rs, fuel)
    rng = random.Random(seed)
    beta, rules, union = (Mode.BETA, 0), (Mode.R, level), (Mode.BETA_R, level)
    failures = []
    premised = 0
    for _ in range(samples):
        t = term_generator()
        ok = True
        for left, right in ((beta, beta), (rules, rules), (beta, rules)):
            u, v, proper = random_peak(eng, t, left, right, rng, 1)
            if proper and not isinstance(eng.join(u, v, *right, right=left), Joinable):
                ok = False
        if not ok:
            continue
        premised += 1
        u, v, proper = random_peak(eng, t, union, union, rng)
        if proper:
            verdict = eng.join(u, v, *union)
            if not isinstance(verdict, Joinable):
                failures.append(Failure(t, u, v, str(verdict)))
    return DiagramReport("HindleyRosen", premised, tuple(failures), False, seed)


def factorizes(rs: RuleSystem, t: Term, target: Term, depth: int, level: int = 5,
               fuel: Fuel = DEFAULT_FUEL) -> tuple:
    """Search ``t ->*_beta s ->*_R w <-*_beta target`` up to ``depth`` steps
    per segment; returns ``(found, complete)``."""
    f = Fuel(depth, fuel.max_term_size, fuel.max_nodes)
    eng = Engine(rs, f)
    complete = True

    def reach(u, mode, lv):
        nonlocal complete
        g = explore(u, rs, mode, lv, f, eng)
        complete &= not g.truncated
        return g.nodes

    back = set(reach(target, Mode.BETA, 0))
    for s in reach(t, Mode.BETA, 0):
        for w in reach(s, Mode.R, level):
            if w in back:
                return True, complete
    return False, complete


# ------------------------------------------------------------------ corpus


@dataclass(frozen=True)
class Claim:
    description: str
    check: Callable = field(compare=False)  # () -> (ok: bool, detail: str)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    system: RuleSystem
    claims: tuple


def corpus() -> list:
    from .corpus import build_corpus
    return build_corpus()


def run_corpus(entries=None) -> list:
    """``(entry name, claim, ok, detail)`` for every claim."""
    out = []
    for e in entries if entries is not None else corpus():
        for c in e.claims:
            try:
                ok, detail = c.check()
            except Exception as exc:  # a crashing claim is a failed claim
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            out.append((e.name, c.description, bool(ok), detail))
    return out


__all__ = [
    "Claim", "CorpusEntry", "DiagramReport", "Failure", "HypothesisViolated", "PBETA",
    "PeakNotReproducible", "ReductionGraph", "Rel", "SortedGenerator", "TermGenerator", "check_commutation_sample",
    "check_diamond", "check_hindley_rosen", "check_parallel_moves", "check_peak",
    "check_projection_bnf", "check_projection_sample", "check_shallow_confluence",
    "closed_terms", "corpus", "explore", "factorizes", "random_derivation", "random_peak",
    "reaches", "run_corpus",
]
