"""Lambda-terms with curried function symbols.

Bound variables are de Bruijn indices (``Bound``), free variables are named
(``Var``) and abstractions keep their source binder name only as a printing
hint, so alpha-equivalent terms are structurally equal and hash alike.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class Term:
    __slots__ = ("_hash", "size", "loose", "_fv")

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def _init(self, h, size, loose):
        object.__setattr__(self, "_hash", h)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "loose", loose)
        object.__setattr__(self, "_fv", None)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{pretty(self)}>"

    def __str__(self):
        return pretty(self)

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)


class Var(Term):
    __slots__ = ("name",)

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)
        self._init(hash(("V", name)), 1, 0)

    def __eq__(self, other):
        return self is other or (type(other) is Var and other.name == self.name)

    __hash__ = Term.__hash__

    def __reduce__(self):
        return (Var, (self.name,))


class Bound(Term):
    """De Bruijn index; only meaningful below its binder."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        object.__setattr__(self, "index", index)
        self._init(hash(("B", index)), 1, index + 1)

    def __eq__(self, other):
        return self is other or (type(other) is Bound and other.index == self.index)

    __hash__ = Term.__hash__

    def __reduce__(self):
        return (Bound, (self.index,))


class Sym(Term):
    __slots__ = ("name",)

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)
        self._init(hash(("S", name)), 1, 0)

    def __eq__(self, other):
        return self is other or (type(other) is Sym and other.name == self.name)

    __hash__ = Term.__hash__

    def __reduce__(self):
        return (Sym, (self.name,))


class App(Term):
    __slots__ = ("fun", "arg")

    def __init__(self, fun: Term, arg: Term):
        object.__setattr__(self, "fun", fun)
        object.__setattr__(self, "arg", arg)
        self._init(hash(("A", fun._hash, arg._hash)), 1 + fun.size + arg.size,
                   max(fun.loose, arg.loose))

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not App or other._hash != self._hash:
            return False
        return self.fun == other.fun and self.arg == other.arg

    __hash__ = Term.__hash__

    def __reduce__(self):
        return (App, (self.fun, self.arg))


class Lam(Term):
    __slots__ = ("body", "hint")

    def __init__(self, body: Term, hint: str = "x"):
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "hint", hint)
        self._init(hash(("L", body._hash)), 1 + body.size, max(body.loose - 1, 0))

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not Lam or other._hash != self._hash:
            return False
        return self.body == other.body

    __hash__ = Term.__hash__

    def __reduce__(self):
        return (Lam, (self.body, self.hint))


# ---------------------------------------------------------------------------
# positions

class Step(enum.Enum):
    FUN = "Fun"
    ARG = "Arg"
    BODY = "Body"


Position = tuple  # tuple[Step, ...]
ROOT: Position = ()
_STEP_ORDER = {Step.FUN: 0, Step.ARG: 1, Step.BODY: 2}


def format_position(p: Position) -> str:
    return ".".join(["root"] + [s.value for s in p])


def parse_position(text: str) -> Position:
    parts = text.strip().split(".")
    if parts[0] != "root":
        raise ValueError(f"position must start with 'root': {text!r}")
    return tuple(Step(s) for s in parts[1:])


def position_key(p: Position):
    """Leftmost-outermost order: prefixes first, then Fun < Arg < Body."""
    return tuple(_STEP_ORDER[s] for s in p)


def is_prefix(p: Position, q: Position) -> bool:
    return len(p) <= len(q) and q[: len(p)] == p


def disjoint(p: Position, q: Position) -> bool:
    return not is_prefix(p, q) and not is_prefix(q, p)


def subterm_at(t: Term, p: Position) -> Term:
    """Raw subterm at ``p``; below a binder it may contain loose indices."""
    for s in p:
        if s is Step.FUN and type(t) is App:
            t = t.fun
        elif s is Step.ARG and type(t) is App:
            t = t.arg
        elif s is Step.BODY and type(t) is Lam:
            t = t.body
        else:
            raise ValueError(f"invalid position {format_position(p)}")
    return t


def replace_at(t: Term, p: Position, u: Term) -> Term:
    if not p:
        return u
    s, rest = p[0], p[1:]
    if s is Step.FUN and type(t) is App:
        return App(replace_at(t.fun, rest, u), t.arg)
    if s is Step.ARG and type(t) is App:
        return App(t.fun, replace_at(t.arg, rest, u))
    if s is Step.BODY and type(t) is Lam:
        return Lam(replace_at(t.body, rest, u), t.hint)
    raise ValueError(f"invalid position {format_position(p)}")


def positions(t: Term) -> Iterator[Position]:
    """All positions of ``t`` in leftmost-outermost (preorder) order."""
    stack = [((), t)]
    while stack:
        p, u = stack.pop()
        yield p
        if type(u) is App:
            stack.append((p + (Step.ARG,), u.arg))
            stack.append((p + (Step.FUN,), u.fun))
        elif type(u) is Lam:
            stack.append((p + (Step.BODY,), u.body))


# ---------------------------------------------------------------------------
# de Bruijn plumbing

def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    if d == 0 or t.loose <= cutoff:
        return t
    tp = type(t)
    if tp is Bound:
        return Bound(t.index + d) if t.index >= cutoff else t
    if tp is App:
        return App(shift(t.fun, d, cutoff), shift(t.arg, d, cutoff))
    if tp is Lam:
        return Lam(shift(t.body, d, cutoff + 1), t.hint)
    return t


def instantiate(body: Term, u: Term) -> Term:
    """Replace the outermost bound index of ``body`` by ``u`` (beta-contraction)."""

    def go(t, depth):
        if t.loose <= depth:
            return t
        tp = type(t)
        if tp is Bound:
            if t.index == depth:
                return shift(u, depth)
            return Bound(t.index - 1)
        if tp is App:
            return App(go(t.fun, depth), go(t.arg, depth))
        if tp is Lam:
            return Lam(go(t.body, depth + 1), t.hint)
        return t

    return go(body, 0)


def close(t: Term, name: str) -> Term:
    """Turn free occurrences of ``name`` into the index of a new outer binder."""

    def go(u, depth):
        tp = type(u)
        if tp is Var:
            return Bound(depth) if u.name == name else u
        if tp is Bound:
            return Bound(u.index + 1) if u.index >= depth else u
        if tp is App:
            if name not in free_vars(u) and u.loose <= depth:
                return u
            return App(go(u.fun, depth), go(u.arg, depth))
        if tp is Lam:
            return Lam(go(u.body, depth + 1), u.hint)
        return u

    return go(t, 0)


def lam(name: str, body: Term) -> Lam:
    return Lam(close(body, name), name)


def open_lam(t: Lam, name: str) -> Term:
    return instantiate(t.body, Var(name))


# ---------------------------------------------------------------------------
# basic queries

def free_vars(t: Term) -> frozenset:
    fv = t._fv
    if fv is not None:
        return fv
    tp = type(t)
    if tp is Var:
        fv = frozenset((t.name,))
    elif tp is App:
        a, b = free_vars(t.fun), free_vars(t.arg)
        fv = a | b if b else a
    elif tp is Lam:
        fv = free_vars(t.body)
    else:
        fv = frozenset()
    object.__setattr__(t, "_fv", fv)
    return fv


def symbols(t: Term) -> set:
    out = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if type(u) is Sym:
            out.add(u.name)
        elif type(u) is App:
            stack.extend((u.fun, u.arg))
        elif type(u) is Lam:
            stack.append(u.body)
    return out


def var_occurrences(t: Term) -> dict:
    counts: dict = {}
    stack = [t]
    while stack:
        u = stack.pop()
        if type(u) is Var:
            counts[u.name] = counts.get(u.name, 0) + 1
        elif type(u) is App:
            stack.extend((u.fun, u.arg))
        elif type(u) is Lam:
            stack.append(u.body)
    return counts


def is_closed(t: Term) -> bool:
    return not free_vars(t)


def is_linear(t: Term) -> bool:
    return all(n <= 1 for n in var_occurrences(t).values())


def spine(t: Term) -> tuple:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while type(t) is App:
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def mk_app(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


class TermClass(enum.Enum):
    ALGEBRAIC = "Algebraic"
    APPLICATIVE_ONLY = "ApplicativeOnly"
    GENERAL = "General"


def is_applicative(t: Term) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if type(u) in (Lam, Bound):
            return False
        if type(u) is App:
            stack.extend((u.fun, u.arg))
    return True


def is_algebraic(t: Term) -> bool:
    head, args = spine(t)
    if type(head) is Var:
        return not args
    if type(head) is Sym:
        return all(is_algebraic(a) for a in args)
    return False


def classify_term(t: Term) -> TermClass:
    if is_algebraic(t):
        return TermClass.ALGEBRAIC
    if is_applicative(t):
        return TermClass.APPLICATIVE_ONLY
    return TermClass.GENERAL


def has_beta_redex(t: Term) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if type(u) is App:
            if type(u.fun) is Lam:
                return True
            stack.extend((u.fun, u.arg))
        elif type(u) is Lam:
            stack.append(u.body)
    return False


# ---------------------------------------------------------------------------
# substitution

Substitution = Mapping  # Mapping[str, Term]


def substitute(t: Term, s: Substitution) -> Term:
    """Capture-avoiding simultaneous substitution of free variables."""
    if not s:
        return t

    def go(u, depth):
        fv = free_vars(u)
        if not fv or fv.isdisjoint(s):
            return u
        tp = type(u)
        if tp is Var:
            return shift(s[u.name], depth)
        if tp is App:
            return App(go(u.fun, depth), go(u.arg, depth))
        if tp is Lam:
            return Lam(go(u.body, depth + 1), u.hint)
        return u

    return go(t, 0)


def rename_vars(t: Term, mapping: Mapping) -> Term:
    return substitute(t, {a: Var(b) for a, b in mapping.items()})


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Lowest number of primes appended to ``base`` that avoids ``avoid``."""
    avoid = set(avoid)
    base = base.rstrip("'") or "x"
    name = base
    while name in avoid:
        name += "'"
    return name


# ---------------------------------------------------------------------------
# head decomposition

@dataclass(frozen=True)
class Redex:
    fun: Lam
    arg: Term

    @property
    def binder(self) -> str:
        return self.fun.hint

    @property
    def body(self) -> Term:
        return self.fun.body


@dataclass(frozen=True)
class HeadForm:
    """``\\x1..xm. h a1 .. an`` with ``h`` a variable, a symbol or a redex."""

    outer_binders: tuple
    head: object  # Var | Sym | Redex
    args: tuple

    @property
    def shape(self) -> str:
        return "b" if isinstance(self.head, Redex) else "a"


def head_decompose(t: Term) -> HeadForm:
    binders = []
    avoid = set(free_vars(t))
    while type(t) is Lam:
        name = fresh_name(t.hint, avoid)
        avoid.add(name)
        binders.append(name)
        t = open_lam(t, name)
    head, args = spine(t)
    if type(head) is Lam:
        return HeadForm(tuple(binders), Redex(head, args[0]), tuple(args[1:]))
    return HeadForm(tuple(binders), head, tuple(args))


def rebuild(hf: HeadForm) -> Term:
    head = hf.head
    if isinstance(head, Redex):
        body = mk_app(App(head.fun, head.arg), *hf.args)
    else:
        body = mk_app(head, *hf.args)
    for name in reversed(hf.outer_binders):
        body = lam(name, body)
    return body


# ---------------------------------------------------------------------------
# arity

class MissingArity(KeyError):
    def __init__(self, symbol: str):
        super().__init__(symbol)
        self.symbol = symbol

    def __str__(self):
        return f"no arity declared for symbol {self.symbol!r}"


def arity_violations(t: Term, alpha: Mapping) -> list:
    """Maximal spines ``f t1..tn`` with ``n > alpha(f)``, as (symbol, n) pairs."""
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        head, args = spine(u)
        if type(head) is Sym:
            if head.name not in alpha:
                raise MissingArity(head.name)
            if len(args) > alpha[head.name]:
                out.append((head.name, len(args)))
        elif type(head) is Lam:
            stack.append(head.body)
        stack.extend(args)
    return out


def respects_arity(t: Term, alpha: Mapping) -> bool:
    return not arity_violations(t, alpha)


# ---------------------------------------------------------------------------
# text syntax

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<ident>[a-zA-Z_][a-zA-Z0-9_']*)
  | (?P<num>[0-9]+)
  | (?P<punct>[\\λ.()=,;:/])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident | num | sym | eof
    value: str
    line: int
    col: int


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            tokens.append(Token("ident", m.group(), line, col))
        elif kind == "num":
            tokens.append(Token("num", m.group(), line, col))
        elif kind in ("arrow", "punct"):
            value = "\\" if m.group() == "λ" else m.group()
            tokens.append(Token("sym", value, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TermParser:
    """Recursive-descent parser over a token list; stops at foreign tokens."""

    def __init__(self, tokens: Sequence[Token], symbols: Iterable[str], pos: int = 0,
                 stop_words: Iterable[str] = ()):
        self.tokens = tokens
        self.pos = pos
        self.symbols = set(symbols)
        self.stop_words = set(stop_words)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str) -> Token:
        tok = self.peek()
        if tok.value != value or tok.kind not in ("sym", "ident"):
            raise ParseError(f"expected {value!r}, found {tok.value or 'end of input'!r}",
                             tok.line, tok.col)
        return self.advance()

    def _starts_atom(self, tok: Token) -> bool:
        if tok.kind == "ident":
            return tok.value not in self.stop_words
        return tok.kind == "sym" and tok.value in ("(", "\\")

    def term(self, scope: tuple = ()) -> Term:
        tok = self.peek()
        if tok.kind == "sym" and tok.value == "\\":
            return self._lam(scope)
        if not self._starts_atom(tok):
            raise ParseError(f"expected a term, found {tok.value or 'end of input'!r}",
                             tok.line, tok.col)
        t = self._atom(scope)
        while self._starts_atom(self.peek()):
            if self.peek().value == "\\":
                t = App(t, self._lam(scope))
                break
            t = App(t, self._atom(scope))
        return t

    def _lam(self, scope):
        self.expect("\\")
        names = []
        while self.peek().kind == "ident":
            names.append(self.advance().value)
        if not names:
            tok = self.peek()
            raise ParseError("expected a binder name", tok.line, tok.col)
        self.expect(".")
        body = self.term(scope + tuple(names))
        for name in reversed(names):
            body = Lam(body, name)
        return body

    def _atom(self, scope):
        tok = self.advance()
        if tok.kind == "ident":
            for depth, name in enumerate(reversed(scope)):
                if name == tok.value:
                    return Bound(depth)
            if tok.value in self.symbols:
                return Sym(tok.value)
            return Var(tok.value)
        if tok.value == "(":
            t = self.term(scope)
            self.expect(")")
            return t
        raise ParseError(f"unexpected {tok.value!r}", tok.line, tok.col)


def parse_term(text: str, symbols: Iterable[str] = ()) -> Term:
    """Parse ``text``; identifiers in ``symbols`` become function symbols."""
    p = TermParser(tokenize(text), symbols)
    t = p.term()
    tok = p.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.value!r}", tok.line, tok.col)
    return t


def _binder_name(t: Lam, scope: list) -> str:
    avoid = set(free_vars(t.body))
    for i in _loose_indices(t.body, 1):
        if i - 1 < len(scope):
            avoid.add(scope[-i])
    return fresh_name(t.hint, avoid)


def _loose_indices(t: Term, depth: int) -> set:
    """Indices (relative to depth 0 above ``t``'s own binder) occurring loose."""
    out = set()
    stack = [(t, 0)]
    while stack:
        u, d = stack.pop()
        if u.loose <= d:
            continue
        if type(u) is Bound:
            rel = u.index - d
            if rel >= depth:
                out.add(rel)
        elif type(u) is App:
            stack.append((u.fun, d))
            stack.append((u.arg, d))
        elif type(u) is Lam:
            stack.append((u.body, d + 1))
    return out


def pretty(t: Term) -> str:
    return _pp(t, [], "top")


def _pp(t: Term, scope: list, ctx: str) -> str:
    tp = type(t)
    if tp is Var or tp is Sym:
        return t.name
    if tp is Bound:
        if t.index < len(scope):
            return scope[-1 - t.index]
        return f"#{t.index}"
    if tp is Lam:
        name = _binder_name(t, scope)
        s = f"\\{name}. {_pp(t.body, scope + [name], 'top')}"
        return s if ctx == "top" else f"({s})"
    s = f"{_pp(t.fun, scope, 'fun')} {_pp(t.arg, scope, 'arg')}"
    return f"({s})" if ctx == "arg" else s


def sort_key(t: Term):
    return (t.size, pretty(t))
