"""The ``.crs`` rule-file format.

::

    # comment
    system tree ;
    sig nil/0 cons/2 true false ;          # arity is optional
    rule car: car (cons x l) -> x ;
    rule occ3: occ (cons x o) (node y l) -> occ o (get l x)
        if gt (length l) x = true ;
    claim orthonormal true ;

Identifiers declared with ``sig`` are function symbols, every other
identifier in a rule is a variable. A system has a declared arity map only
when every symbol carries an arity.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .rules import CondRule, RuleSystem, Symbol
from .terms import ParseError, Sym, TermParser, pretty, spine, tokenize


class UndeclaredSymbol(ParseError):
    pass


class ArityRedeclared(ParseError):
    pass


@dataclass(frozen=True)
class RuleFile:
    name: str
    symbols: tuple
    rules: tuple
    claims: tuple = ()  # (key, value) pairs in file order

    @property
    def system(self) -> RuleSystem:
        return RuleSystem(self.symbols, self.rules, self.name)

    def claim(self, key: str, default: Optional[str] = None) -> Optional[str]:
        for k, v in self.claims:
            if k == key:
                return v
        return default


_STOP = ("if",)


def parse_rulefile(text: str, name: str = "") -> RuleFile:
    toks = tokenize(text)
    pos = 0
    syms: dict = {}
    rules = []
    claims = []

    def peek():
        return toks[pos]

    def take(kind=None, value=None):
        nonlocal pos
        tok = toks[pos]
        if (kind and tok.kind != kind) or (value is not None and tok.value != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {tok.value or 'end of input'!r}",
                             tok.line, tok.col)
        pos += 1
        return tok

    def term():
        nonlocal pos
        p = TermParser(toks, syms, pos, _STOP)
        t = p.term()
        pos = p.pos
        return t

    while peek().kind != "eof":
        kw = take("ident")
        if kw.value == "system":
            name = take("ident").value
        elif kw.value == "sig":
            while peek().kind == "ident":
                tok = take("ident")
                arity = None
                if peek().value == "/":
                    take(value="/")
                    arity = int(take("num").value)
                old = syms.get(tok.value, ...)
                if old is not ... and old != arity:
                    raise ArityRedeclared(f"symbol {tok.value} redeclared", tok.line, tok.col)
                syms[tok.value] = arity
        elif kw.value == "rule":
            rname = take("ident").value
            take(value=":")
            head_tok = peek()
            lhs = term()
            h, _ = spine(lhs)
            if type(h) is not Sym and head_tok.kind == "ident" and lhs != h:
                raise UndeclaredSymbol(f"undeclared symbol {head_tok.value} heads the "
                                       f"left-hand side of {rname}", head_tok.line, head_tok.col)
            take(value="->")
            rhs = term()
            conds = []
            if peek().kind == "ident" and peek().value == "if":
                take()
                while True:
                    d = term()
                    take(value="=")
                    c = term()
                    conds.append((d, c))
                    if peek().value != ",":
                        break
                    take(value=",")
            rules.append(CondRule(rname, lhs, rhs, tuple(conds)))
        elif kw.value == "claim":
            key = take("ident").value
            words = []
            while peek().kind != "eof" and peek().value != ";":
                words.append(take().value)
            claims.append((key, " ".join(words)))
        else:
            raise ParseError(f"unknown declaration {kw.value!r}", kw.line, kw.col)
        take(value=";")
    symbols = tuple(Symbol(n, a) for n, a in syms.items())
    return RuleFile(name, symbols, tuple(rules), tuple(claims))


def print_rulefile(rf: RuleFile) -> str:
    lines = []
    if rf.name:
        lines.append(f"system {rf.name} ;")
    decls = " ".join(s.name if s.declared_arity is None else f"{s.name}/{s.declared_arity}"
                     for s in rf.symbols)
    lines.append(f"sig {decls} ;")
    for r in rf.rules:
        line = f"rule {r.name}: {pretty(r.lhs)} -> {pretty(r.rhs)}"
        if r.conditions:
            line += " if " + ", ".join(f"{pretty(d)} = {pretty(c)}" for d, c in r.conditions)
        lines.append(line + " ;")
    for k, v in rf.claims:
        lines.append(f"claim {k} {v} ;".replace("  ", " "))
    return "\n".join(lines) + "\n"


def rulefile_from_system(rs: RuleSystem) -> RuleFile:
    return RuleFile(rs.name, rs.symbols, rs.rules)


def builtin_names() -> list:
    files = resources.files("artifact") / "data"
    return sorted(p.name[:-4] for p in files.iterdir() if p.name.endswith(".crs"))


def load_builtin(name: str) -> RuleFile:
    path = resources.files("artifact") / "data" / f"{name}.crs"
    return parse_rulefile(path.read_text(encoding="utf-8"), name)


__all__ = ["ArityRedeclared", "RuleFile", "UndeclaredSymbol", "builtin_names", "load_builtin",
           "parse_rulefile", "print_rulefile", "rulefile_from_system"]
