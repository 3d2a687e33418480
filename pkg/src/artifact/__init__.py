"""Lambda-calculus combined with join conditional rewriting."""
from .beta import FuelExhausted, Normalized, lo_normalize
from .classify import applicable_theorems, classify_system, format_report
from .common import DEFAULT_FUEL, Fuel, Tri
from .critical import critical_pairs, orthonormal_check, probe_feasibility
from .rewrite import (Engine, Joinable, Mode, NotJoinableWithinBudget, Refuted, Strategy,
                      format_derivation, joinable, reduce_many, successors)
from .rules import CondRule, RuleSystem, make_system
from .rulefile import load_builtin, parse_rulefile, print_rulefile
from .terms import App, Bound, Lam, Sym, Var, parse_term, pretty
from .unify import match_pattern, unify, unify_all

__all__ = [
    "App", "Bound", "CondRule", "DEFAULT_FUEL", "Engine", "Fuel", "FuelExhausted", "Joinable",
    "Lam", "Mode", "Normalized", "NotJoinableWithinBudget", "Refuted", "RuleSystem", "Strategy",
    "Sym", "Tri", "Var", "applicable_theorems", "classify_system", "critical_pairs",
    "format_derivation", "format_report", "joinable", "lo_normalize", "load_builtin", "make_system", "match_pattern",
    "orthonormal_check", "parse_rulefile", "parse_term", "pretty", "print_rulefile",
    "probe_feasibility", "reduce_many", "successors", "unify", "unify_all",
]
