"""``artifact`` command-line interface.

Exit status: 0 success, 1 failed claim or invalid system, 2 usage error,
3 parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .beta import Normalized, lo_normalize
from .classify import FLAGS, applicable_theorems, classify_system, format_report
from .common import Fuel
from .critical import critical_pairs, probe_feasibility
from .lab import (TermGenerator, check_commutation_sample, check_shallow_confluence, explore,
                  PBETA, Rel, run_corpus)
from .rewrite import Engine, Mode, Strategy, format_derivation
from .rulefile import builtin_names, load_builtin, parse_rulefile
from .rules import validate
from .terms import ParseError, parse_term, pretty

SCHEMA = "v1"


class UsageError(Exception):
    pass


def load_system(arg: str):
    """A rule file path, or the name of a built-in system."""
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            name = os.path.splitext(os.path.basename(arg))[0]
            return parse_rulefile(fh.read(), name)
    name = arg[:-4] if arg.endswith(".crs") else arg
    if name in builtin_names():
        return load_builtin(name)
    raise UsageError(f"no such rule file or built-in system: {arg}")


def _fuel(args) -> Fuel:
    return Fuel(max_steps=args.fuel_steps, max_term_size=args.fuel_size,
                max_nodes=args.fuel_nodes)


def _emit(args, payload: dict, text: str):
    if args.json:
        payload = dict(payload, schema=SCHEMA, command=args.command)
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2))
    else:
        print(text.rstrip("\n"))


def _valid_or_report(args, rf) -> bool:
    problems = validate(rf.system)
    if problems:
        _emit(args, {"violations": [str(v) for v in problems]},
              "\n".join(f"violation: {v}" for v in problems))
        return False
    return True


# commands


def cmd_check(args) -> int:
    rf = load_system(args.file)
    rs = rf.system
    if not _valid_or_report(args, rf):
        return 1
    c = classify_system(rs)
    v = applicable_theorems(c)
    failed = []
    for key, want in rf.claims:
        if key in FLAGS and getattr(c, key).value.value != want:
            failed.append(f"claim {key} {want}: got {getattr(c, key).value.value}")
    reports = []
    if args.samples:
        gen = TermGenerator(rs, seed=args.seed, max_size=10)
        fuel = _fuel(args)
        if c.orthonormal:
            reports.append(check_shallow_confluence(rs, gen.term, args.samples,
                                                    tuple(range(1, args.max_level + 1)),
                                                    fuel, args.seed))
        for lv in range(1, args.max_level + 1):
            reports.append(check_commutation_sample(rs, PBETA, Rel("step", Mode.R, lv),
                                                    gen.term, args.samples, fuel, args.seed))
    text = format_report(c, v)
    ortho = "yes" if c.orthonormal else "no"
    text += f"orthonormal: {ortho}" + ("; beta-Rbeta/orthonormal applies\n" if c.orthonormal
                                       else "\n")
    text += "".join(f"{r}\n" for r in reports)
    text += "".join(f"FAILED {f}\n" for f in failed)
    _emit(args, {"system": rf.name, "classification": c.as_dict(), "theorems": v.as_dict(),
                 "claims_failed": failed, "reports": [r.as_dict() for r in reports]}, text)
    return 1 if failed or any(r.failures for r in reports) else 0


def cmd_cps(args) -> int:
    rf = load_system(args.file)
    rs = rf.system
    if not _valid_or_report(args, rf):
        return 1
    fuel = _fuel(args)
    rows = []
    lines = []
    for cp in critical_pairs(rs):
        verdict = probe_feasibility(cp, rs, Mode.BETA_RBETA, args.max_level, fuel,
                                    args.samples or 200)
        outer, inner, _ = cp.overlap
        rows.append(dict(cp.as_dict(), feasibility=str(verdict)))
        lines.append(f"{cp}\n    [{outer} over {inner}] {verdict}")
    _emit(args, {"system": rf.name, "critical_pairs": rows},
          "\n".join(lines) if lines else "no critical pairs")
    return 0


def cmd_eval(args) -> int:
    rf = load_system(args.file)
    if not _valid_or_report(args, rf):
        return 1
    t = parse_term(args.term, rf.system.signature)
    mode = Mode.parse(args.mode)
    strategy = Strategy(args.strategy)
    steps = Engine(rf.system, _fuel(args)).reduce_many(t, mode, args.level, strategy)
    final = steps[-1].target if steps else t
    text = f"term: {pretty(t)}\n{format_derivation(steps)}\nresult: {pretty(final)}"
    _emit(args, {"term": pretty(t), "steps": [s.as_dict() for s in steps],
                 "result": pretty(final)}, text)
    return 0


def cmd_joinable(args) -> int:
    rf = load_system(args.file)
    if not _valid_or_report(args, rf):
        return 1
    sig = rf.system.signature
    left, right = parse_term(args.left, sig), parse_term(args.right, sig)
    verdict = Engine(rf.system, _fuel(args)).join(left, right, Mode.parse(args.mode),
                                                  args.level)
    _emit(args, dict(verdict.as_dict(), left=pretty(left), right=pretty(right)), str(verdict))
    return 0


def cmd_explore(args) -> int:
    rf = load_system(args.file)
    if not _valid_or_report(args, rf):
        return 1
    t = parse_term(args.term, rf.system.signature)
    g = explore(t, rf.system, Mode.parse(args.mode), args.level, _fuel(args))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(g.to_dot())
    _emit(args, g.as_dict(), g.to_dot())
    return 0


def cmd_normalize(args) -> int:
    sig = load_system(args.file).system.signature if args.file else ()
    t = parse_term(args.term, sig)
    out = lo_normalize(t, _fuel(args))
    kind = type(out).__name__
    result = out.term if isinstance(out, Normalized) else out.last
    _emit(args, {"outcome": kind, "term": pretty(result), "steps": out.steps},
          f"{kind}({pretty(result)}, steps={out.steps})")
    return 0


def cmd_corpus(args) -> int:
    rows = run_corpus()
    lines = [f"{'ok  ' if ok else 'FAIL'} {name}: {claim} -- {detail}"
             for name, claim, ok, detail in rows]
    failed = sum(not ok for *_, ok, _ in rows)
    lines.append(f"{len(rows) - failed}/{len(rows)} claims hold")
    _emit(args, {"claims": [{"entry": n, "claim": c, "ok": ok, "detail": d}
                            for n, c, ok, d in rows]}, "\n".join(lines))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=0)
    common.add_argument("--fuel-steps", type=int, default=50)
    common.add_argument("--fuel-size", type=int, default=200)
    common.add_argument("--fuel-nodes", type=int, default=4000)
    common.add_argument("--max-level", type=int, default=3)

    p = argparse.ArgumentParser(prog="artifact",
                                description="Lambda-calculus with join conditional rewriting.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="classify a system")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("cps", parents=[common], help="critical pairs and feasibility")
    s.add_argument("file")
    s.set_defaults(func=cmd_cps)

    term_cmds = (("eval", cmd_eval, "print a derivation"),
                 ("explore", cmd_explore, "dump the reduction graph"))
    for name, func, hlp in term_cmds:
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("file")
        s.add_argument("--term", required=True)
        s.add_argument("--mode", default="BetaUnionRBeta")
        s.add_argument("--level", type=int, default=3)
        if name == "eval":
            s.add_argument("--strategy", default="LeftmostOutermost",
                           choices=[x.value for x in Strategy])
        else:
            s.add_argument("--dot", help="also write the DOT graph to this file")
        s.set_defaults(func=func)

    s = sub.add_parser("joinable", parents=[common], help="bounded joinability")
    s.add_argument("file")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--mode", default="R")
    s.add_argument("--level", type=int, default=3)
    s.set_defaults(func=cmd_joinable)

    s = sub.add_parser("normalize", parents=[common], help="beta-normalize a term")
    s.add_argument("file", nargs="?")
    s.add_argument("--term", required=True)
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("corpus", parents=[common], help="check the built-in corpus")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
