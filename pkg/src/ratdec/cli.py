"""Command-line interface.

Subcommands::

    compose            g and h  ->  g(h)
    decompose          tame split at --right-degree, complete chains with
                       --complete, or exhaustive finite-field search with
                       --brute-force
    fixgroup           fixing group of a polynomial or rational function
    leftdiv            g with g(h) = f, given f and h
    member             is g a rational function of h?
    invariant          invariant of the cyclic subgroup <u> of Gamma(f),
                       optionally splitting f along it
    verify-theorem     seeded random checks of the order-divisibility theorem
    explore-conjecture seeded survey of the rational-function conjecture
    corpus             run the worked-example corpus

Every subcommand takes ``--field`` (default ``Q``) using the descriptor
grammar ``Q | Q[s]/(mod) | GF(p) | GF(p)[s]/(mod)``.  Expressions use
explicit ``*`` and ``^``; pass ``-`` to read an expression from stdin.

Exit codes: 0 success, 1 usage error (bad flags, bad syntax), 2 mathematical
failure (no decomposition, failed division, a theorem check violated, or a
corpus item Failed).  ``--json`` emits a deterministic sorted-key document;
text output is for humans and carries no stability guarantee.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import errors
from .decomp import (complete_decompositions, decompose_poly,
                     decompose_poly_bruteforce, is_member, left_divide)
from .exprparse import parse_expression, parse_ratfunc
from .field import FieldCtx, make_field
from .fixgroup import (FixGroup, decompose_via_subgroup,
                       fixing_group_bruteforce, fixing_group_poly_tame,
                       fixing_group_rational, group_structure,
                       invariant_function)
from .poly import Poly
from .ratfunc import Mobius, RatFunc, mobius_order
from .verify import (explore_conjecture, run_divisibility_suite,
                     run_paper_corpus)

SCHEMA = "ratdec.report.v1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MATH = 2


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_expr(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    return text


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _group_payload(G: FixGroup) -> dict:
    return {
        "order": G.order,
        "cyclic": G.is_cyclic,
        "generator": str(G.generator) if G.generator is not None else None,
        "elements": [str(u) for u in G.sorted_elements()],
    }


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_compose(args, F: FieldCtx) -> int:
    from .ratfunc import compose
    g = parse_ratfunc(_read_expr(args.outer), F)
    h = parse_ratfunc(_read_expr(args.inner), F)
    f = compose(g, h)
    _emit(args, {"command": "compose", "field": F.descriptor(),
                 "result": str(f), "degree": f.degree},
          [str(f)])
    return EXIT_OK


def _cmd_decompose(args, F: FieldCtx) -> int:
    expr = parse_expression(_read_expr(args.poly), F)
    if isinstance(expr, RatFunc):
        raise errors.InvalidInput(
            "decompose expects a polynomial; use leftdiv for rational functions")
    f = expr
    if args.complete:
        chains = complete_decompositions(f)
        payload = {"command": "decompose", "field": F.descriptor(),
                   "complete": [[str(c) for c in d.components]
                                for d in chains]}
        lines = [" o ".join(str(c) for c in d.components) for d in chains]
        _emit(args, payload, lines or ["(indecomposable)"])
        return EXIT_OK
    if args.right_degree is None:
        raise errors.InvalidInput("need --right-degree or --complete")
    if args.brute_force:
        pairs = decompose_poly_bruteforce(f, args.right_degree)
        payload = {"command": "decompose", "field": F.descriptor(),
                   "pairs": [{"g": str(g), "h": str(h)} for g, h in pairs]}
        lines = [f"g = {g}   h = {h}" for g, h in pairs]
        _emit(args, payload, lines or ["no decomposition"])
        return EXIT_OK if pairs else EXIT_MATH
    pair = decompose_poly(f, args.right_degree)
    if pair is None:
        _emit(args, {"command": "decompose", "field": F.descriptor(),
                     "pairs": []}, ["no decomposition"])
        return EXIT_MATH
    g, h = pair
    _emit(args, {"command": "decompose", "field": F.descriptor(),
                 "pairs": [{"g": str(g), "h": str(h)}]},
          [f"g = {g}", f"h = {h}"])
    return EXIT_OK


def _cmd_fixgroup(args, F: FieldCtx) -> int:
    expr = parse_expression(_read_expr(args.expr), F)
    method = args.method
    if method == "auto":
        char = F.characteristic()
        tame_poly = (isinstance(expr, Poly)
                     and not (char and int(expr.degree) % char == 0))
        method = "tame" if tame_poly else "rational"
    if method == "tame":
        if not isinstance(expr, Poly):
            raise errors.InvalidInput("the tame method needs a polynomial")
        G = fixing_group_poly_tame(expr)
    elif method == "brute":
        G = fixing_group_bruteforce(
            expr if isinstance(expr, RatFunc) else RatFunc.from_poly(expr))
    else:
        G = fixing_group_rational(
            expr if isinstance(expr, RatFunc) else RatFunc.from_poly(expr))
    payload = {"command": "fixgroup", "field": F.descriptor(),
               "method": method, **_group_payload(G)}
    lines = [f"order {G.order}" + (" (cyclic)" if G.is_cyclic else ""),
             "elements: {" + ", ".join(str(u) for u in G.sorted_elements())
             + "}"]
    if G.generator is not None:
        lines.append(f"generator: {G.generator}")
    if args.structure:
        s = group_structure(G)
        payload["subgroups"] = [
            {"order": sub.order, "generator": str(sub.generator),
             "elements": [str(u) for u in sub.sorted_elements()]}
            for sub in s["cyclic_subgroups"]]
        for sub in s["cyclic_subgroups"]:
            lines.append(f"subgroup order {sub.order}: "
                         f"<{sub.generator}>")
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_leftdiv(args, F: FieldCtx) -> int:
    f = parse_ratfunc(_read_expr(args.composite), F)
    h = parse_ratfunc(_read_expr(args.right), F)
    g = left_divide(f, h)
    if g is None:
        _emit(args, {"command": "leftdiv", "field": F.descriptor(),
                     "g": None}, ["no left component"])
        return EXIT_MATH
    _emit(args, {"command": "leftdiv", "field": F.descriptor(),
                 "g": str(g), "degree": g.degree}, [f"g = {g}"])
    return EXIT_OK


def _cmd_member(args, F: FieldCtx) -> int:
    g = parse_ratfunc(_read_expr(args.function), F)
    h = parse_ratfunc(_read_expr(args.generator), F)
    verdict = is_member(g, h)
    _emit(args, {"command": "member", "field": F.descriptor(),
                 "member": verdict}, ["true" if verdict else "false"])
    return EXIT_OK


def _cmd_invariant(args, F: FieldCtx) -> int:
    f = parse_ratfunc(_read_expr(args.function), F)
    u_rf = parse_ratfunc(args.element, F)
    u = Mobius.from_ratfunc(u_rf)
    if mobius_order(u, max(60, f.degree)) is None:
        raise errors.InvalidInput(f"{u} has no finite order within bound")
    G = fixing_group_rational(f)
    if u not in G:
        raise errors.InvalidInput(f"{u} does not fix the function")
    H = G.subgroup_generated_by(u)
    h = invariant_function(H)
    payload = {"command": "invariant", "field": F.descriptor(),
               "subgroup_order": H.order, "invariant": str(h)}
    lines = [f"subgroup order {H.order}", f"h = {h}"]
    if args.decompose:
        pair = decompose_via_subgroup(f, H)
        if pair is None:
            payload["g"] = None
            lines.append("left division failed")
            _emit(args, payload, lines)
            return EXIT_MATH
        payload["g"] = str(pair[0])
        lines.append(f"g = {pair[0]}")
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_verify_theorem(args, F: FieldCtx) -> int:
    report = run_divisibility_suite(F, trials=args.trials, seed=args.seed,
                                    witness_trials=args.witnesses)
    ok = report["all_hold"]
    lines = [f"{report['trials']} trials over {report['field']}: "
             + ("all hold" if ok else f"{report['violations']} violations")]
    _emit(args, {"command": "verify-theorem", **report}, lines)
    return EXIT_OK if ok else EXIT_MATH


def _cmd_explore_conjecture(args, F: FieldCtx) -> int:
    report = explore_conjecture(F, trials=args.trials, seed=args.seed,
                                max_degree=args.max_degree)
    lines = [f"{report['trials']} trials over {report['field']}: "
             f"{report['violation_count']} divisibility violations"]
    for v in report["violations"]:
        lines.append(f"  violation: f={v['f']} k={v['k']} k1={v['k1']} "
                     f"k2={v['k2']}")
    _emit(args, {"command": "explore-conjecture", **report}, lines)
    return EXIT_OK


def _cmd_corpus(args, F: FieldCtx) -> int:
    report = run_paper_corpus()
    d = report.to_dict()
    lines = []
    for item in report.items:
        lines.append(f"[{item.status}] {item.identifier}: {item.details}")
    _emit(args, {"command": "corpus", **d}, lines)
    return EXIT_OK if d["all_ok"] else EXIT_MATH


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------

def build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="ratdec",
                             description=__doc__,
                             formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--json", action="store_true",
                        help="emit a deterministic JSON document")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--field", default="Q",
                       help="field descriptor (default Q)")
        p.set_defaults(handler=handler)
        return p

    p = add("compose", _cmd_compose, help="compose g(h)")
    p.add_argument("outer")
    p.add_argument("inner")

    p = add("decompose", _cmd_decompose, help="decompose a polynomial")
    p.add_argument("--right-degree", type=int)
    p.add_argument("--complete", action="store_true",
                   help="enumerate complete decompositions")
    p.add_argument("--brute-force", action="store_true",
                   help="exhaustive finite-field search")
    p.add_argument("poly")

    p = add("fixgroup", _cmd_fixgroup, help="compute the fixing group")
    p.add_argument("--method", choices=("auto", "tame", "rational", "brute"),
                   default="auto")
    p.add_argument("--structure", action="store_true",
                   help="also list cyclic subgroups")
    p.add_argument("expr")

    p = add("leftdiv", _cmd_leftdiv, help="solve g(h) = f for g")
    p.add_argument("composite")
    p.add_argument("right")

    p = add("member", _cmd_member, help="decide g in K(h)")
    p.add_argument("function")
    p.add_argument("generator")

    p = add("invariant", _cmd_invariant,
            help="invariant of the subgroup generated by a unit")
    p.add_argument("--element", required=True,
                   help="a degree-1 expression generating the subgroup")
    p.add_argument("--decompose", action="store_true",
                   help="also left-divide f by the invariant")
    p.add_argument("function")

    p = add("verify-theorem", _cmd_verify_theorem,
            help="seeded divisibility-theorem checks")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--witnesses", type=int, default=0,
                   help="verify proof witnesses on this many leading trials")

    p = add("explore-conjecture", _cmd_explore_conjecture,
            help="survey the rational-function conjecture")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=8)

    add("corpus", _cmd_corpus, help="run the worked-example corpus")
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = make_field(args.field)
        return args.handler(args, field)
    except errors.UsageError as exc:
        if args.json:
            print(json.dumps({"schema": SCHEMA, "error": exc.code,
                              "message": str(exc)}, sort_keys=True))
        else:
            print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except errors.MathError as exc:
        if args.json:
            print(json.dumps({"schema": SCHEMA, "error": exc.code,
                              "message": str(exc)}, sort_keys=True))
        else:
            print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
