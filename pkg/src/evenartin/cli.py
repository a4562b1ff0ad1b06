"""Command-line front end.

Exit codes: 0 yes (or success), 1 no, 2 unknown, 3 bad input, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .automorphism import FullAuto, OuterAuto, apply_outer, apply_outer_inverse
from .decide import NO, UNKNOWN, Verdict, conjugacy, orbit_single, tcp_given, tcp_phi, tcp_uniform_outer
from .errors import (
    BudgetError,
    InvariantError,
    ParameterError,
    PreconditionError,
    WordParseError,
)
from .oracle import SearchBudget, find_twisted_conjugator
from .repset import (
    build_rep_set,
    closure_applies,
    closure_dot,
    finite_closure_graph,
    rep_set_dot,
    rep_set_json,
)
from .shifts import cyclic_reduce
from .words import GroupParams, parse, to_modular

EXIT_CODES = {"yes": 0, NO: 1, UNKNOWN: 2}
EXIT_USAGE = 3
EXIT_INTERNAL = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="rank of the free part")
    group.add_argument("--m", type=int, help="Artin parameter, even and at least 4")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", dest="mode", action="store_const", const="json")
    out.add_argument("--text", dest="mode", action="store_const", const="text")
    out.add_argument("--dot", dest="mode", action="store_const", const="dot")
    p.add_argument("--trace", action="store_true", help="print the decision trace to stderr")
    return p


def _auto_flags(p: argparse.ArgumentParser, with_d: bool = True, with_inner: bool = False):
    p.add_argument("--ex", type=int, choices=(1, -1), default=1)
    p.add_argument("--ey", type=int, choices=(1, -1), default=1)
    if with_d:
        p.add_argument("--d", type=int, default=0)
    if with_inner:
        p.add_argument("--inner", default=None, help="conjugating element g of the automorphism")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="evenartin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="print the normal form of a word")
    p.add_argument("word")

    p = sub.add_parser("phi", parents=[common], help="apply an automorphism to a word")
    _auto_flags(p, with_inner=True)
    p.add_argument("--inverse", action="store_true", help="apply the inverse outer automorphism")
    p.add_argument("word")

    p = sub.add_parser("tcp", parents=[common], help="twisted conjugacy for a given automorphism")
    _auto_flags(p, with_inner=True)
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("tcp-uniform", parents=[common], help="twisted conjugacy for some outer class")
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("conj", parents=[common], help="ordinary conjugacy")
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("orbit", parents=[common], help="is v conjugate to (ex, ey, d)(u) for some d")
    _auto_flags(p, with_d=False)
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("repset", parents=[common], help="representative set of a word")
    _auto_flags(p)
    p.add_argument("--closure", action="store_true", help="emit the full finite closure instead")
    p.add_argument("word")

    p = sub.add_parser("oracle", parents=[common], help="brute-force conjugator search")
    _auto_flags(p)
    p.add_argument("--oracle-max-free-len", "--max-free-len", dest="max_free_len", type=int, default=4)
    p.add_argument("--oracle-max-y", "--max-y", dest="max_y", type=int, default=6)
    p.add_argument("u")
    p.add_argument("v")
    return parser


def _rank(args) -> int:
    if args.m is not None:
        return GroupParams.from_m(args.m).n
    return GroupParams(args.n).n


def _word(text: str, n: int, role: str):
    try:
        return parse(text, n)
    except WordParseError as exc:
        raise WordParseError(f"{role}: {exc}", exc.token, exc.position) from None


def _emit_verdict(v: Verdict, args, out) -> int:
    if args.trace:
        for line in v.trace:
            print(line, file=sys.stderr)
    if args.mode == "json":
        print(json.dumps(v.to_json(), indent=2), file=out)
    else:
        print(v.answer, file=out)
        if v.is_yes:
            o = v.phi.outer
            print(f"phi: ({o.ex}, {o.ey}, {o.d})", file=out)
            if v.phi.inner.free.data or v.phi.inner.t:
                print(f"inner: {v.phi.inner}", file=out)
            print(f"witness: {v.witness}", file=out)
            if v.lam is not None:
                print(f"lambda: {v.lam}", file=out)
        elif v.reason:
            print(f"reason: {v.reason}", file=out)
    return EXIT_CODES[v.answer]


def _run(args, out) -> int:
    n = _rank(args)
    cmd = args.command
    if args.mode == "dot" and cmd != "repset":
        raise UsageError("--dot is only available for repset")

    if cmd == "normalize":
        g = _word(args.word, n, "word")
        if args.mode == "json":
            m = to_modular(g)
            print(json.dumps({"free": str(g.free), "t": g.t, "c": m.c, "k": m.k}), file=out)
        else:
            print(g, file=out)
        return 0

    if cmd == "phi":
        g = _word(args.word, n, "word")
        phi = OuterAuto(args.ex, args.ey, args.d)
        if args.inverse:
            if args.inner is not None:
                raise UsageError("--inverse cannot be combined with --inner")
            image = apply_outer_inverse(phi, g)
        elif args.inner is not None:
            image = FullAuto(_word(args.inner, n, "inner"), phi).apply(g)
        else:
            image = apply_outer(phi, g)
        if args.mode == "json":
            print(json.dumps({"free": str(image.free), "t": image.t}), file=out)
        else:
            print(image, file=out)
        return 0

    if cmd in ("tcp", "tcp-uniform", "conj", "orbit"):
        u = _word(args.u, n, "u")
        v = _word(args.v, n, "v")
        if cmd == "tcp":
            phi = OuterAuto(args.ex, args.ey, args.d)
            if args.inner is not None:
                verdict = tcp_given(u, v, FullAuto(_word(args.inner, n, "inner"), phi))
            else:
                verdict = tcp_phi(u, v, phi)
        elif cmd == "tcp-uniform":
            verdict = tcp_uniform_outer(u, v)
        elif cmd == "conj":
            verdict = conjugacy(u, v)
        else:
            verdict = orbit_single(u, v, args.ex, args.ey)
        return _emit_verdict(verdict, args, out)

    if cmd == "repset":
        phi = OuterAuto(args.ex, args.ey, args.d)
        u = to_modular(_word(args.word, n, "word"))
        red, w = cyclic_reduce(u, phi)
        if red != u:
            print(f"note: reduced to {red.describe()} by {w}", file=sys.stderr)
        if len(red.free) == 0:
            raise PreconditionError("the reduced element is a power of y; it has no representative set")
        if args.closure:
            if not closure_applies(red, phi):
                raise ParameterError("the closure is infinite for this automorphism and word")
            g = finite_closure_graph(red, phi)
            if args.mode == "dot":
                out.write(closure_dot(g))
            elif args.mode == "json":
                elements = [
                    {"free": str(e.free), "c": e.c, "k": e.k, "witness": str(g.witness(i))}
                    for i, e in enumerate(g.nodes)
                ]
                doc = {"n": n, "phi": {"ex": phi.ex, "ey": phi.ey, "d": phi.d}, "elements": elements}
                print(json.dumps(doc, indent=2), file=out)
            else:
                for i, e in enumerate(g.nodes):
                    print(f"{e.describe()}  witness: {g.witness(i)}", file=out)
            return 0
        r = build_rep_set(red, phi)
        if args.mode == "dot":
            out.write(rep_set_dot(r))
        elif args.mode == "json":
            print(json.dumps(rep_set_json(r), indent=2), file=out)
        else:
            for i, e in enumerate(r.base):
                print(f"{e.describe()}  witness: {r.witness(i)}", file=out)
            print(f"twisted shift: {r.twisted_shift}", file=out)
        return 0

    if cmd == "oracle":
        u = _word(args.u, n, "u")
        v = _word(args.v, n, "v")
        phi = OuterAuto(args.ex, args.ey, args.d)
        budget = SearchBudget(args.max_free_len, args.max_y)
        w = find_twisted_conjugator(u, v, phi, budget)
        if args.mode == "json":
            doc = {"found": w is not None, "witness": None if w is None else str(w),
                   "searched": budget.size(n)}
            print(json.dumps(doc), file=out)
        else:
            print(f"witness: {w}" if w is not None else "no witness within budget", file=out)
        return 0 if w is not None else EXIT_CODES[UNKNOWN]

    raise UsageError(f"unknown command {cmd!r}")


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    """Run the CLI and return its exit code."""
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return _run(args, out)
    except (UsageError, WordParseError, ParameterError, PreconditionError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
