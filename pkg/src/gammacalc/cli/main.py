"""Command line entry point.  Exit codes: 0 true/ok, 1 false, 2 error."""

from __future__ import annotations

import argparse
import json
import sys

from ..decomp import FinMatrix, decompose
from ..gami import ideal_member, polar, unit_witness
from ..scalars import QQ, ring_by_name
from ..seqspace import IdealTag, member
from ..suites import SUITES, default_trials, run_suite
from ..sumring import as_lazy
from .evaluate import COHN, CROSSED, LAZY, OP, SCALAR, SEQ, evaluate, render
from .evaluate import _as as coerce

OK, FALSE, ERROR = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _op(src: str, ring):
    t, v = evaluate(src, ring)
    if t not in (OP, SCALAR, COHN):
        raise ValueError(f"expected an operator, got {t}")
    return coerce(v, t, OP, ring)


def cmd_eval(args) -> int:
    t, v = evaluate(args.expr, args.ring)
    print(render(t, v))
    return OK


def cmd_window(args) -> int:
    t, v = evaluate(args.expr, args.ring)
    n = args.n
    if t == SEQ:
        print(_dump({"n": n, "ring": args.ring.name, "values": [str(x) for x in v.window(n)]}))
        return OK
    if t == COHN:
        from ..cohn import rho
        v, t = rho(v, args.ring), OP
    elif t == CROSSED:
        from ..crossed import cp_to_gami
        v, t = cp_to_gami(v), OP
    v = coerce(v, t, OP, args.ring) if t == SCALAR else v
    print(as_lazy(v).window(n).to_json())
    return OK


def cmd_equal(args) -> int:
    (ta, a), (tb, b) = evaluate(args.left, args.ring), evaluate(args.right, args.ring)
    if LAZY in (ta, tb):
        raise ValueError("Phi values are compared through window --n N")
    if ta != tb:
        target = tb if ta == SCALAR else ta
        a, b = coerce(a, ta, target, args.ring), coerce(b, tb, target, args.ring)
    return OK if a == b else FALSE


def cmd_member(args) -> int:
    tag = IdealTag.parse(args.ideal)
    t, v = evaluate(args.expr, args.ring)
    if t in (SEQ, SCALAR):
        ok = member(coerce(v, t, SEQ, args.ring), tag)
    elif t == OP:
        ok = ideal_member(v, tag)
    elif t == CROSSED:
        from ..crossed import cp_to_gami
        ok = ideal_member(cp_to_gami(v), tag)
    elif t == COHN:
        ok = ideal_member(coerce(v, t, OP, args.ring), tag)
    else:
        raise ValueError(f"membership is defined for sequences and operators, not {t}")
    return OK if ok else FALSE


def cmd_decompose(args) -> int:
    A = FinMatrix.load(args.file, args.ring if args.ring_given else None)
    comps = decompose(A)
    out = [{"alpha": str(c.alpha), "f": str(c.f), "matrix": c.matrix.to_json()["entries"],
            "witness": c.witness.to_json()} for c in comps]
    print(json.dumps({"rows": A.rows, "cols": A.cols, "ring": A.ring.name, "components": out},
                     sort_keys=True, indent=1))
    return OK


def cmd_polar(args) -> int:
    x = _op(args.expr, args.ring)
    alpha, f = x.as_term()
    P = polar(alpha, f)
    print(_dump({"V": str(P.V), "abs": str(P.abs), "phase": str(P.phase), "f": str(P.f)}))
    return OK


def cmd_unit_witness(args) -> int:
    x = _op(args.expr, args.ring)
    alpha, f = x.as_term()
    w = unit_witness(alpha, f)
    print(_dump({"D": str(w.D), "g": str(w.g), "h": str(w.h)}))
    return OK


def cmd_cohn_normalize(args) -> int:
    t, v = evaluate(args.expr, args.ring if args.ring_given else QQ)
    if t not in (COHN, SCALAR, CROSSED):
        raise ValueError(f"expected a Cohn element, got {t}")
    print(render(t, coerce(v, t, COHN, QQ) if t == SCALAR else v))
    return OK


def cmd_verify(args) -> int:
    names = [args.suite] if args.suite else list(SUITES)
    trials = args.trials if args.trials is not None else default_trials()
    failed = 0
    print(f"seed {args.seed}, {trials} trials")
    for name in names:
        res = run_suite(name, args.seed, trials)
        print(f"{name:<12} {'pass' if res.passed else 'FAIL'}  {len(res.checks)} checks")
        for c in res.failures():
            print(f"    failed: {c}")
        failed += not res.passed
    print("all suites pass" if not failed else f"{failed} suite(s) failed")
    return OK if not failed else FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default=None, help="Q (default), Z, Q(i), M2Q or m<k>")
    p = argparse.ArgumentParser(prog="gammacalc", description="Exact calculus for diag(alpha) U_f operators.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="print the canonical form")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_eval)
    s = sub.add_parser("window", parents=[common], help="print the top-left n x n block as JSON")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("expr")
    s.set_defaults(fn=cmd_window)
    s = sub.add_parser("equal", parents=[common], help="exit 0 when the two expressions are equal")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(fn=cmd_equal)
    s = sub.add_parser("member", parents=[common], help="exit 0 when the expression lies in the ideal")
    s.add_argument("--ideal", required=True, help="cf, c0, lp:P, lp+:P, lp-:P or linf")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_member)
    s = sub.add_parser("decompose", parents=[common], help="split a finite matrix into N <= 1 pieces")
    s.add_argument("--file", required=True, help="JSON {rows, cols, ring, entries} or CSV")
    s.set_defaults(fn=cmd_decompose)
    s = sub.add_parser("polar", parents=[common], help="polar decomposition of diag(alpha) U_f")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_polar)
    s = sub.add_parser("unit-witness", parents=[common], help="(D, g, h) with U_h D x U_g = 1")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_unit_witness)
    s = sub.add_parser("cohn-normalize", parents=[common], help="normal form in the Cohn ring")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_cohn_normalize)
    s = sub.add_parser("verify-paper", help="run the randomized identity suites")
    s.add_argument("--suite", choices=sorted(SUITES))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=None)
    s.set_defaults(fn=cmd_verify, ring=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.ring_given = args.ring is not None
    try:
        args.ring = ring_by_name(args.ring or "Q")
        return args.fn(args)
    except Exception as e:  # every failure becomes exit status 2 with a one-line message
        print(f"error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
