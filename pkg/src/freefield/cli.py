"""Command line front end.

    freefield verify <suite> [--p N] [--m N] [--t X] [--s X] [--t1 X] [--t2 X] [--max-degree N]
    freefield ope "<u>" "<v>" A..B [--p N]
    freefield zhu [--s X] [--t X]
    freefield fusion --t1 X --t2 Y [--max-degree N]

Rational arguments accept ``sym`` for a free parameter.  Exit status is 0
when every check passes, 1 when one fails and 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .fock import parse_state, rank1_lattice, rank2_lattice
from .fusionlab import PreconditionError, verify_fusion_p2
from .realizations import Check
from .scalar import ParseError, param, parse_scalar
from .suites import SUITES, SuiteReport, run_suite
from .vertexops import ModeIndexError, general_mode
from .zhu import derive_constraints, printed_p

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _value(text, name, allow_sym=True):
    """A rational (or symbolic) option value; ``sym`` means None."""
    if text is None:
        return None
    if text.strip() == "sym":
        if not allow_sym:
            raise UsageError(f"--{name} must be a rational number here")
        return None
    try:
        v = parse_scalar(text)
    except ParseError as e:
        raise UsageError(f"--{name}: {e}") from None
    if not v.is_constant:
        raise UsageError(f"--{name}: expected a rational number or 'sym', got {text!r}")
    return v.to_fraction()


def _range(text):
    a, sep, b = text.partition("..")
    try:
        if not sep:
            n = int(text)
            return range(n, n + 1)
        return range(int(a), int(b) + 1)
    except ValueError:
        raise UsageError(f"bad mode range {text!r}; use A..B") from None


def _add_common(p, fmt=True):
    if fmt:
        p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser():
    ap = argparse.ArgumentParser(prog="freefield", description="Exact free-field vertex algebra checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", nargs="?", help=", ".join(SUITES))
    v.add_argument("--suite", dest="suite_opt")
    for flag in ("t", "s", "t1", "t2", "r"):
        v.add_argument(f"--{flag}")
    v.add_argument("--p", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--max-degree", type=int, dest="max_degree")
    _add_common(v)

    o = sub.add_parser("ope", help="mode table u_n v")
    o.add_argument("u")
    o.add_argument("v")
    o.add_argument("range", help="A..B")
    o.add_argument("--p", type=int, default=2)
    _add_common(o)

    z = sub.add_parser("zhu", help="fusion constraints in Q(s,t)[x]")
    z.add_argument("--s", default="sym")
    z.add_argument("--t", default="sym")
    _add_common(z)

    f = sub.add_parser("fusion", help="fusion span report at p = 2")
    f.add_argument("--t1", required=True)
    f.add_argument("--t2", required=True)
    f.add_argument("--max-degree", type=int, dest="max_degree", default=4)
    _add_common(f)
    return ap


def _emit(report, fmt, out):
    out.write((report.to_json() if fmt == "json" else report.to_text()) + "\n")


def cmd_verify(args):
    name = args.suite or args.suite_opt
    if not name:
        raise UsageError("verify needs a suite name")
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    opts = {
        "p": args.p,
        "m": args.m,
        "max_degree": args.max_degree,
        "t": _value(args.t, "t"),
        "s": _value(args.s, "s"),
        "t1": _value(args.t1, "t1", allow_sym=False),
        "t2": _value(args.t2, "t2", allow_sym=False),
        "r": _value(args.r, "r"),
    }
    try:
        return run_suite(name, **opts)
    except PreconditionError as e:
        raise UsageError(str(e)) from None


def _lattice_for(text, p):
    last = None
    for lat in (rank1_lattice(p), rank2_lattice(p)):
        try:
            return parse_state(text, lat), lat
        except ParseError as e:
            last = e
    raise last


def cmd_ope(args):
    try:
        u, lat = _lattice_for(args.u, args.p)
        v = parse_state(args.v, lat)
    except ParseError as e:
        raise UsageError(f"parse error: {e}") from None
    t0 = time.perf_counter()
    checks = []
    for n in _range(args.range):
        try:
            out = general_mode(u, n, v)
            checks.append(Check(f"u_{n} v", "info", str(out), "", ""))
        except ModeIndexError as e:
            checks.append(Check(f"u_{n} v", "info", f"undefined: {e}", "", ""))
    return SuiteReport("ope", checks, time.perf_counter() - t0, {"u": args.u, "v": args.v, "p": args.p})


def cmd_zhu(args):
    s, t = _value(args.s, "s"), _value(args.t, "t")
    t0 = time.perf_counter()
    J = derive_constraints(2, s=s, t=t)
    ss = param("s") if s is None else s
    tt = param("t") if t is None else t
    checks = [Check(f"zhu.{n}", "info", str(g), "", "derived relation") for n, g in zip(J.names, J.generators)]
    g = J.gcd()
    pp = printed_p(ss, tt).monic()
    _, rem = g.divmod(pp)
    checks.append(Check("zhu.gcd", "info", str(g), "", "gcd of the relations"))
    checks.append(Check("zhu.p_divides_gcd", "pass" if not rem else "fail", str(pp), "", "p(x) | gcd"))
    return SuiteReport("zhu", checks, time.perf_counter() - t0, {"s": args.s, "t": args.t})


def cmd_fusion(args):
    t1 = _value(args.t1, "t1", allow_sym=False)
    t2 = _value(args.t2, "t2", allow_sym=False)
    t0 = time.perf_counter()
    try:
        checks = verify_fusion_p2(t1, t2, args.max_degree)
    except PreconditionError as e:
        raise UsageError(str(e)) from None
    return SuiteReport("fusion", checks, time.perf_counter() - t0, {"t1": t1, "t2": t2, "max_degree": args.max_degree})


COMMANDS = {"verify": cmd_verify, "ope": cmd_ope, "zhu": cmd_zhu, "fusion": cmd_fusion}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        report = COMMANDS[args.command](args)
    except UsageError as e:
        msg = str(e)
        if args.format == "json":
            out.write(json.dumps({"error": msg}) + "\n")
        else:
            sys.stderr.write(f"freefield: error: {msg}\n")
        return EXIT_USAGE
    _emit(report, args.format, out)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
