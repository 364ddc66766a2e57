"""Command-line entry point.

Exit status: 0 on success, 1 on usage errors, 2 when a published claim is not
reproduced or a theorem is contradicted.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HypothesisNotMet, QuarticPellError, ReproductionFailure, TheoremViolation

EXIT_OK, EXIT_USAGE, EXIT_FINDING = 0, 1, 2
MAX_LIMIT = 10 ** 7
MAX_YMAX = 10 ** 9


@dataclass
class RunConfig:
    precision_bits: int = 256
    threads: int = 1
    output_format: str = "json"
    limits: dict = field(default_factory=lambda: {"limit": MAX_LIMIT, "ymax": MAX_YMAX})


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x):
    """Numbers as decimal strings so no consumer truncates them."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if hasattr(x, "decimal"):
        return x.decimal(30)
    if isinstance(x, float):
        return repr(x)
    return x


class Output:
    def __init__(self, fmt: str, stream):
        self.fmt, self.stream = fmt, stream

    def rows(self, rows: list[dict]):
        if self.fmt == "json":
            for r in rows:
                self.stream.write(json.dumps(_num(r)) + "\n")
        elif self.fmt == "csv":
            if not rows:
                return
            w = csv.DictWriter(self.stream, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: json.dumps(_num(v)) if isinstance(v, (list, dict)) else _num(v)
                            for k, v in r.items()})
        else:
            for r in rows:
                self.stream.write("  ".join(f"{k}={_num(v)}" for k, v in r.items()) + "\n")

    def one(self, obj: dict):
        self.rows([obj])


def _config(args) -> RunConfig:
    prec = args.precision or int(os.environ.get("QUARTICPELL_PRECISION", "256"))
    threads = args.threads or int(os.environ.get("QUARTICPELL_THREADS", "0")) or (os.cpu_count() or 1)
    if prec < 64:
        raise UsageError("precision must be at least 64 bits")
    if threads < 1:
        raise UsageError("threads must be positive")
    return RunConfig(prec, threads, args.format)


def _cmd_pell(args, cfg, out):
    from .pell import solve_pell
    pd = solve_pell(args.D)
    out.one({"D": pd.D, "fund_plus": pd.fund_plus, "fund_minus": pd.fund_minus,
             "t1u1": pd.t1u1, "neg_pell": pd.neg_pell, "period": pd.period})
    return EXIT_OK


def _inst(a, b):
    from .quadfam import EquationInstance
    try:
        return EquationInstance(a, b)
    except ValueError as e:
        raise UsageError(str(e))


def _cmd_families(args, cfg, out):
    from .quadfam import enumerate_families, pell_data
    inst = _inst(args.A, args.B)
    if pell_data(inst.D).t1u1 is None:
        out.one({"a": inst.a, "b": inst.b, "D": inst.D, "single_family": None,
                 "note": "x^2 - D y^2 = -4 has no solution"})
        return EXIT_OK
    rep = enumerate_families(inst, args.method)
    out.one({"a": rep.a, "b": rep.b, "D": rep.D, "representatives": rep.representatives,
             "single_family": rep.single_family, "extra": rep.extra,
             "lemma31_applicable": rep.lemma31_applicable, "method": rep.method})
    return EXIT_OK


def _cmd_quartic(args, cfg, out):
    from .quartic import solve_all, theorem_counts
    if not 1 <= args.ymax <= cfg.limits["ymax"]:
        raise UsageError(f"--ymax must lie in [1, {cfg.limits['ymax']}]")
    inst = _inst(args.A, args.B)
    sols = solve_all(inst, args.ymax)
    chk = theorem_counts(inst, sols)
    shown = sols if args.all else [s for s in sols if s.coprime]
    out.rows([{"X": s.X, "Y": s.Y, "coprime": s.coprime} for s in shown])
    if chk.violated:
        print(f"theorem count violated: {chk}", file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


def _cmd_bounds(args, cfg, out):
    from .hyperg import D_CLASSES, verify_lemma24
    classes = {f"d={args.d}": args.d} if args.d is not None else D_CLASSES
    status = EXIT_OK
    rows = []
    for label, d in classes.items():
        rep = verify_lemma24(args.rmax, d, cfg.precision_bits)
        rows.append({"class": label, "d": d, "argmax1": rep.argmax1, "argmax2": rep.argmax2,
                     "max1": rep.max1, "max2": rep.max2, "bound1_ok": rep.bound1_ok,
                     "bound2_ok": rep.bound2_ok, "first_failure": rep.first_failure,
                     "r0_meets_bounds": list(rep.r0_flag)})
        if not rep.ok:
            status = EXIT_FINDING
    out.rows(rows)
    return status


def _cmd_context(args, cfg, out):
    from .hyperg import build_context, check_context
    try:
        ctx = build_context(args.A, args.B, args.X1, args.Y1, args.sign, cfg.precision_bits)
    except HypothesisNotMet as e:
        raise UsageError(str(e))
    chk = check_context(ctx)
    out.one({"a": ctx.a, "b": ctx.b, "X1": ctx.X1, "Y1": ctx.Y1, "u1": ctx.u1, "u2": ctx.u2,
             "g1": ctx.g1, "g3": ctx.g3, "g_squared": ctx.g_sq, "d": ctx.d,
             "script_n_squared": ctx.script_n.squared(),
             "omega": [ctx.omega.re, ctx.omega.im], "phi": ctx.phi,
             "tan_phi": ctx.tan_phi, "tan_phi_stated": ctx.tan_phi_stated, "k0": ctx.k0,
             "ell0": ctx.ell0, "ell0_upper": ctx.ell0_upper, "Q": ctx.Q, "E": ctx.E,
             "Q_upper": ctx.Q_upper, "E_lower": ctx.E_lower, "checks_ok": chk.ok})
    return EXIT_OK if chk.ok else EXIT_FINDING


def _cmd_census_scan(args, cfg, out):
    from .census import interpretation_counts, scan, theorem_violations, write_summary_csv
    if not 2 <= args.limit <= cfg.limits["limit"]:
        raise UsageError(f"--limit must lie in [2, {cfg.limits['limit']}]")
    if args.ycutoff < 2:
        raise UsageError("--ycutoff must be at least 2")
    recs = scan(args.limit, args.ycutoff, cfg.threads)
    if args.summary:
        with open(args.summary, "w") as fh:
            write_summary_csv(recs, fh)
    if cfg.output_format == "csv":
        write_summary_csv(recs, out.stream)
    else:
        out.rows([r.to_json() for r in recs])
    print(json.dumps({"records": len(recs),
                      "interpretations": interpretation_counts(recs, args.ycutoff)}),
          file=sys.stderr)
    return EXIT_FINDING if theorem_violations(recs) else EXIT_OK


def _cmd_census_twelve(args, cfg, out):
    from .census import check_twelve, scan
    rep = check_twelve(scan(workers=cfg.threads))
    out.rows([{"a": a, "b": b} for a, b in rep.found])
    if not rep.ok:
        print(json.dumps({"reproduced": False, "candidates": len(rep.candidates), **rep.diff()}),
              file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


def _cmd_check_all(args, cfg, out):
    from .acceptance import run_all
    results = run_all(stop_on_failure=not args.keep_going, emit=None)
    for r in results:
        if cfg.output_format == "text":
            out.stream.write(r.line() + "\n")
        else:
            out.one({"criterion": r.number, "name": r.name, "passed": r.passed, "detail": r.detail})
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"criterion {failed[0].number} ({failed[0].name}) not reproduced", file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def common(parser, default):
        parser.add_argument("--format", choices=("json", "csv", "text"),
                            default="json" if default is None else default)
        parser.add_argument("--precision", type=int, default=default,
                            help="working precision in bits")
        parser.add_argument("--threads", type=int, default=default)

    p = _Parser(prog="quarticpell", description=__doc__.splitlines()[0])
    common(p, None)
    # the same options are accepted after the subcommand
    shared = _Parser(add_help=False)
    common(shared, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def leaf(group, name, **kw):
        return group.add_parser(name, parents=[shared], **kw)

    s = leaf(sub, "pell", help="fundamental solutions of x^2 - D y^2 = 1, -1, -4")
    s.add_argument("D", type=int)
    s.set_defaults(fn=_cmd_pell)

    s = leaf(sub, "families", help="families of x^2 - (a^2+b^2) y^2 = -b^2")
    s.add_argument("A", type=int)
    s.add_argument("B", type=int)
    s.add_argument("--method", choices=("auto", "brute", "lmm"), default="auto")
    s.set_defaults(fn=_cmd_families)

    s = leaf(sub, "quartic", help="solutions of X^2 - (a^2+b^2) Y^4 = -b^2")
    s.add_argument("A", type=int)
    s.add_argument("B", type=int)
    s.add_argument("--ymax", type=int, required=True)
    s.add_argument("--all", action="store_true", help="include non-coprime solutions")
    s.set_defaults(fn=_cmd_quartic)

    h = leaf(sub, "hyperg", help="hypergeometric approximation checks")
    hs = h.add_subparsers(dest="hcmd", required=True, parser_class=_Parser)
    s = leaf(hs, "verify-lemma24")
    s.add_argument("--rmax", type=int, default=155)
    s.add_argument("--d", type=int, default=None, help="one d instead of every class")
    s.set_defaults(fn=_cmd_bounds)
    s = leaf(hs, "context")
    for name in ("A", "B", "X1", "Y1"):
        s.add_argument(name, type=int)
    s.add_argument("--sign", type=int, choices=(1, -1), default=1, help="sign of u2")
    s.set_defaults(fn=_cmd_context)

    c = leaf(sub, "census", help="the finite search")
    cs = c.add_subparsers(dest="ccmd", required=True, parser_class=_Parser)
    s = leaf(cs, "scan")
    s.add_argument("--limit", type=int, default=181700)
    s.add_argument("--ycutoff", type=int, default=1700)
    s.add_argument("--summary", default=None, help="also write the summary CSV here")
    s.set_defaults(fn=_cmd_census_scan)
    s = leaf(cs, "twelve")
    s.set_defaults(fn=_cmd_census_twelve)

    s = leaf(sub, "paper-check", help="run every acceptance criterion")
    s.add_argument("--keep-going", action="store_true", help="do not stop at the first failure")
    s.set_defaults(fn=_cmd_check_all)
    return p


def run(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        if args.cmd == "hyperg" and args.hcmd == "verify-lemma24" and args.rmax < 3:
            raise UsageError("--rmax must be at least 3")
        return args.fn(args, cfg, Output(cfg.output_format, stream))
    except (UsageError, ValueError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ReproductionFailure, TheoremViolation) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FINDING
    except QuarticPellError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
