"""Command-line surface: tables, asymptotics, root-system dumps, verification.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 internal reconciliation failure (method=both).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import multisum, volume
from .apartment import enumerate_sphere
from .multisum import SummationSpec
from .qnum import QNumber
from .rootsys import FAMILIES, RankOutOfRange, all_types, build

GRID = [("A", n) for n in range(2, 7)] + [("C", n) for n in range(2, 5)] \
    + [("B", n) for n in range(3, 6)] + [("D", n) for n in range(4, 7)]


class ConfigError(ValueError):
    pass


def _parse_range(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo < 0 or hi < lo:
        raise ConfigError("invalid radius range %r" % text)
    return lo, hi


def _get_system(args):
    try:
        return build(args.family, args.rank)
    except RankOutOfRange as exc:
        raise ConfigError(str(exc))


def _format_value(qnum, q0):
    if q0 is None:
        return str(qnum)
    val = qnum.evaluate_exact(Fraction(q0))
    if val.denominator == 1:
        return str(val.numerator)
    return str(val)


def _emit_rows(header, rows, fmt, out):
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join('"%s"' % v if ("," in v or " " in v) else v
                               for v in row) + "\n")
    elif fmt == "json":
        out.write(json.dumps([dict(zip(header, row)) for row in rows],
                             indent=2, sort_keys=True) + "\n")
    else:
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(header)]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()
                  + "\n")
        for row in rows:
            out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip()
                      + "\n")


def cmd_table(args, out):
    system = _get_system(args)
    lo, hi = _parse_range(args.r)
    q0 = None if args.symbolic else args.q
    if q0 is None and not args.symbolic:
        raise ConfigError("choose --q Q or --symbolic")
    volume.set_max_terms(args.max_terms)
    variant = args.variant
    methods = ("exact", "closed") if args.method == "both" else (args.method,)
    closed = {}
    if "closed" in methods:
        closed["ssa"] = volume.ssa_closed_form(system, variant)
        closed["sv"] = volume.sv_closed_form(system, variant)
        r0 = volume.closed_form_threshold(system, variant, "ssa")
    header = ["family", "rank", "r", "SSA", "SV"]
    rows = []
    for r in range(lo, hi + 1):
        if "exact" in methods:
            ssa = volume.ssa_exact(system, r, variant)
            sv = volume.sv_exact(system, r, variant)
        else:
            ssa = closed["ssa"].evaluate(r)
            sv = closed["sv"].evaluate(r)
        if args.method == "both" and r >= (r0 or 0):
            if (closed["ssa"].evaluate(r) != ssa
                    or closed["sv"].evaluate(r) != sv):
                sys.stderr.write("reconciliation failure at r=%d\n" % r)
                return 3
        rows.append([system.family, str(system.n), str(r),
                     _format_value(ssa, q0), _format_value(sv, q0)])
    _emit_rows(header, rows, args.format, out)
    return 0


def cmd_asymptote(args, out):
    system = _get_system(args)
    variant = args.variant
    prof_ssa = volume.asymptote(system, "ssa", variant)
    prof_sv = volume.asymptote(system, "sv", variant)
    payload = {
        "family": system.family,
        "rank": system.n,
        "variant": variant,
        "epsilon": prof_ssa.epsilon,
        "pi": str(prof_ssa.pi),
        "ssa_constant": str(prof_ssa.constant),
        "sv_constant": str(prof_sv.constant),
    }
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write("family  %s%d  (%s)\n" % (system.family, system.n, variant))
        out.write("epsilon = %d\n" % prof_ssa.epsilon)
        out.write("pi      = %s\n" % prof_ssa.pi)
        out.write("SSA ~ constant * C(r, epsilon) * q^(pi r), constant = %s\n"
                  % prof_ssa.constant)
        out.write("SV  ~ constant * C(r, epsilon) * q^(pi r), constant = %s\n"
                  % prof_sv.constant)
    return 0


def cmd_dump_rootsystem(args, out):
    system = _get_system(args)
    out.write(json.dumps(system.to_json(), indent=2, sort_keys=True) + "\n")
    return 0


def _random_spec(rng):
    t = rng.randint(1, 4)
    weights = tuple(rng.choice((1, 2)) for _ in range(t))
    slopes = tuple(Fraction(rng.randint(0, 12), 2) for _ in range(t))
    table = {}
    if rng.random() < 0.7:
        ones = [i for i, w in enumerate(weights) if w == 1]
        # mixed weights only support parity twists on weight-1 variables
        free = ones if any(w == 2 for w in weights) else list(range(t))
        if free:
            for key in _residues(t):
                if all(key[i] == 0 for i in range(t) if i not in free):
                    table[key] = Fraction(rng.choice((0, 1, 2)), 2)
                else:
                    table[key] = table[tuple(
                        k if i in free else 0 for i, k in enumerate(key))]
    return SummationSpec.make(weights, slopes, table)


def _residues(t):
    out = [()]
    for _ in range(t):
        out = [r + (b,) for r in out for b in (0, 1)]
    return out


def verify_multisum(seed, count, report):
    rng = random.Random(seed)
    failures = 0
    for k in range(count):
        spec = _random_spec(rng)
        ok, bad = multisum.verify_spec(spec)
        if not ok:
            failures += 1
            report.append({"suite": "multisum", "case": k, "ok": False,
                           "weights": list(spec.weights),
                           "slopes": [str(m) for m in spec.slopes],
                           "first_mismatch_z": bad})
    report.append({"suite": "multisum", "count": count, "seed": seed,
                   "failures": failures, "ok": failures == 0})
    return failures == 0


def verify_table1(report, grid=GRID):
    ok = True
    for fam, n in grid:
        system = build(fam, n)
        prof = volume.asymptote(system, "ssa", "all")
        eps, pi = volume.table1_expected(fam, n)
        good = (prof.epsilon, prof.pi) == (eps, pi)
        ok = ok and good
        report.append({"suite": "table1", "family": fam, "rank": n,
                       "expected": {"epsilon": eps, "pi": str(pi)},
                       "got": {"epsilon": prof.epsilon, "pi": str(prof.pi)},
                       "ok": good})
    return ok


def verify_enum(max_r, report, grid=None):
    if grid is None:
        grid = [("A", 2), ("A", 3), ("C", 2), ("C", 3), ("B", 3), ("D", 4)]
    ok = True
    for fam, n in grid:
        system = build(fam, n)
        for r in range(max_r + 1):
            for mode in ("all", "special"):
                fast = {p.gamma for p in enumerate_sphere(system, r, mode, "fast")}
                brute = {p.gamma for p in enumerate_sphere(system, r, mode, "brute")}
                if fast != brute:
                    ok = False
                    report.append({"suite": "enum", "family": fam, "rank": n,
                                   "r": r, "mode": mode, "ok": False,
                                   "fast": len(fast), "brute": len(brute)})
    report.append({"suite": "enum", "max_r": max_r, "ok": ok})
    return ok


def verify_closed(report, grid=GRID, window=None):
    window = window or volume.RECONCILE_WINDOW
    ok = True
    for fam, n in grid:
        system = build(fam, n)
        for variant in ("all", "special"):
            r0 = volume.closed_form_threshold(system, variant, "ssa")
            good = r0 is not None
            if good:
                F = volume.ssa_closed_form(system, variant)
                G = volume.sv_closed_form(system, variant)
                for r in range(r0, r0 + window):
                    if (F.evaluate(r) != volume.ssa_exact(system, r, variant)
                            or G.evaluate(r) != volume.sv_exact(system, r, variant)):
                        good = False
                        break
            ok = ok and good
            report.append({"suite": "closed", "family": fam, "rank": n,
                           "variant": variant, "r0": r0, "window": window,
                           "exact_vs_closed": "pass" if good else "fail",
                           "ok": good})
    return ok


def verify_constants(report, grid=GRID):
    ok = True
    for fam, n in grid:
        system = build(fam, n)
        for variant in ("all", "special"):
            got = volume.asymptote(system, "ssa", variant).constant
            want = volume.expected_ssa_constant(system, variant)
            good = got == want
            ok = ok and good
            report.append({"suite": "constants", "family": fam, "rank": n,
                           "variant": variant,
                           "name": "SSA leading constant",
                           "expected_expr": str(want), "got_expr": str(got),
                           "ok": good})
    return ok


def cmd_verify(args, out):
    report = []
    suites = args.suite or ["multisum", "table1", "enum", "closed", "constants"]
    ok = True
    for suite in suites:
        if suite == "multisum":
            ok &= verify_multisum(args.seed, args.count, report)
        elif suite == "table1":
            ok &= verify_table1(report)
        elif suite == "enum":
            ok &= verify_enum(args.max_r, report)
        elif suite == "closed":
            ok &= verify_closed(report)
        elif suite == "constants":
            ok &= verify_constants(report)
        else:
            raise ConfigError("unknown verify suite %r" % suite)
    out.write(json.dumps({"ok": bool(ok), "checks": report},
                         indent=2, sort_keys=True) + "\n")
    return 0 if ok else 1


def make_parser():
    parser = argparse.ArgumentParser(
        prog="btvol",
        description="Vertex counting in affine buildings of classical type.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_system_args(p):
        p.add_argument("family", choices=FAMILIES, help="root-system family")
        p.add_argument("rank", type=int, help="rank n")
        p.add_argument("--variant", choices=("all", "special"), default="all")
        p.add_argument("--special", dest="variant", action="store_const",
                       const="special", help="count special vertices only")
        p.add_argument("--format", choices=("text", "csv", "json"),
                       default="text")

    p_table = sub.add_parser("table", help="SV/SSA values over a radius range")
    add_system_args(p_table)
    p_table.add_argument("--r", default="0..10", help="radius range A..B")
    p_table.add_argument("--q", type=int, default=None,
                         help="sample the counts at this prime power")
    p_table.add_argument("--symbolic", action="store_true",
                         help="print polynomials in q instead of sampling")
    p_table.add_argument("--method", choices=("exact", "closed", "both"),
                         default="exact")
    p_table.add_argument("--max-terms", type=int, default=10 ** 7,
                         help="cap on enumerated lattice points")
    p_table.set_defaults(func=cmd_table)

    p_asym = sub.add_parser("asymptote", help="asymptotic profile of a system")
    add_system_args(p_asym)
    p_asym.set_defaults(func=cmd_asymptote)

    p_dump = sub.add_parser("dump-rootsystem", help="root system data as JSON")
    add_system_args(p_dump)
    p_dump.set_defaults(func=cmd_dump_rootsystem)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("suite", nargs="*",
                          help="multisum | table1 | enum | closed | constants")
    p_verify.add_argument("--seed", type=int, default=7)
    p_verify.add_argument("--count", type=int, default=100)
    p_verify.add_argument("--max-r", type=int, default=6)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args, out)
    except (ConfigError, RankOutOfRange, volume.MaxTermsExceeded) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
