"""Command-line front end.

Subcommands: expand, verify, verify-all, counts, eval, residue-check.
Exit codes: 0 success / all-pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from . import arith, registry
from .arith import CountFamily, count
from .eta import eta_quotient_series, parse_eta_quotient
from .numerics import (EvalParams, PoleOnContour, residue_sum,
                       theta_eval_any, DEFAULT_OFFSET, RETRY_OFFSETS)
from .proofs import PROOFS
from .qseries import PuiseuxSeries
from .theta import ThetaSpec, reduce_characteristic, theta_constant, \
    theta_derivative_reduced


class UsageError(Exception):
    pass


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational: {text!r}")


_COMPLEX_RE = re.compile(
    r"^\s*(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"\s*(?P<im>[+-]\s*(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)?\s*(?P<i>i)?\s*$")


def parse_complex(text: str) -> complex:
    """Parse `a+bi` literals (also plain reals, `i`, `-0.3+0.9i`)."""
    t = text.strip().replace(" ", "")
    if not t:
        raise UsageError("empty complex literal")
    m = _COMPLEX_RE.match(t)
    if not m or (m.group("im") and not m.group("i")):
        raise UsageError(f"not a complex literal: {text!r}")
    if m.group("i"):
        imtxt = m.group("im")
        if imtxt is None:
            # forms like `i`, `2i`, `-1.5i`: the real group holds the imag part
            imval = float(m.group("re")) if m.group("re") not in (None, "+", "-") \
                else (-1.0 if m.group("re") == "-" else 1.0)
            return complex(0.0, imval)
        imtxt = imtxt.replace(" ", "")
        imval = float(imtxt) if imtxt not in ("+", "-") else (1.0 if imtxt == "+" else -1.0)
        return complex(float(m.group("re") or 0.0), imval)
    return complex(float(m.group("re")), 0.0)


def _family_from_args(args) -> CountFamily:
    kind = args.family
    if kind in ("d", "d_star"):
        if args.j is None or args.k is None:
            raise UsageError("divisor families need --j and --k")
        return CountFamily(kind, j=args.j, k=args.k)
    if kind in ("S_ab", "T_ab", "M_ab"):
        return CountFamily(kind, a=args.a, b=args.b)
    return CountFamily(kind)


def _print_reports(reports, fmt, out):
    if fmt == "json":
        json.dump([r.to_json_dict() for r in reports], out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["id", "passed", "order", "mismatch_exponent",
                         "mismatch_diff", "millis"])
        for r in reports:
            e, d = ("", "")
            if r.first_mismatch is not None:
                e = str(r.first_mismatch[0])
                d = r.first_mismatch[1].to_text()
            writer.writerow([r.id, r.passed, r.order_checked, e, d,
                             round(r.millis, 3)])
    else:
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            extra = ""
            if r.first_mismatch is not None:
                extra = f"  first mismatch at q^({r.first_mismatch[0]}): " \
                        f"{r.first_mismatch[1].to_text()}"
            out.write(f"{r.id:24s} {status}  order={r.order_checked} "
                      f"({r.millis:.0f} ms){extra}\n")


def cmd_expand(args, out) -> int:
    if args.eta is not None:
        series = eta_quotient_series(parse_eta_quotient(args.eta), _rat(args.order))
    else:
        if args.eps is None or args.eps_prime is None:
            raise UsageError("expand needs --eta or --eps/--eps-prime")
        char, scalar = reduce_characteristic(_rat(args.eps), _rat(args.eps_prime),
                                             derived=args.derived)
        spec = ThetaSpec(char, _rat(args.tau_mult), args.derived)
        build = theta_derivative_reduced if args.derived else theta_constant
        series = build(spec, _rat(args.order))
        if not scalar == 1:
            series = series * scalar
    if args.format == "json":
        json.dump(series.to_json_dict(), out, indent=2)
        out.write("\n")
    else:
        out.write(series.to_text() + "\n")
    return 0


def cmd_verify(args, out) -> int:
    if args.order is not None and _rat(args.order) <= 0:
        raise UsageError("--order must be positive")
    report = registry.verify(args.id, None if args.order is None else _rat(args.order))
    _print_reports([report], args.format, out)
    return 0 if report.passed else 1


def cmd_verify_all(args, out) -> int:
    if args.order is not None and _rat(args.order) <= 0:
        raise UsageError("--order must be positive")
    reports = registry.verify_all(None if args.order is None else _rat(args.order),
                                  level=args.level, jobs=args.jobs)
    _print_reports(reports, args.format, out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_counts(args, out) -> int:
    fam = _family_from_args(args)
    start = 1 if fam.kind in ("d", "d_star") else 0
    rows = [(n, count(fam, n)) for n in range(start, args.max + 1)]
    if args.format == "json":
        json.dump({"family": fam.kind, "values": [{"n": n, "count": c} for n, c in rows]},
                  out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        writer = csv.writer(out)
        writer.writerow(["n", "count"])
        writer.writerows(rows)
    else:
        for n, c in rows:
            out.write(f"{n} {c}\n")
    return 0


def cmd_eval(args, out) -> int:
    params = EvalParams(parse_complex(args.tau), precision=args.precision,
                        tail_tolerance=float(args.tol))
    value = theta_eval_any(_rat(args.eps), _rat(args.eps_prime),
                           parse_complex(args.z), params, derived=args.derived)
    if args.format == "json":
        json.dump({"re": float(value.real), "im": float(value.imag)}, out)
        out.write("\n")
    else:
        out.write(f"{complex(value)}\n")
    return 0


def cmd_residue_check(args, out) -> int:
    if args.proof not in PROOFS:
        raise UsageError(f"unknown proof id {args.proof!r}; known: {', '.join(sorted(PROOFS))}")
    proof = PROOFS[args.proof]
    params = EvalParams(parse_complex(args.tau), precision=args.precision)
    value = None
    for offset in (DEFAULT_OFFSET,) + RETRY_OFFSETS:
        try:
            value = residue_sum(proof.ratio, params, offset)
            break
        except PoleOnContour:
            continue
    if value is None:
        out.write(f"{args.proof}: no pole-free contour found\n")
        return 1
    ok = abs(value) <= float(args.tol)
    if args.format == "json":
        json.dump({"proof": args.proof, "abs_residue_sum": float(abs(value)),
                   "tolerance": float(args.tol), "passed": ok,
                   "poles_match_stated": proof.stated_poles_match()}, out)
        out.write("\n")
    else:
        out.write(f"{args.proof}: |residue sum| = {float(abs(value)):.3e} "
                  f"({'pass' if ok else 'FAIL'})\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rctheta",
                                description="exact theta-constant series and "
                                            "identity verification")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default="text")

    sp = sub.add_parser("expand", help="print a series expansion")
    sp.add_argument("--eps")
    sp.add_argument("--eps-prime", dest="eps_prime")
    sp.add_argument("--tau-mult", dest="tau_mult", default="1")
    sp.add_argument("--derived", action="store_true")
    sp.add_argument("--eta", help='eta quotient, e.g. "2^5 * 1^-2"')
    sp.add_argument("--order", required=True)
    fmt(sp)

    sp = sub.add_parser("verify", help="verify one registry identity")
    sp.add_argument("--id", required=True)
    sp.add_argument("--order")
    fmt(sp, ("text", "json", "csv"))

    sp = sub.add_parser("verify-all", help="verify the whole registry")
    sp.add_argument("--level", type=int, choices=(3, 4, 5, 6, 8))
    sp.add_argument("--order")
    sp.add_argument("--jobs", type=int)
    fmt(sp, ("text", "json", "csv"))

    sp = sub.add_parser("counts", help="dump counting-function values")
    sp.add_argument("--family", required=True,
                    choices=("d", "d_star", "S2", "S_ab", "T2", "T_ab",
                             "M_ab", "legendre3"))
    sp.add_argument("--j", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--b", type=int, default=1)
    sp.add_argument("--max", type=int, required=True)
    fmt(sp, ("text", "json", "csv"))

    sp = sub.add_parser("eval", help="numerically evaluate a theta value")
    sp.add_argument("--eps", required=True)
    sp.add_argument("--eps-prime", dest="eps_prime", required=True)
    sp.add_argument("--derived", action="store_true")
    sp.add_argument("--z", default="0")
    sp.add_argument("--tau", required=True)
    sp.add_argument("--tol", default="1e-12")
    sp.add_argument("--precision", type=int, default=30)
    fmt(sp)

    sp = sub.add_parser("residue-check", help="contour residue sum of a proof ratio")
    sp.add_argument("--proof", required=True)
    sp.add_argument("--tau", required=True)
    sp.add_argument("--tol", default="1e-8")
    sp.add_argument("--precision", type=int, default=30)
    fmt(sp)
    return p


_HANDLERS = {
    "expand": cmd_expand,
    "verify": cmd_verify,
    "verify-all": cmd_verify_all,
    "counts": cmd_counts,
    "eval": cmd_eval,
    "residue-check": cmd_residue_check,
}


def run(argv, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return _HANDLERS[args.command](args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        err.write(parser.format_usage())
        return 2
    except (registry.UnknownIdentity, arith.UnknownRelation) as exc:
        err.write(f"error: unknown id {exc}\n")
        return 2
    except (ValueError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
