"""Command-line front end.

Exit codes: 0 pass, 1 check failure, 2 search exhaustion, 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cohomology import H1Class, h1_dim_via_corank
from .construction import assemble, build, dumps, verify
from .curvespec import curve_from_spec, load_curve
from .errors import ContractViolation, CurveValidationError, LiteralError, NoNonzeroClass, NoValidSplit, SearchExhausted
from .literals import (
    format_divisor,
    format_function,
    parse_divisor,
    parse_place,
    parse_tails,
)
from .riemann_roch import h1, rr_basis, serre_dual

EXIT_OK, EXIT_FAIL, EXIT_SEARCH, EXIT_IO = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _emit(args, report: dict, lines):
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        for line in lines:
            print(line)


def _divisor(curve, text):
    if text is None:
        raise _InputError("--divisor is required")
    try:
        return parse_divisor(curve, text)
    except LiteralError as exc:
        raise _InputError(f"--divisor: {exc}") from exc


def cmd_genus(args):
    curve, _ = load_curve(args.curve)
    _emit(args, {"genus": curve.genus}, [str(curve.genus)])
    return EXIT_OK


def cmd_rr(args):
    curve, _ = load_curve(args.curve)
    D = _divisor(curve, args.divisor)
    basis = [format_function(h) for h in rr_basis(curve, D).basis]
    report = {"divisor": format_divisor(D), "basis": basis, "h0": len(basis)}
    _emit(args, report, [f"L({report['divisor']}) basis: {{{', '.join(basis)}}}", f"h0 = {len(basis)}"])
    return EXIT_OK


def cmd_h1(args):
    curve, _ = load_curve(args.curve)
    D = _divisor(curve, args.divisor)
    dual = serre_dual(curve, D)
    n = h1(curve, D)
    report = {"divisor": format_divisor(D), "h1": n, "serre_dual": format_divisor(dual),
              "h1_corank": h1_dim_via_corank(curve, D)}
    _emit(args, report, [f"h1 = {n}", f"dual divisor K - D = {report['serre_dual']}"])
    return EXIT_OK


def _summary_lines(cert):
    lines = [f"{ch['check_id']:4} {'PASS' if ch['pass'] else 'FAIL'}  {ch['statement']}" for ch in cert["checks"]]
    passed = sum(ch["pass"] for ch in cert["checks"])
    lines.append(f"overall_pass = {str(cert['overall_pass']).lower()} ({passed}/{len(cert['checks'])})")
    return lines


def cmd_construct(args):
    curve, seed = load_curve(args.curve)
    if args.seed is not None:
        seed = args.seed
    cert = verify(build(curve, seed))
    text = dumps(cert)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if args.json and not args.out:
        sys.stdout.write(text)
    else:
        for line in _summary_lines(cert):
            print(line)
    return EXIT_OK if cert["overall_pass"] else EXIT_FAIL


def recheck(cert: dict):
    """Recompute a certificate from its curve and data block.

    Returns ``(fresh_certificate, disagreements)``; nothing from the input
    beyond the curve descriptor, seed and chosen data is reused.
    """
    curve = curve_from_spec(cert["curve"])
    d = cert["data"]
    try:
        P = parse_place(curve, d["P"])
        D, D_Q, D_R = (parse_divisor(curve, d[k]) for k in ("D", "D_Q", "D_R"))
        theta = H1Class(curve, D_Q + D_R, parse_tails(curve, d["theta"]))
    except KeyError as exc:
        raise _InputError(f"certificate data lacks {exc}") from exc
    fresh = verify(assemble(curve, cert["seed"], P, D, D_Q, D_R, theta))
    problems = []
    for key, value in fresh["data"].items():
        if d.get(key) != value:
            problems.append(f"data.{key}: recorded {d.get(key)!r}, recomputed {value!r}")
    old = {ch.get("check_id"): ch for ch in cert.get("checks", [])}
    for ch in fresh["checks"]:
        rec = old.get(ch["check_id"])
        if rec is None:
            problems.append(f"{ch['check_id']}: missing from certificate")
        elif rec.get("pass") != ch["pass"] or rec.get("witnesses") != ch["witnesses"]:
            problems.append(f"{ch['check_id']}: recorded result disagrees with recomputation")
    if cert.get("overall_pass") != fresh["overall_pass"]:
        problems.append("overall_pass disagrees with recomputation")
    return fresh, problems


def cmd_check(args):
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            cert = json.load(fh)
    except json.JSONDecodeError as exc:
        raise _InputError(f"{args.certificate}: not valid JSON ({exc})") from exc
    try:
        fresh, problems = recheck(cert)
    except (KeyError, TypeError, AttributeError, ContractViolation) as exc:
        raise _InputError(f"{args.certificate}: malformed certificate ({exc!r})") from exc
    ok = fresh["overall_pass"] and not problems
    if args.json:
        sys.stdout.write(json.dumps({"ok": ok, "problems": problems,
                                     "checks": {c["check_id"]: c["pass"] for c in fresh["checks"]}}, indent=2) + "\n")
    else:
        for line in _summary_lines(fresh) + problems:
            print(line)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="hyperflat", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, divisor=False):
        p.add_argument("--curve", required=True, help="curve file (TOML)")
        if divisor:
            p.add_argument("--divisor", help="divisor literal, e.g. '2*inf - (0,1)'")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    common(sub.add_parser("genus", help="print the genus"))
    common(sub.add_parser("rr", help="basis of L(D)"), divisor=True)
    common(sub.add_parser("h1", help="dimension of H^1(O(D))"), divisor=True)
    p = sub.add_parser("construct", help="build the counterexample and certify it")
    common(p)
    p.add_argument("--seed", type=int, default=None, help="overrides the seed in the curve file")
    p.add_argument("--out", help="write the certificate here")
    p = sub.add_parser("check", help="recompute a certificate")
    p.add_argument("certificate")
    p.add_argument("--json", action="store_true")
    return ap


COMMANDS = {"genus": cmd_genus, "rr": cmd_rr, "h1": cmd_h1, "construct": cmd_construct, "check": cmd_check}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SearchExhausted, NoValidSplit, NoNonzeroClass) as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except (OSError, CurveValidationError, LiteralError, _InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
