"""Command line front end.

Ray indices in fan files are 0-based; variables in polynomial text are
1-based (``z1 .. zn``).  Output never contains floating point numbers:
rationals are printed as ``p/q``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .cohomology import cohomology_table, verify_dp_vanishing
from .divisor import TDivisor, divisor_at_infinity, is_nef, nef_witnesses
from .engine import INAPPLICABLE, decide_divisor, hirzebruch_closed_forms
from .errors import ConsistencyError, HypothesisError
from .lattice import fan_from_selector, require_valid, validate_fan
from .polytope import LaurentSupport
from .ring import build_ring


class PolynomialSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|z(\d+)|(\^)|(\*)|(/)|([+\-−])|(\S))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        num, var, caret, star, slash, sign, junk = m.groups()
        start = m.start(m.lastindex)
        if junk is not None:
            raise PolynomialSyntaxError(f"unexpected character {junk!r}", start)
        if num is not None:
            out.append(("num", int(num), start))
        elif var is not None:
            out.append(("var", int(var), start))
        elif caret:
            out.append(("^", None, start))
        elif star:
            out.append(("*", None, start))
        elif slash:
            out.append(("/", None, start))
        else:
            out.append(("sign", -1 if sign != "+" else 1, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_polynomial(text: str, n: int) -> LaurentSupport:
    """Parse Laurent polynomial text such as ``3*z1^-2*z2 - z2^4`` or ``1 + 1/z2``."""
    if not text.strip():
        raise PolynomialSyntaxError("empty polynomial", 0)
    toks = _tokens(text)
    i = 0
    coeffs = {}

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            raise PolynomialSyntaxError(f"expected {kind}, found {tok[0]}", tok[2])
        i += 1
        return tok

    def factor(exponent, coeff, invert):
        nonlocal i
        kind, value, pos = peek()
        if kind == "num":
            i += 1
            return exponent, coeff / value if invert else coeff * value
        if kind == "var":
            i += 1
            if value < 1 or value > n:
                raise PolynomialSyntaxError(f"variable z{value} outside z1..z{n}", pos)
            power = 1
            if peek()[0] == "^":
                i += 1
                sign = 1
                if peek()[0] == "sign":
                    sign = take("sign")[1]
                power = sign * take("num")[1]
            exponent = list(exponent)
            exponent[value - 1] += -power if invert else power
            return tuple(exponent), coeff
        raise PolynomialSyntaxError(f"expected a number or variable, found {kind}", pos)

    first = True
    while True:
        sign = 1
        if peek()[0] == "sign":
            sign = take("sign")[1]
        elif not first:
            raise PolynomialSyntaxError("expected '+' or '-'", peek()[2])
        exponent, coeff = factor((0,) * n, Fraction(sign), False)
        while peek()[0] in ("*", "/"):
            invert = take(peek()[0])[0] == "/"
            exponent, coeff = factor(exponent, coeff, invert)
        coeffs[exponent] = coeffs.get(exponent, Fraction(0)) + coeff
        first = False
        if peek()[0] == "end":
            break
    coeffs = {m: c for m, c in coeffs.items() if c != 0}
    if not coeffs:
        raise PolynomialSyntaxError("empty support: every term cancels", len(text))
    return LaurentSupport(tuple(coeffs), coeffs)


def parse_divisor(text: str, fan) -> TDivisor:
    try:
        coeffs = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"bad divisor coefficients {text!r}") from None
    return TDivisor(fan, coeffs)


def parse_box(text: str):
    try:
        return [tuple(int(x) for x in side.split(",")) for side in text.split(";")]
    except ValueError:
        raise ValueError(f"bad search box {text!r}; expected 'lo,hi;lo,hi'") from None


def _json_default(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else obj.numerator
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default, ensure_ascii=False)


def _divisor_from_args(args, fan):
    if (args.poly is None) == (args.divisor is None):
        raise ValueError("give exactly one of --poly and --divisor")
    if args.poly is not None:
        return divisor_at_infinity(fan, parse_polynomial(args.poly, fan.dim))
    return parse_divisor(args.divisor, fan)


def _cmd_analyze(args, out):
    fan = fan_from_selector(args.fan)
    require_valid(fan)
    D = _divisor_from_args(args, fan)
    report = decide_divisor(D)
    payload = report.to_json()
    if args.poly is not None:
        payload["polynomial"] = args.poly
    if args.json:
        out.write(dumps(payload) + "\n")
    else:
        out.write(f"fan:            {fan}\n")
        out.write(f"D_inf:          {D}  {list(D.coeffs)}\n")
        out.write(f"effective:      {report.effective}\n")
        out.write(f"nef:            {report.nef}\n")
        out.write(f"[D]^2 = 0:      {report.square_zero}\n")
        if report.square is not None:
            out.write(f"D.D:            {report.square}\n")
        out.write(f"dim P_D:        {report.polytope_dim}\n")
        out.write(f"decision:       {report.decision}  ({report.basis})\n")
        for c in report.caveats:
            out.write(f"  note: {c}\n")
    return 2 if report.decision == INAPPLICABLE else 0


def _cmd_nef(args, out):
    fan = fan_from_selector(args.fan)
    require_valid(fan)
    D = _divisor_from_args(args, fan)
    payload = {"divisor": list(D.coeffs), "nef": is_nef(D), "cones": nef_witnesses(D)}
    if args.json:
        out.write(dumps(payload) + "\n")
    else:
        out.write(f"nef: {payload['nef']}\n")
        for row in payload["cones"]:
            bad = f"  violated on rays {row['violations']}" if row["violations"] else ""
            out.write(f"  cone {row['cone']}: m = {row['m']}{bad}\n")
    return 0


def _cmd_intersect(args, out):
    fan = fan_from_selector(args.fan)
    require_valid(fan)
    divisors = [parse_divisor(part, fan) for part in args.divisors.split(";")]
    value = build_ring(fan).intersection_number(*divisors)
    if args.json:
        out.write(dumps({"divisors": [list(d.coeffs) for d in divisors], "intersection": value}) + "\n")
    else:
        out.write(f"{value}\n")
    return 0


def _cmd_cohomology(args, out):
    fan = fan_from_selector(args.fan)
    require_valid(fan)
    D = _divisor_from_args(args, fan)
    if args.m_max is not None:
        report = verify_dp_vanishing(D, args.m_max)
        out.write(dumps(report.to_json()) + "\n")
        return 1 if report.fatal else 0
    box = parse_box(args.box) if args.box else None
    table = cohomology_table(D, search_box=box)
    if args.json:
        out.write(dumps(table.to_json()) + "\n")
    else:
        out.write(" ".join(f"h{p}={x}" for p, x in enumerate(table.h)) + "\n")
        for m, contrib in table.breakdown.items():
            out.write(f"  m={list(m)}: " + ", ".join(f"h{p}+={c}" for p, c in contrib.items()) + "\n")
    return 0


def _cmd_hirzebruch(args, out):
    s = parse_polynomial(args.poly, 2)
    ev = hirzebruch_closed_forms(args.r, s)
    if args.json:
        out.write(dumps(ev.to_json()) + "\n")
    else:
        for key, value in ev.to_json().items():
            out.write(f"{key}: {value}\n")
    return 0


def _cmd_fan_check(args, out):
    fan = fan_from_selector(args.fan)
    report = validate_fan(fan)
    if args.json:
        out.write(dumps(report.to_json()) + "\n")
    else:
        out.write(f"smooth: {report.smooth}\ncomplete: {report.complete}\n")
        for f in report.failures:
            out.write(f"  {f}\n")
    return 0


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for INAPPLICABLE decisions
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="toric-hartogs",
        description="Hartogs phenomenon for complements of hypersurfaces in toric manifolds.",
        epilog="Fans: P2, P3, Pn, P1xP1, Hirzebruch:r or a JSON file "
        '{"dim": n, "rays": [[...]], "max_cones": [[...]]} with 0-based ray indices. '
        "Polynomials use 1-based variables z1..zn, e.g. '3*z1^-2*z2 - z2^4'. "
        "Write negative coefficients as --divisor=-1,0,2.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, divisor=True):
        p.add_argument("--fan", required=True, help="builtin fan name or path to a fan JSON file")
        if divisor:
            p.add_argument("--poly", help="Laurent polynomial in z1..zn")
            p.add_argument("--divisor", help="comma-separated coefficients in ray order")
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("analyze", help="decide the Hartogs phenomenon")
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("nef", help="nef test with per-cone witnesses")
    common(p)
    p.set_defaults(func=_cmd_nef)

    p = sub.add_parser("intersect", help="intersection number of n divisors")
    common(p, divisor=False)
    p.add_argument("--divisors", required=True, help="semicolon-separated divisors, e.g. '0,0,0,1;0,0,0,1'")
    p.set_defaults(func=_cmd_intersect)

    p = sub.add_parser("cohomology", help="line bundle cohomology table")
    common(p)
    p.add_argument("--box", help="search box 'lo,hi;lo,hi' overriding the automatic one (use --box=-3,3;-3,3 for negative bounds)")
    p.add_argument("--m-max", type=int, dest="m_max",
                   help="instead check h0(-mD) = h1(-mD) = 0 for m = 1..M")
    p.set_defaults(func=_cmd_cohomology)

    p = sub.add_parser("hirzebruch", help="closed-form evaluation on H_r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_hirzebruch)

    p = sub.add_parser("fan-check", help="smoothness and completeness report")
    common(p, divisor=False)
    p.set_defaults(func=_cmd_fan_check)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ValueError, HypothesisError, ConsistencyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
