"""Command-line front end.

Every subcommand builds a JSON payload; ``--json`` prints it, otherwise a
short human rendering is printed.  Exit status is 0 on success, 1 when the
command ran but the property it checks does not hold, and the error's
``code`` otherwise (see ``wittzeta.errors.EXIT_CODES``).
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from dataclasses import dataclass, field
from typing import Sequence

from . import grothendieck as gr
from . import rationality as rat
from . import symfunc, witt
from .errors import CHECK_FAILED, InvalidArgument, ParseError, WittZetaError
from .parsing import parse_class, parse_int_list, parse_rational_list, parse_series
from .series import TruncatedSeries, format_polynomial, format_rational

SCHEMA_PREFIX = "wittzeta."
SCHEMA_VERSION = "v1"


def load_schema() -> dict:
    """The JSON Schema (draft 2020-12) every ``--json`` payload conforms to."""
    text = resources.files("wittzeta").joinpath(f"schemas/{SCHEMA_VERSION}.json").read_text(encoding="utf-8")
    return json.loads(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


@dataclass
class CommandResult:
    status: str
    exit_code: int
    payload: dict
    text: str = ""

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.payload, ensure_ascii=False)
        return self.text


@dataclass
class _Ctx:
    stdin: object
    used_stdin: list = field(default_factory=list)

    def read(self, literal: str) -> str:
        if literal != "-":
            return literal
        if self.used_stdin:
            raise ParseError("only one argument may be read from stdin")
        self.used_stdin.append(True)
        return self.stdin.read()


def _payload(schema_kind: str, /, **body) -> dict:
    return {"schema": f"{SCHEMA_PREFIX}{schema_kind}.{SCHEMA_VERSION}", "status": "ok", **body}


def _coeff_list(xs) -> str:
    return "[" + ", ".join(format_rational(x) for x in xs) + "]"


def _series_text(s: TruncatedSeries) -> str:
    return f"{s}\ncoefficients {_coeff_list(s.coeffs)}"


def _positive_order(n: int) -> int:
    if n < 1:
        raise InvalidArgument(f"--order must be >= 1, got {n}")
    return n


def _measure(args) -> gr.CountingMeasure:
    return gr.CountingMeasure(args.q, _positive_order(args.order))


def _series_payload(kind: str, s: TruncatedSeries, **extra) -> dict:
    return _payload(kind, **extra, order=s.order, coeffs=[format_rational(c) for c in s.coeffs])


# --- subcommand handlers ----------------------------------------------------


def _cmd_zeta(args, ctx) -> CommandResult:
    mu = _measure(args)
    x = parse_class(args.class_expr)
    z = gr.zeta_wedge(x, mu) if args.wedge else gr.zeta_sym(x, mu)
    kind = "wedge" if args.wedge else "sym"
    payload = _series_payload("series", z.series, **{"class": str(x), "q": mu.q, "orientation": kind})
    head = f"zeta_{kind}({x}) at q={mu.q}:"
    return CommandResult("ok", 0, payload, f"{head}\n{_series_text(z.series)}")


def _triangle_classes(args):
    return {k: parse_class(getattr(args, k)) for k in "xyz" if getattr(args, k) is not None}


def _cmd_triangle(args, ctx) -> CommandResult:
    if args.action == "solve":
        return _triangle_solve(args, ctx)
    classes = _triangle_classes(args)
    missing = [k for k in "xyz" if k not in classes]
    if missing:
        raise ParseError(f"triangle check needs --{' --'.join(missing)}")
    mu = _measure(args)
    report = gr.triangle_check(classes["x"], classes["y"], classes["z"], mu)
    lines = [f"triangle X={classes['x']}  Y={classes['y']}  Z={classes['z']}  q={mu.q}  order={mu.order}"]
    for c in report.checks:
        lines.append(f"{c.name}: " + ("pass" if c.passed else f"FAIL at {c.first_failure}"))
    payload = _payload("triangle", q=mu.q, order=mu.order, **{k: str(v) for k, v in classes.items()}, **report.to_json())
    return CommandResult("ok", 0 if report.passed else CHECK_FAILED, payload, "\n".join(lines))


def _triangle_solve(args, ctx) -> CommandResult:
    if args.known not in ("xy", "xz", "yz"):
        raise ParseError("triangle solve needs --known xy|xz|yz")
    classes = _triangle_classes(args)
    mu = _measure(args)
    series = {k: gr.zeta_sym(c, mu).series for k, c in classes.items()}
    certs = {}
    for k in args.known:
        literal = getattr(args, f"cert_{k}")
        if literal is not None:
            try:
                certs[k] = rat.RationalCertificate.from_json(json.loads(ctx.read(literal)))
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid certificate JSON: {exc.msg}", exc.pos) from exc
        elif k in series:
            found = rat.detect_rational(series[k], args.maxdeg, args.margin)
            if isinstance(found, rat.NotDetected):
                payload = _payload("triangle_solve", known=args.known, derived=None, undetected=k,
                                   report=found.report.to_json())
                return CommandResult("ok", CHECK_FAILED, payload, f"no certificate found for zeta_{k}")
            certs[k] = found
        else:
            raise ParseError(f"--known {args.known} needs --{k} or --cert-{k}")
    third = next(k for k in "xyz" if k not in args.known)
    derived = rat.two_out_of_three(series=series, **certs)
    verified = third in series
    payload = _payload("triangle_solve", known=args.known, missing=third, verified=verified,
                       certificates={k: c.to_json() for k, c in certs.items()}, derived=derived.to_json())
    text = f"derived zeta_{third}: {_cert_text(derived)}"
    if verified:
        text += f"\nverified against zeta_{third}({classes[third]}) to order {derived.order}"
    return CommandResult("ok", 0, payload, text)


def _cmd_closed_points(args, ctx) -> CommandResult:
    mu = _measure(args)
    x = parse_class(args.class_expr, effective=args.effective)
    res = gr.closed_point_counts(x, mu, args.max_degree)
    counts = [format_rational(c) for c in res.counts]
    payload = _payload("closed_points", **{"class": str(x)}, q=mu.q, counts=counts, integral=res.integral)
    lines = [f"closed points of {x} over F_{mu.q}:"]
    lines += [f"M_{d} = {c}" for d, c in enumerate(counts, start=1)]
    if not res.integral:
        lines.append(f"warning: M_{res.first_bad_degree()} is not a non-negative integer (virtual class)")
    return CommandResult("ok", 0, payload, "\n".join(lines))


def _cmd_sym_count(args, ctx) -> CommandResult:
    if args.n < 0:
        raise InvalidArgument("--n must be non-negative")
    x = parse_class(args.class_expr)
    mu = gr.CountingMeasure(args.q, args.n)
    value = gr.sym_power_count(x, mu, args.n)
    payload = _payload("sym_count", **{"class": str(x)}, q=mu.q, n=args.n, value=format_rational(value))
    return CommandResult("ok", 0, payload, f"#Sym^{args.n}({x})(F_{mu.q}) = {value}")


def _read_witt(ctx, literal: str | None, name: str, order: int | None) -> witt.WittVector:
    if literal is None:
        raise ParseError(f"missing --{name}")
    s = parse_series(ctx.read(literal))
    if order is not None:
        s = s.truncate(order)
    try:
        return witt.WittVector(s)
    except InvalidArgument as exc:
        raise ParseError(f"--{name}: {exc}") from exc


def _cmd_witt(args, ctx) -> CommandResult:
    order = None if args.order is None else _positive_order(args.order)
    op = args.op
    if op == "unghost":
        if args.ghost is None:
            raise ParseError("witt unghost needs --ghost")
        gs = parse_rational_list(ctx.read(args.ghost))
        if order is not None:
            if order > len(gs):
                raise InvalidArgument(f"{len(gs)} ghost components cannot give order {order}")
            gs = gs[:order]
        result = witt.unghost(gs).series
    elif op == "ghost":
        f = _read_witt(ctx, args.f, "f", order)
        gs = witt.ghost(f)
        payload = _payload("ghost", ghost=[format_rational(c) for c in gs])
        return CommandResult("ok", 0, payload, f"ghost {_coeff_list(gs)}")
    elif op == "neg":
        result = witt.witt_neg(_read_witt(ctx, args.f, "f", order)).series
    elif op == "lambda":
        if args.m is None:
            raise ParseError("witt lambda needs --m")
        result = witt.witt_lambda(args.m, _read_witt(ctx, args.f, "f", order)).series
    else:
        f = _read_witt(ctx, args.f, "f", order)
        g = _read_witt(ctx, args.g, "g", order)
        if op == "add":
            result = witt.witt_add(f, g).series
        else:
            result = witt.witt_mul(f, g, route=args.route).series
    return CommandResult("ok", 0, _series_payload("series", result), _series_text(result))


def _cmd_universal_poly(args, ctx) -> CommandResult:
    if args.kind == "product":
        if args.m is not None:
            raise ParseError("universal-poly product takes --n only")
        poly = symfunc.universal_product_poly(args.n)
        name, extra = f"P_{args.n}", {"n": args.n}
    else:
        if args.m is None:
            raise ParseError("universal-poly compose needs --m")
        poly = symfunc.universal_composition_poly(args.m, args.n)
        name, extra = f"P_{{{args.m},{args.n}}}", {"m": args.m, "n": args.n}
    payload = _payload("universal_poly", kind=args.kind, **extra, **poly.to_json())
    return CommandResult("ok", 0, payload, f"{name} = {poly.to_text()}")


def _cert_text(cert: rat.RationalCertificate) -> str:
    p, q = cert.degrees
    return (
        f"({format_polynomial(cert.num)}) / ({format_polynomial(cert.den)})  "
        f"[degrees ({p},{q}), certified to order {cert.order} with margin {cert.margin}]"
    )


def _read_cert(ctx, literal: str | None, name: str) -> rat.RationalCertificate:
    if literal is None:
        raise ParseError(f"missing --{name}")
    try:
        data = json.loads(ctx.read(literal))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid certificate JSON: {exc.msg}", exc.pos) from exc
    if not isinstance(data, dict):
        raise ParseError("certificate JSON must be an object")
    return rat.RationalCertificate.from_json(data)


def _read_series(ctx, args) -> TruncatedSeries:
    if args.series is None:
        raise ParseError("missing --series")
    return parse_series(ctx.read(args.series))


def _cmd_rational(args, ctx) -> CommandResult:
    op = args.op
    if op == "detect":
        xi = _read_series(ctx, args)
        found = rat.detect_rational(xi, args.maxdeg, args.margin)
        if isinstance(found, rat.NotDetected):
            payload = _payload("rational_detect", detected=False, certificate=None, report=found.report.to_json())
            return CommandResult("ok", CHECK_FAILED, payload,
                                 f"not detected up to degree {args.maxdeg} at order {xi.order}")
        payload = _payload("rational_detect", detected=True, certificate=found.to_json(), report=None)
        return CommandResult("ok", 0, payload, _cert_text(found))
    if op == "pade":
        if args.p is None or args.q is None:
            raise ParseError("rational pade needs --p and --q")
        cert = rat.pade(_read_series(ctx, args), args.p, args.q, args.margin)
        return CommandResult("ok", 0, _payload("certificate", **cert.to_json()), _cert_text(cert))
    if op == "verify":
        xi = _read_series(ctx, args)
        res = rat.certificate_verify(xi, _read_cert(ctx, args.cert, "cert"))
        text = "verified" if res.ok else f"FAIL at index {res.first_failure}"
        text += f" (checked through order {res.checked_order}"
        text += ", partial attestation)" if res.partial else ")"
        return CommandResult("ok", 0 if res.ok else CHECK_FAILED, _payload("verify", **res.to_json()), text)
    # star
    if args.order is None:
        raise ParseError("rational star needs --order")
    f = _read_cert(ctx, args.f_cert, "f-cert")
    g = _read_cert(ctx, args.g_cert, "g-cert")
    found = rat.star_closure_check(f, g, _positive_order(args.order), args.margin)
    if isinstance(found, rat.NotDetected):
        payload = _payload("rational_detect", detected=False, certificate=None, report=found.report.to_json())
        return CommandResult("ok", CHECK_FAILED, payload, "star product not certified")
    payload = _payload("rational_detect", detected=True, certificate=found.to_json(), report=None)
    return CommandResult("ok", 0, payload, _cert_text(found))


def _cmd_funceq(args, ctx) -> CommandResult:
    L = parse_int_list(args.L)
    res = rat.functional_equation_check(L, args.g, args.q)
    payload = _payload("funceq", L=L, g=args.g, q=args.q, **res.to_json())
    text = "pass" if res.passed else f"FAIL, residual {_coeff_list(res.residual)}"
    return CommandResult("ok", 0 if res.passed else CHECK_FAILED, payload, text)


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="wittzeta", description="Exact lambda-ring and zeta-function calculator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("zeta", parents=[common], help="zeta function of a class under the counting measure")
    p.add_argument("--class", dest="class_expr", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--wedge", action="store_true", help="opposite (exterior power) orientation")
    p.set_defaults(handler=_cmd_zeta)

    p = sub.add_parser("triangle", parents=[common], help="check or solve [Y] = [X] + [Z]")
    p.add_argument("action", nargs="?", choices=("check", "solve"), default="check")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--z")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--known", choices=("xy", "xz", "yz"))
    p.add_argument("--cert-x")
    p.add_argument("--cert-y")
    p.add_argument("--cert-z")
    p.add_argument("--maxdeg", type=int, default=4)
    p.add_argument("--margin", type=int, default=rat.DEFAULT_MARGIN)
    p.set_defaults(handler=_cmd_triangle)

    p = sub.add_parser("closed-points", parents=[common], help="closed points of each degree")
    p.add_argument("--class", dest="class_expr", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--effective", action="store_true", help="treat the class as an actual variety")
    p.set_defaults(handler=_cmd_closed_points)

    p = sub.add_parser("sym-count", parents=[common], help="point count of a symmetric power")
    p.add_argument("--class", dest="class_expr", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_sym_count)

    p = sub.add_parser("witt", parents=[common], help="big Witt vector arithmetic")
    p.add_argument("op", choices=("add", "neg", "mul", "lambda", "ghost", "unghost"))
    p.add_argument("--order", type=int)
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--m", type=int)
    p.add_argument("--ghost")
    p.add_argument("--route", choices=witt.ROUTES, default="ghost")
    p.set_defaults(handler=_cmd_witt)

    p = sub.add_parser("universal-poly", parents=[common], help="universal polynomials P_n and P_{m,n}")
    p.add_argument("kind", choices=("product", "compose"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.set_defaults(handler=_cmd_universal_poly)

    p = sub.add_parser("rational", parents=[common], help="rationality certificates")
    p.add_argument("op", choices=("detect", "pade", "verify", "star"))
    p.add_argument("--series")
    p.add_argument("--maxdeg", type=int, default=4)
    p.add_argument("--margin", type=int, default=rat.DEFAULT_MARGIN)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--cert")
    p.add_argument("--f-cert")
    p.add_argument("--g-cert")
    p.add_argument("--order", type=int)
    p.set_defaults(handler=_cmd_rational)

    p = sub.add_parser("funceq", parents=[common], help="functional equation of a curve L-polynomial")
    p.add_argument("--L", required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=_cmd_funceq)
    return parser


def _error_result(exc: WittZetaError) -> CommandResult:
    payload = {
        "schema": f"{SCHEMA_PREFIX}error.{SCHEMA_VERSION}",
        "status": "error",
        "error": type(exc).__name__,
        "code": exc.code,
        "message": str(exc),
    }
    if isinstance(exc, ParseError) and exc.offset is not None:
        payload["offset"] = exc.offset
    return CommandResult("error", exc.code, payload, f"error: {type(exc).__name__}: {exc}")


def dispatch(argv: Sequence[str], stdin=None) -> tuple[CommandResult, bool]:
    """Run one command; returns the result and whether JSON output was requested."""
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(list(argv))
        return args.handler(args, _Ctx(stdin if stdin is not None else sys.stdin)), args.json
    except WittZetaError as exc:
        return _error_result(exc), as_json


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        build_parser().parse_args(list(argv))
    result, as_json = dispatch(argv)
    out = result.render(as_json)
    if result.status == "error" and not as_json:
        print(out, file=sys.stderr)
    else:
        print(out)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
