"""Text front ends: class expressions and JSON series literals.

Class grammar::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | primary
    primary := INT | atom | "(" expr ")"
    atom    := "pt" ["(" INT ")"] | "A(" INT ")" | "P(" INT ")" | "Gm"
             | "curve(" "g=" INT ";" "L=" list ")"     (keys in either order)
             | "custom(" "N=" list ")"
    list    := "[" [RATIONAL ("," RATIONAL)*] "]"

``pt(d)`` is a closed point of degree d.  Errors report the byte offset of
the offending character.
"""
from __future__ import annotations

import json
import re

from . import grothendieck as gr
from .errors import BadLPolynomial, InvalidArgument, ParseError
from .series import TruncatedSeries, parse_rational

_INT = re.compile(r"[0-9]+")
_NUMBER = re.compile(r"[+-]?[0-9]+(/[0-9]+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _ClassParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ParseError:
        pos = self.pos if pos is None else pos
        return ParseError(message, len(self.text[:pos].encode("utf-8")))

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected a non-negative integer")
        self.pos = m.end()
        return int(m.group())

    def rational_list(self) -> list:
        self.expect("[")
        items = []
        if self.peek() == "]":
            self.pos += 1
            return items
        while True:
            self.skip()
            m = _NUMBER.match(self.text, self.pos)
            if not m:
                raise self.error("expected an exact rational")
            items.append(parse_rational(m.group()))
            self.pos = m.end()
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect("]")
            return items

    def parse(self) -> gr.ClassExpr:
        result = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return result

    def expr(self) -> gr.ClassExpr:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> gr.ClassExpr:
        value = self.unary()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.unary()
        return value

    def unary(self) -> gr.ClassExpr:
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        return self.primary()

    def primary(self) -> gr.ClassExpr:
        ch = self.peek()
        if ch == "":
            raise self.error("unexpected end of input")
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if ch.isdigit():
            return gr.ClassExpr.scalar(self.integer())
        start = self.pos
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise self.error(f"unexpected {ch!r}")
        name = m.group()
        self.pos = m.end()
        try:
            return gr.ClassExpr.of(self.atom(name, start))
        except (InvalidArgument, BadLPolynomial) as exc:
            raise self.error(str(exc), start) from exc

    def atom(self, name: str, start: int) -> gr.Atom:
        if name == "pt":
            if self.peek() == "(":
                self.pos += 1
                d = self.integer()
                self.expect(")")
                return gr.point(d)
            return gr.point()
        if name == "Gm":
            return gr.torus()
        if name in ("A", "P"):
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return gr.affine(n) if name == "A" else gr.projective(n)
        if name == "curve":
            self.expect("(")
            args = self.keyword_args({"g", "L"}, sep=";")
            return gr.curve(args["L"], args["g"])
        if name == "custom":
            self.expect("(")
            args = self.keyword_args({"N"}, sep=";")
            return gr.custom(args["N"])
        raise self.error(f"unknown atom {name!r}", start)

    def keyword_args(self, keys: set[str], sep: str) -> dict:
        args: dict = {}
        while True:
            self.skip()
            kpos = self.pos
            m = _IDENT.match(self.text, self.pos)
            if not m or m.group() not in keys or m.group() in args:
                raise self.error(f"expected one of {sorted(keys - set(args))}", kpos)
            self.pos = m.end()
            self.expect("=")
            if m.group() == "g":
                args["g"] = self.integer()
            else:
                args[m.group()] = self.rational_list()
            if len(args) == len(keys):
                self.expect(")")
                return args
            self.expect(sep)


def parse_class(text: str, effective: bool = False) -> gr.ClassExpr:
    return _ClassParser(text).parse().with_effective(effective)


def parse_series(text: str) -> TruncatedSeries:
    """Parse a JSON series literal: an array of rational strings or ``{"order", "coeffs"}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    return TruncatedSeries.from_json(data)


def parse_int_list(text: str) -> list[int]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    if not isinstance(data, list):
        raise ParseError("expected a JSON array")
    out = []
    for c in data:
        if isinstance(c, int) and not isinstance(c, bool):
            out.append(c)
        elif isinstance(c, str):
            r = parse_rational(c)
            if r.denominator != 1:
                raise ParseError(f"{c!r} is not an integer")
            out.append(int(r))
        else:
            raise ParseError(f"{c!r} is not an integer")
    return out


def parse_rational_list(text: str) -> list:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    if not isinstance(data, list):
        raise ParseError("expected a JSON array")
    return list(TruncatedSeries.from_json(data).coeffs) if data else []
