"""Truncated formal power series over the rationals.

A series of order N stores exactly the coefficients c_0..c_N; everything
past t^N is unknown, so binary operations on mixed orders truncate to the
smaller one.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InvalidArgument, NonzeroConstantTerm, ParseError, ZeroConstantTerm

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"[+-]?[0-9]+(/[0-9]+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``[sign]digits[/digits]``; decimals and exponents are rejected."""
    s = text.strip().replace("−", "-")
    if not _RATIONAL_RE.fullmatch(s):
        raise ParseError(f"not an exact rational: {text!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidArgument("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidArgument(f"expected an exact rational, got {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    return str(x)


class TruncatedSeries:
    """Immutable series c_0 + c_1 t + ... + c_N t^N (mod t^{N+1})."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike]):
        cs = tuple(as_rational(c) for c in coeffs)
        if not cs:
            raise InvalidArgument("a truncated series needs at least one coefficient")
        object.__setattr__(self, "_coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("series are immutable")

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return TruncatedSeries([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return TruncatedSeries([1] + [0] * order)

    @classmethod
    def from_polynomial(cls, coeffs: Sequence[RationalLike], order: int) -> "TruncatedSeries":
        """Embed a polynomial (low degree first), padding or cutting to ``order``."""
        cs = list(coeffs)[: order + 1]
        cs += [0] * (order + 1 - len(cs))
        return TruncatedSeries(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self._coeffs[n]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}([{', '.join(map(str, self._coeffs))}])"

    def __str__(self) -> str:
        return format_series(self)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise InvalidArgument(f"cannot extend a series of order {self.order} to {order}")
        return type(self)(self._coeffs[: order + 1])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, -other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-c for c in self._coeffs)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        c = as_rational(other)
        return TruncatedSeries(c * x for x in self._coeffs)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [format_rational(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, data) -> "TruncatedSeries":
        """Accept either a bare coefficient array or ``{"order": N, "coeffs": [...]}``."""
        if isinstance(data, list):
            return TruncatedSeries(_json_coeff(c) for c in data)
        if isinstance(data, dict) and "coeffs" in data:
            s = TruncatedSeries(_json_coeff(c) for c in data["coeffs"])
            if "order" in data:
                order = data["order"]
                if not isinstance(order, int) or order != s.order:
                    raise ParseError(
                        f"order field {order!r} disagrees with {len(s)} coefficients"
                    )
            return s
        raise ParseError("series JSON must be an array or an object with 'coeffs'")


def _json_coeff(c) -> Fraction:
    if isinstance(c, str):
        return parse_rational(c)
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    raise ParseError(f"series coefficient {c!r} is not an exact rational string")


class OneUnit(TruncatedSeries):
    """Series with constant term 1."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable[RationalLike]):
        super().__init__(coeffs)
        if self._coeffs[0] != 1:
            raise InvalidArgument(f"a one-unit needs constant term 1, got {self._coeffs[0]}")


def format_polynomial(coeffs: Sequence[Fraction], var: str = "t") -> str:
    parts: list[str] = []
    for n, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def format_series(f: TruncatedSeries, var: str = "t") -> str:
    body = format_polynomial(f.coeffs, var)
    big_o = f"O({var}^{f.order + 1})"
    return big_o if body == "0" else f"{body} + {big_o}"


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    n = min(f.order, g.order)
    return TruncatedSeries(f[i] + g[i] for i in range(n + 1))


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    n = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    out = []
    for k in range(n + 1):
        out.append(sum((a[i] * b[k - i] for i in range(k + 1) if a[i] and b[k - i]), Fraction(0)))
    return TruncatedSeries(out)


def series_inv(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; requires an invertible constant term."""
    a = f.coeffs
    if a[0] == 0:
        raise ZeroConstantTerm("cannot invert a series with zero constant term")
    inv0 = 1 / a[0]
    out = [inv0]
    for k in range(1, f.order + 1):
        s = sum((a[i] * out[k - i] for i in range(1, k + 1) if a[i]), Fraction(0))
        out.append(-s * inv0)
    return TruncatedSeries(out)


def series_exp(f: TruncatedSeries) -> OneUnit:
    # h = exp(f) solves h' = f' h:  n h_n = sum_{k=1}^{n} k f_k h_{n-k}
    if f[0] != 0:
        raise NonzeroConstantTerm("exp needs a series with zero constant term")
    a = f.coeffs
    h = [Fraction(1)]
    for n in range(1, f.order + 1):
        s = sum((k * a[k] * h[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
        h.append(s / n)
    return OneUnit(h)


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    # g = log(h) solves h' = g' h:  g_n = h_n - (1/n) sum_{k=1}^{n-1} k g_k h_{n-k}
    if f[0] != 1:
        raise NonzeroConstantTerm("log needs a series with constant term 1")
    h = f.coeffs
    g = [Fraction(0)]
    for n in range(1, f.order + 1):
        s = sum((k * g[k] * h[n - k] for k in range(1, n) if g[k] and h[n - k]), Fraction(0))
        g.append(h[n] - s / n)
    return TruncatedSeries(g)


def series_scale_t(f: TruncatedSeries, c: RationalLike) -> TruncatedSeries:
    """Substitute t -> c t."""
    c = as_rational(c)
    out = []
    power = Fraction(1)
    for x in f.coeffs:
        out.append(x * power)
        power *= c
    return type(f)(out) if isinstance(f, OneUnit) else TruncatedSeries(out)


def rational_function_series(num: Sequence[RationalLike], den: Sequence[RationalLike], order: int) -> TruncatedSeries:
    """Expand num/den to ``order``; den must have a nonzero constant term."""
    b = TruncatedSeries.from_polynomial(num, order)
    a = TruncatedSeries.from_polynomial(den, order)
    return series_mul(b, series_inv(a))
