"""Truncated big Witt vectors W_N(Q) = 1 + tQ[[t]] mod t^{N+1}.

Orientation: a vector f corresponds to an alphabet x through
f = prod (1 - x_i t)^{-1}, so the ghost components are the power sums
p_n(x).  Addition is series multiplication, the additive zero is the
series 1 and the multiplicative unit is (1 - t)^{-1}.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import symfunc
from .errors import InvalidArgument, WeightOverflow
from .series import (
    OneUnit,
    RationalLike,
    TruncatedSeries,
    as_rational,
    series_exp,
    series_inv,
    series_log,
    series_mul,
    series_scale_t,
)

GhostSequence = tuple[Fraction, ...]

ROUTES = ("ghost", "universal")


class WittVector:
    """Immutable wrapper around a one-unit; ``+`` is Witt addition, ``*`` the star product."""

    __slots__ = ("series",)

    def __init__(self, series: TruncatedSeries | Iterable[RationalLike]):
        if not isinstance(series, TruncatedSeries):
            series = TruncatedSeries(series)
        object.__setattr__(self, "series", OneUnit(series.coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("WittVector is immutable")

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self.series.coeffs

    @classmethod
    def zero(cls, order: int) -> "WittVector":
        return cls(TruncatedSeries.one(order))

    @classmethod
    def unit(cls, order: int) -> "WittVector":
        return cls([1] * (order + 1))

    @classmethod
    def teichmuller(cls, a: RationalLike, order: int) -> "WittVector":
        """(1 - a t)^{-1}, the vector of the one-letter alphabet {a}."""
        a = as_rational(a)
        return cls([a**n for n in range(order + 1)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittVector):
            return NotImplemented
        return self.series == other.series

    def __hash__(self) -> int:
        return hash(self.series)

    def __repr__(self) -> str:
        return f"WittVector([{', '.join(map(str, self.coeffs))}])"

    def __add__(self, other: "WittVector") -> "WittVector":
        return witt_add(self, other)

    def __neg__(self) -> "WittVector":
        return witt_neg(self)

    def __sub__(self, other: "WittVector") -> "WittVector":
        return witt_add(self, witt_neg(other))

    def __mul__(self, other: "WittVector") -> "WittVector":
        return witt_mul(self, other)

    def truncate(self, order: int) -> "WittVector":
        return WittVector(self.series.truncate(order))


def _as_witt(f) -> WittVector:
    return f if isinstance(f, WittVector) else WittVector(f)


def witt_add(f: WittVector, g: WittVector) -> WittVector:
    return WittVector(series_mul(_as_witt(f).series, _as_witt(g).series))


def witt_neg(f: WittVector) -> WittVector:
    return WittVector(series_inv(_as_witt(f).series))


def ghost(f: WittVector) -> GhostSequence:
    """g_n = n * [t^n] log f, for n = 1..N."""
    lg = series_log(_as_witt(f).series)
    return tuple(n * lg[n] for n in range(1, lg.order + 1))


def unghost(g: Sequence[RationalLike]) -> WittVector:
    """exp(sum g_n t^n / n); the order equals the number of ghost components."""
    gs = [as_rational(x) for x in g]
    log_series = TruncatedSeries([0] + [x / n for n, x in enumerate(gs, start=1)])
    return WittVector(series_exp(log_series))


def witt_mul(f: WittVector, g: WittVector, route: str = "ghost") -> WittVector:
    """Star product; both routes give the same vector."""
    f, g = _as_witt(f), _as_witt(g)
    n = min(f.order, g.order)
    f, g = f.truncate(n), g.truncate(n)
    if route == "ghost":
        return unghost(tuple(a * b for a, b in zip(ghost(f), ghost(g))))
    if route == "universal":
        return _mul_universal(f, g)
    raise InvalidArgument(f"unknown route {route!r}; expected one of {ROUTES}")


def _wedge_coeffs(f: WittVector) -> tuple[Fraction, ...]:
    # 1 + sum e_n t^n = f(-t)^{-1}
    return series_inv(series_scale_t(f.series, -1)).coeffs


def _mul_universal(f: WittVector, g: WittVector) -> WittVector:
    ef, eg = _wedge_coeffs(f)[1:], _wedge_coeffs(g)[1:]
    wedge = [Fraction(1)]
    for n in range(1, f.order + 1):
        wedge.append(symfunc.universal_product_poly(n).evaluate(ef, eg))
    return WittVector(series_inv(series_scale_t(TruncatedSeries(wedge), -1)))


def witt_lambda(m: int, f: WittVector, max_weight: int = symfunc.DEFAULT_MAX_WEIGHT) -> WittVector:
    """Lambda^m: the alphabet x goes to the alphabet of products x_i1...x_im, i1 < ... < im.

    The k-th ghost component of the result is p_k[e_m] evaluated on the
    ghosts of f, which needs ghosts up to k*m.  An input of order N therefore
    only determines the result to order N // m, and that is what is returned.
    """
    f = _as_witt(f)
    if m < 0:
        raise InvalidArgument("lambda index must be non-negative")
    if m == 0:
        return WittVector.unit(f.order)
    if m == 1:
        return f
    out_order = f.order // m
    if out_order * m > max_weight:
        raise WeightOverflow(
            f"Lambda^{m} to order {out_order} needs weight {out_order * m} > cap {max_weight}"
        )
    if out_order == 0:
        return WittVector.zero(0)
    gf = ghost(f)
    e_m = symfunc.e(m, out_order * m)
    gs = []
    for k in range(1, out_order + 1):
        expr = symfunc.plethysm(symfunc.p(k, out_order * m), e_m)
        gs.append(expr.evaluate_power_sums(lambda j: gf[j - 1]))
    return unghost(gs)
