"""Desk-scale Grothendieck ring of varieties over F_q, seen through point counts.

A class is an integer polynomial in atoms (affine spaces, projective
spaces, the torus, closed points, curves given by their L-polynomial, or a
raw point-count sequence).  The counting measure at q sends each atom to its
sequence N_m = #X(F_{q^m}), m = 1..N; sums go to sums and products to
componentwise products.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BadLPolynomial,
    InsufficientData,
    InvalidArgument,
    NonIntegralClosedPoints,
)
from .series import (
    RationalLike,
    TruncatedSeries,
    as_rational,
    format_rational,
    series_inv,
    series_log,
    series_mul,
    series_scale_t,
)
from .witt import GhostSequence, WittVector, unghost

ATOM_KINDS = ("affine", "projective", "torus", "point", "curve", "custom")


@dataclass(frozen=True)
class CountingMeasure:
    q: int
    order: int

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 2:
            raise InvalidArgument(f"q must be an integer >= 2, got {self.q!r}")
        if isinstance(self.order, bool) or not isinstance(self.order, int) or self.order < 0:
            raise InvalidArgument(f"order must be a non-negative integer, got {self.order!r}")


def check_lpoly(L: Sequence[int], genus: int) -> tuple[int, ...]:
    """Validate an L-polynomial: integer coefficients, L(0) = 1, degree 2g."""
    if isinstance(genus, bool) or not isinstance(genus, int) or genus < 0:
        raise BadLPolynomial(f"genus must be a non-negative integer, got {genus!r}")
    coeffs = []
    for c in L:
        c = as_rational(c) if not isinstance(c, int) else Fraction(c)
        if c.denominator != 1:
            raise BadLPolynomial(f"L-polynomial coefficient {c} is not an integer")
        coeffs.append(int(c))
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs or coeffs[0] != 1:
        raise BadLPolynomial("L-polynomial must have constant term 1")
    if len(coeffs) - 1 != 2 * genus:
        raise BadLPolynomial(f"L-polynomial has degree {len(coeffs) - 1}, expected 2g = {2 * genus}")
    return tuple(coeffs)


def lpoly_power_sums(L: Sequence[int], order: int) -> tuple[Fraction, ...]:
    """s_1..s_order, the power sums of the inverse roots, from -t L'/L."""
    lg = series_log(TruncatedSeries.from_polynomial(L, order))
    return tuple(-m * lg[m] for m in range(1, order + 1))


@dataclass(frozen=True)
class Atom:
    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in ATOM_KINDS:
            raise InvalidArgument(f"unknown atom kind {self.kind!r}")

    @property
    def label(self) -> str:
        k, ps = self.kind, self.params
        if k == "affine":
            return f"A({ps[0]})"
        if k == "projective":
            return f"P({ps[0]})"
        if k == "torus":
            return "Gm"
        if k == "point":
            return "pt" if ps[0] == 1 else f"pt({ps[0]})"
        if k == "curve":
            g, L = ps
            return f"curve(g={g}; L=[{','.join(map(str, L))}])"
        return f"custom(N=[{','.join(format_rational(x) for x in ps)}])"

    def __str__(self) -> str:
        return self.label

    def ghost(self, q: int, order: int) -> GhostSequence:
        k, ps = self.kind, self.params
        ms = range(1, order + 1)
        if k == "affine":
            return tuple(Fraction(q ** (ps[0] * m)) for m in ms)
        if k == "projective":
            return tuple(Fraction(sum(q ** (i * m) for i in range(ps[0] + 1))) for m in ms)
        if k == "torus":
            return tuple(Fraction(q**m - 1) for m in ms)
        if k == "point":
            d = ps[0]
            return tuple(Fraction(d if m % d == 0 else 0) for m in ms)
        if k == "curve":
            g, L = ps
            if g > 0 and L[-1] != q**g:
                warnings.warn(
                    f"{self.label}: leading coefficient {L[-1]} != q^g = {q**g}; "
                    "not the L-polynomial of a curve over this field",
                    stacklevel=2,
                )
            s = lpoly_power_sums(L, order)
            return tuple(Fraction(q**m + 1) - s[m - 1] for m in ms)
        if order > len(ps):
            raise InsufficientData(f"{self.label} gives {len(ps)} counts, order {order} requested")
        return tuple(ps[:order])


def affine(n: int) -> Atom:
    return Atom("affine", (_nonneg(n, "affine dimension"),))


def projective(n: int) -> Atom:
    return Atom("projective", (_nonneg(n, "projective dimension"),))


def torus() -> Atom:
    return Atom("torus")


def point(degree: int = 1) -> Atom:
    """A closed point of the given degree (a single F_q-point when degree = 1)."""
    if _nonneg(degree, "point degree") == 0:
        raise InvalidArgument("point degree must be >= 1")
    return Atom("point", (degree,))


def curve(L: Sequence[int], genus: int) -> Atom:
    return Atom("curve", (genus, check_lpoly(L, genus)))


def custom(counts: Iterable[RationalLike]) -> Atom:
    return Atom("custom", tuple(as_rational(c) for c in counts))


def _nonneg(n, what: str) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InvalidArgument(f"{what} must be a non-negative integer, got {n!r}")
    return n


Monomial = tuple[tuple[Atom, int], ...]


def _mono_key(mono: Monomial) -> tuple:
    return (sum(e for _, e in mono), [(a.label, e) for a, e in mono])


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: dict[Atom, int] = dict(a)
    for atom, e in b:
        exps[atom] = exps.get(atom, 0) + e
    return tuple(sorted(exps.items(), key=lambda ae: ae[0].label))


@dataclass(frozen=True)
class ClassExpr:
    """Integer combination of atom products, kept in canonical order.

    ``effective`` is a caller's promise that the class is represented by an
    actual variety; it is never inferred.
    """

    terms: tuple[tuple[Monomial, int], ...] = ()
    effective: bool = field(default=False, compare=False)

    @classmethod
    def from_dict(cls, data: dict, effective: bool = False) -> "ClassExpr":
        merged: dict[Monomial, int] = {}
        for mono, c in data.items():
            merged[mono] = merged.get(mono, 0) + c
        items = sorted(((m, c) for m, c in merged.items() if c != 0), key=lambda mc: _mono_key(mc[0]))
        return cls(tuple(items), effective)

    @classmethod
    def of(cls, atom: Atom) -> "ClassExpr":
        return cls.from_dict({((atom, 1),): 1})

    @classmethod
    def scalar(cls, n: int) -> "ClassExpr":
        return cls.from_dict({(): n})

    def with_effective(self, flag: bool = True) -> "ClassExpr":
        return replace(self, effective=flag)

    def __add__(self, other) -> "ClassExpr":
        other = _as_class(other)
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return ClassExpr.from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> "ClassExpr":
        return ClassExpr.from_dict({m: -c for m, c in self.terms})

    def __sub__(self, other) -> "ClassExpr":
        return self + (-_as_class(other))

    def __rsub__(self, other) -> "ClassExpr":
        return _as_class(other) - self

    def __mul__(self, other) -> "ClassExpr":
        other = _as_class(other)
        d: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return ClassExpr.from_dict(d)

    __rmul__ = __mul__

    def atoms(self) -> set[Atom]:
        return {a for m, _ in self.terms for a, _ in m}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.terms:
            body = "*".join(a.label if e == 1 else "*".join([a.label] * e) for a, e in mono)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not out:
                out.append(text if c > 0 else f"-{text}")
            else:
                out.append(("+ " if c > 0 else "- ") + text)
        return " ".join(out)


def _as_class(x) -> ClassExpr:
    if isinstance(x, ClassExpr):
        return x
    if isinstance(x, Atom):
        return ClassExpr.of(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return ClassExpr.scalar(x)
    raise InvalidArgument(f"cannot use {x!r} as a class")


def measure_ghost(x: ClassExpr | Atom, mu: CountingMeasure) -> GhostSequence:
    """Point counts N_1..N_order of a virtual class."""
    x = _as_class(x)
    total = [Fraction(0)] * mu.order
    cache: dict[Atom, GhostSequence] = {}
    for mono, c in x.terms:
        vals = [Fraction(c)] * mu.order
        for atom, e in mono:
            if atom not in cache:
                cache[atom] = atom.ghost(mu.q, mu.order)
            g = cache[atom]
            vals = [v * g[i] ** e for i, v in enumerate(vals)]
        total = [t + v for t, v in zip(total, vals)]
    return tuple(total)


def curve_ghost_from_lpoly(L: Sequence[int], genus: int, mu: CountingMeasure) -> GhostSequence:
    return curve(L, genus).ghost(mu.q, mu.order)


def zeta_sym(x: ClassExpr | Atom, mu: CountingMeasure) -> WittVector:
    """exp(sum N_m t^m / m); its n-th coefficient is the count of Sym^n."""
    return unghost(measure_ghost(x, mu))


def zeta_wedge(x: ClassExpr | Atom, mu: CountingMeasure) -> WittVector:
    """Opposite orientation: 1 + sum lambda^i t^i = zeta_sym(-t)^{-1}."""
    return WittVector(series_inv(series_scale_t(zeta_sym(x, mu).series, -1)))


def sym_power_count(x: ClassExpr | Atom, mu: CountingMeasure, n: int) -> Fraction:
    if n < 0 or n > mu.order:
        raise InvalidArgument(f"n must lie in 0..{mu.order}, got {n}")
    return zeta_sym(x, CountingMeasure(mu.q, n)).coeffs[n]


def mobius(n: int) -> int:
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


@dataclass(frozen=True)
class ClosedPointCounts:
    counts: tuple[Fraction, ...]  # M_1..M_D

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.counts)

    def first_bad_degree(self) -> int | None:
        for d, c in enumerate(self.counts, start=1):
            if c.denominator != 1 or c < 0:
                return d
        return None


def closed_point_counts(x: ClassExpr | Atom, mu: CountingMeasure, max_degree: int | None = None) -> ClosedPointCounts:
    """Invert N_m = sum_{d | m} d M_d; raises for effective classes with bad M_d."""
    D = mu.order if max_degree is None else max_degree
    N = measure_ghost(x, CountingMeasure(mu.q, D))
    counts = []
    for d in range(1, D + 1):
        s = sum((mobius(d // e) * N[e - 1] for e in range(1, d + 1) if d % e == 0), Fraction(0))
        counts.append(s / d)
    result = ClosedPointCounts(tuple(counts))
    if isinstance(x, ClassExpr) and x.effective and not result.integral:
        d = result.first_bad_degree()
        raise NonIntegralClosedPoints(f"M_{d} = {counts[d - 1]} for a class flagged effective")
    return result


def suspend(x: ClassExpr | Atom) -> ClassExpr:
    return -_as_class(x)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    first_failure: int | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "first_failure": self.first_failure}


@dataclass(frozen=True)
class TriangleReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _first_mismatch(a: Sequence, b: Sequence, start: int) -> int | None:
    for i, (u, v) in enumerate(zip(a, b), start=start):
        if u != v:
            return i
    return None


def triangle_check(x, y, z, mu: CountingMeasure) -> TriangleReport:
    """Check the consequences of [Y] = [X] + [Z] under the counting measure."""
    gx, gy, gz = (measure_ghost(c, mu) for c in (x, y, z))
    bad = _first_mismatch(gy, [a + b for a, b in zip(gx, gz)], start=1)
    ghosts = CheckResult("ghost_additivity", bad is None, bad)

    zx, zy, zz = (zeta_sym(c, mu).coeffs for c in (x, y, z))
    bad = _first_mismatch(zy, series_mul(TruncatedSeries(zx), TruncatedSeries(zz)).coeffs, start=0)
    product = CheckResult("zeta_product", bad is None, bad)

    # y_n = sum_i z_i x_{n-i}, spelled out coefficient by coefficient
    bad = None
    for n in range(mu.order + 1):
        rhs = sum((zz[i] * zx[n - i] for i in range(n + 1)), Fraction(0))
        if zy[n] != rhs:
            bad = n
            break
    kunneth = CheckResult("kunneth_coefficients", bad is None, bad)
    return TriangleReport((ghosts, product, kunneth))
