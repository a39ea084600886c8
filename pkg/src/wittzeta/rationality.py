"""Rationality certificates for truncated series.

A certificate (b, a) with a(0) = 1 attests a*xi = b mod t^{N+1}.  That is a
statement about N+1 coefficients only; with ``margin`` extra coefficients
beyond deg a + deg b it is strong evidence, never a proof.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    InconsistentRelation,
    InsufficientOrder,
    InvalidArgument,
    NoSolution,
    ParseError,
)
from .grothendieck import check_lpoly
from .series import TruncatedSeries, as_rational, format_rational, parse_rational, rational_function_series
from .witt import WittVector, witt_mul

DEFAULT_MARGIN = 2

Poly = tuple[Fraction, ...]  # low degree first, no trailing zeros (zero poly is ())


# --- exact univariate polynomials over Q ------------------------------------

def poly_trim(a: Sequence) -> Poly:
    cs = [Fraction(c) for c in a]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_degree(a: Poly) -> int:
    return len(a) - 1 if a else -1


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] / lead
        quot[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return poly_trim(quot), poly_trim(rem[: len(b) - 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    return tuple(c / a[-1] for c in a)


# --- certificates -----------------------------------------------------------


@dataclass(frozen=True)
class RationalCertificate:
    num: Poly
    den: Poly
    order: int
    margin: int = DEFAULT_MARGIN

    def __post_init__(self):
        if not self.den or self.den[0] != 1:
            raise InvalidArgument("certificate denominator must have constant term 1")

    @property
    def degrees(self) -> tuple[int, int]:
        """(deg num, deg den); the zero numerator counts as degree 0."""
        return max(poly_degree(self.num), 0), poly_degree(self.den)

    def series(self, order: int | None = None) -> TruncatedSeries:
        return rational_function_series(self.num or (0,), self.den, self.order if order is None else order)

    def to_json(self) -> dict:
        return {
            "num": [format_rational(c) for c in self.num],
            "den": [format_rational(c) for c in self.den],
            "order": self.order,
            "margin": self.margin,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalCertificate":
        try:
            num = poly_trim(_coeff(c) for c in data["num"])
            den = poly_trim(_coeff(c) for c in data["den"])
            order = data["order"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed certificate: {exc}") from exc
        if not isinstance(order, int) or isinstance(order, bool) or order < 0:
            raise ParseError("certificate order must be a non-negative integer")
        margin = data.get("margin", DEFAULT_MARGIN)
        try:
            return cls(num, den, order, margin)
        except InvalidArgument as exc:
            raise ParseError(str(exc)) from exc


def _coeff(c) -> Fraction:
    if isinstance(c, str):
        return parse_rational(c)
    return as_rational(c)


def reduce_fraction(num: Sequence, den: Sequence) -> tuple[Poly, Poly]:
    """Cancel gcd(num, den) and scale so den(0) = 1."""
    num, den = poly_trim(num), poly_trim(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (Fraction(1),)
    g = poly_gcd(num, den)
    if poly_degree(g) > 0:
        num, den = poly_divmod(num, g)[0], poly_divmod(den, g)[0]
    if den[0] == 0:
        raise InvalidArgument("reduced denominator vanishes at t = 0; not a power series")
    c = den[0]
    return tuple(x / c for x in num), tuple(x / c for x in den)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    first_failure: int | None
    checked_order: int
    partial: bool

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "first_failure": self.first_failure,
            "checked_order": self.checked_order,
            "partial": self.partial,
        }


def _residual_index(xi: Sequence[Fraction], num: Poly, den: Poly, upto: int) -> int | None:
    for k in range(upto + 1):
        s = sum((den[j] * xi[k - j] for j in range(min(k, len(den) - 1) + 1)), Fraction(0))
        if s != (num[k] if k < len(num) else 0):
            return k
    return None


def certificate_verify(xi: TruncatedSeries, cert: RationalCertificate) -> VerifyResult:
    """Exact check of a*xi - b = 0 through min(attested order, series order)."""
    upto = min(cert.order, xi.order)
    bad = _residual_index(xi.coeffs, cert.num, cert.den, upto)
    return VerifyResult(bad is None, bad, upto, xi.order > cert.order)


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Some solution of rows * x = rhs (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    m = [r[:] + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in m[r:]):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][-1]
    return x


def _pade_raw(xi: Sequence[Fraction], p: int, q: int) -> tuple[Poly, Poly] | None:
    # unknowns a_1..a_q from (a*xi)_k = 0 for k = p+1..p+q
    rows, rhs = [], []
    for k in range(p + 1, p + q + 1):
        rows.append([xi[k - j] if k - j >= 0 else Fraction(0) for j in range(1, q + 1)])
        rhs.append(-xi[k])
    sol = _solve(rows, rhs) if q else []
    if sol is None:
        return None
    den = [Fraction(1)] + sol
    num = [
        sum((den[j] * xi[k - j] for j in range(min(k, q) + 1)), Fraction(0))
        for k in range(p + 1)
    ]
    return poly_trim(num), poly_trim(den)


def pade(xi: TruncatedSeries, p: int, q: int, margin: int = DEFAULT_MARGIN) -> RationalCertificate:
    """[p/q] Padé certificate, re-verified through the full order of ``xi``."""
    if p < 0 or q < 0:
        raise InvalidArgument("degrees must be non-negative")
    if p + q > xi.order:
        raise InsufficientOrder(f"p + q = {p + q} exceeds the series order {xi.order}")
    raw = _pade_raw(xi.coeffs, p, q)
    if raw is None:
        raise NoSolution(f"[{p}/{q}] Padé block has no solution with a(0) = 1")
    num, den = reduce_fraction(*raw)
    bad = _residual_index(xi.coeffs, num, den, xi.order)
    if bad is not None:
        raise NoSolution(f"[{p}/{q}] Padé approximant fails re-verification at order {bad}")
    return RationalCertificate(num, den, xi.order, margin)


# --- detection --------------------------------------------------------------


def hankel_det(xi: Sequence[Fraction], shift: int, size: int) -> Fraction:
    """det [xi_{shift+i+j}], 0 <= i, j < size."""
    m = [[Fraction(xi[shift + i + j]) for j in range(size)] for i in range(size)]
    det = Fraction(1)
    for c in range(size):
        piv = next((i for i in range(c, size) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, size):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


@dataclass(frozen=True)
class HankelEntry:
    denominator_degree: int
    nonvanishing_shifts: tuple[int, ...]
    furthest_match: int

    def to_json(self) -> dict:
        return {
            "denominator_degree": self.denominator_degree,
            "nonvanishing_shifts": list(self.nonvanishing_shifts),
            "furthest_match": self.furthest_match,
        }


@dataclass(frozen=True)
class HankelReport:
    """Evidence gathered when no certificate was found.

    For each denominator degree d: the shifts s at which the (d+1)x(d+1)
    Hankel determinant det[xi_{s+i+j}] is nonzero (a series with a degree-d
    recurrence from some point on has only finitely many), and the last index
    through which the best [p/d] candidate still matched.
    """

    order: int
    maxdeg: int
    margin: int
    entries: tuple[HankelEntry, ...]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "maxdeg": self.maxdeg,
            "margin": self.margin,
            "entries": [e.to_json() for e in self.entries],
        }


@dataclass(frozen=True)
class NotDetected:
    report: HankelReport


def detect_rational(
    xi: TruncatedSeries, maxdeg: int, margin: int = DEFAULT_MARGIN
) -> RationalCertificate | NotDetected:
    """Smallest certificate with numerator and denominator degree <= maxdeg.

    Candidates are tried by increasing p + q, then increasing q, and only
    those leaving at least ``margin`` coefficients unused by the fit.
    """
    if maxdeg < 0 or margin < 0:
        raise InvalidArgument("maxdeg and margin must be non-negative")
    N = xi.order
    if 2 * maxdeg + margin > N:
        raise InsufficientOrder(f"2*maxdeg + margin = {2 * maxdeg + margin} exceeds order {N}")
    cs = xi.coeffs
    furthest = {q: -1 for q in range(maxdeg + 1)}
    for total in range(2 * maxdeg + 1):
        for q in range(max(0, total - maxdeg), min(total, maxdeg) + 1):
            p = total - q
            raw = _pade_raw(cs, p, q)
            if raw is None:
                continue
            try:
                num, den = reduce_fraction(*raw)
            except InvalidArgument:
                continue
            bad = _residual_index(cs, num, den, N)
            if bad is None:
                return RationalCertificate(num, den, N, margin)
            furthest[q] = max(furthest[q], bad - 1)
    entries = []
    for d in range(maxdeg + 1):
        shifts = tuple(s for s in range(N - 2 * d + 1) if hankel_det(cs, s, d + 1) != 0)
        entries.append(HankelEntry(d, shifts, furthest[d]))
    return NotDetected(HankelReport(N, maxdeg, margin, tuple(entries)))


# --- triangles and closure --------------------------------------------------


def two_out_of_three(
    x: RationalCertificate | None = None,
    y: RationalCertificate | None = None,
    z: RationalCertificate | None = None,
    series: dict[str, TruncatedSeries] | None = None,
) -> RationalCertificate:
    """Certificate for the missing zeta of a triangle, from zeta_y = zeta_x * zeta_z.

    ``series`` optionally maps "x"/"y"/"z" to truncated series; known
    certificates are checked against them and the derived one is checked
    against the third.
    """
    given = {k: c for k, c in (("x", x), ("y", y), ("z", z)) if c is not None}
    if len(given) != 2:
        raise InvalidArgument("exactly two of x, y, z must be given")
    series = series or {}
    for k, cert in given.items():
        if k in series:
            res = certificate_verify(series[k], cert)
            if not res.ok:
                raise InconsistentRelation(
                    f"certificate for {k} fails against its series at index {res.first_failure}"
                )
    if y is None:
        num, den = poly_mul(x.num, z.num), poly_mul(x.den, z.den)
        missing, order = "y", min(x.order, z.order)
    else:
        known = x if x is not None else z
        missing = "z" if x is not None else "x"
        if not known.num:
            raise InconsistentRelation(f"cannot divide by the zero series for {missing}")
        num, den = poly_mul(y.num, known.den), poly_mul(y.den, known.num)
        order = min(y.order, known.order)
    try:
        num, den = reduce_fraction(num, den)
    except InvalidArgument as exc:
        raise InconsistentRelation(str(exc)) from exc
    margin = min(c.margin for c in given.values())
    cert = RationalCertificate(num, den, order, margin)
    if missing in series:
        res = certificate_verify(series[missing], cert)
        if not res.ok:
            raise InconsistentRelation(
                f"derived certificate for {missing} contradicts its series at index {res.first_failure}"
            )
    return cert


def total_degree(cert: RationalCertificate) -> int:
    return max(poly_degree(cert.num), 0) + poly_degree(cert.den)


def star_closure_check(
    f: RationalCertificate, g: RationalCertificate, order: int, margin: int = DEFAULT_MARGIN
) -> RationalCertificate | NotDetected:
    """Expand f and g, take their star product, and look for a certificate.

    Writing f, g as alphabets of total size df, dg, the star product has
    alphabets of total size df * dg, which bounds both degrees.
    """
    for cert in (f, g):
        if cert.num[:1] != (1,):
            raise InvalidArgument("star product needs series with constant term 1")
    bound = max(total_degree(f) * total_degree(g), 0)
    if 2 * bound + margin > order:
        raise InsufficientOrder(f"order {order} < 2*{bound} + {margin} needed for the product bound")
    prod = witt_mul(WittVector(f.series(order)), WittVector(g.series(order)))
    return detect_rational(prod.series, bound, margin)


# --- functional equation ----------------------------------------------------


@dataclass(frozen=True)
class FunctionalEquationResult:
    passed: bool
    residual: Poly  # coefficients of L(t) - q^g t^{2g} L(1/(qt)), low first, full length 2g+1

    def to_json(self) -> dict:
        return {"passed": self.passed, "residual": [format_rational(c) for c in self.residual]}


def functional_equation_check(L: Sequence[int], genus: int, q: int) -> FunctionalEquationResult:
    """Test L(t) = q^g t^{2g} L(1/(qt)), i.e. a_{2g-i} = q^{g-i} a_i."""
    if isinstance(q, bool) or not isinstance(q, int) or q < 2:
        raise InvalidArgument(f"q must be an integer >= 2, got {q!r}")
    a = check_lpoly(L, genus)
    g = genus
    residual = tuple(
        Fraction(a[i]) - Fraction(a[2 * g - i]) * Fraction(q) ** (i - g) for i in range(2 * g + 1)
    )
    return FunctionalEquationResult(all(r == 0 for r in residual), residual)

