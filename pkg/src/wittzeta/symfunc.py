"""Symmetric functions in the power-sum basis.

A :class:`SymExpr` is a finite rational combination of power-sum products
p_lambda with every weight bounded by ``max_weight``.  The elementary basis
shows up only at the edges: :func:`p_to_e` / :func:`e_to_p` convert through
the Newton identities, and the universal polynomials are reported in it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import IntegralityViolation, InvalidArgument, WeightOverflow

Partition = tuple[int, ...]

DEFAULT_MAX_WEIGHT = 32


def make_partition(parts: Iterable[int]) -> Partition:
    ps = tuple(sorted(parts, reverse=True))
    if any(p <= 0 for p in ps):
        raise InvalidArgument(f"partition parts must be positive: {ps}")
    return ps


def partition_key(lam: Partition) -> tuple:
    """Weight first, then lexicographic on the parts: (1,1) < (2), (2,2) < (3,1)."""
    return (sum(lam), lam)


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n, sorted by :func:`partition_key`."""
    if n < 0:
        return ()
    out = []

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, n, ())
    return tuple(sorted(out, key=partition_key))


def z_lambda(lam: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type lam."""
    z = 1
    for part, mult in _multiplicities(lam).items():
        z *= part**mult * math.factorial(mult)
    return z


def _multiplicities(lam: Partition) -> dict[int, int]:
    m: dict[int, int] = {}
    for p in lam:
        m[p] = m.get(p, 0) + 1
    return m


def _merge(lam: Partition, mu: Partition) -> Partition:
    return tuple(sorted(lam + mu, reverse=True))


class SymExpr:
    """Immutable symmetric function sum c_lambda p_lambda of weight <= max_weight."""

    __slots__ = ("_terms", "max_weight")

    def __init__(self, terms: Mapping[Partition, Fraction | int], max_weight: int = DEFAULT_MAX_WEIGHT):
        if max_weight < 1:
            raise InvalidArgument("max_weight must be positive")
        clean: dict[Partition, Fraction] = {}
        for lam, c in terms.items():
            lam = make_partition(lam)
            c = Fraction(c)
            if c == 0:
                continue
            if sum(lam) > max_weight:
                raise WeightOverflow(f"term p{lam} has weight {sum(lam)} > {max_weight}")
            clean[lam] = clean.get(lam, Fraction(0)) + c
        object.__setattr__(self, "_terms", {k: v for k, v in clean.items() if v != 0})
        object.__setattr__(self, "max_weight", max_weight)

    def __setattr__(self, name, value):
        raise AttributeError("SymExpr is immutable")

    @property
    def terms(self) -> dict[Partition, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Partition, Fraction]]:
        for lam in sorted(self._terms, key=partition_key):
            yield lam, self._terms[lam]

    def degree(self) -> int:
        return max((sum(lam) for lam in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "SymExpr(0)"
        body = " + ".join(f"{c}*p{list(lam)}" for lam, c in self.items())
        return f"SymExpr({body})"

    def __add__(self, other: "SymExpr") -> "SymExpr":
        terms = dict(self._terms)
        for lam, c in other._terms.items():
            terms[lam] = terms.get(lam, Fraction(0)) + c
        return SymExpr(terms, max(self.max_weight, other.max_weight))

    def __neg__(self) -> "SymExpr":
        return SymExpr({lam: -c for lam, c in self._terms.items()}, self.max_weight)

    def __sub__(self, other: "SymExpr") -> "SymExpr":
        return self + (-other)

    def __mul__(self, other) -> "SymExpr":
        if isinstance(other, SymExpr):
            return sym_mul(self, other)
        c = Fraction(other)
        return SymExpr({lam: c * v for lam, v in self._terms.items()}, self.max_weight)

    __rmul__ = __mul__

    def __call__(self, inner: "SymExpr") -> "SymExpr":
        return plethysm(self, inner)

    def evaluate_power_sums(self, power_sum) -> Fraction:
        """Evaluate with p_k replaced by ``power_sum(k)``."""
        cache: dict[int, Fraction] = {}
        total = Fraction(0)
        for lam, c in self._terms.items():
            v = c
            for k in lam:
                if k not in cache:
                    cache[k] = Fraction(power_sum(k))
                v *= cache[k]
            total += v
        return total

    def evaluate(self, alphabet: Sequence[Fraction | int]) -> Fraction:
        """Specialize to a finite alphabet of rational letters."""
        letters = [Fraction(x) for x in alphabet]
        return self.evaluate_power_sums(lambda k: sum((x**k for x in letters), Fraction(0)))


def p(k: int, max_weight: int = DEFAULT_MAX_WEIGHT) -> SymExpr:
    if k == 0:
        return one(max_weight)
    return SymExpr({(k,): 1}, max(max_weight, k))


def one(max_weight: int = DEFAULT_MAX_WEIGHT) -> SymExpr:
    return SymExpr({(): 1}, max_weight)


def e(n: int, max_weight: int = DEFAULT_MAX_WEIGHT) -> SymExpr:
    """Elementary e_n = sum over lambda |- n of sign(lambda) p_lambda / z_lambda."""
    return SymExpr(
        {lam: Fraction((-1) ** (n - len(lam)), z_lambda(lam)) for lam in partitions(n)},
        max(max_weight, n, 1),
    )


def h(n: int, max_weight: int = DEFAULT_MAX_WEIGHT) -> SymExpr:
    """Complete homogeneous h_n = sum over lambda |- n of p_lambda / z_lambda."""
    return SymExpr({lam: Fraction(1, z_lambda(lam)) for lam in partitions(n)}, max(max_weight, n, 1))


def sym_mul(f: SymExpr, g: SymExpr) -> SymExpr:
    """Product p_lambda p_mu = p_(lambda u mu); terms above the weight cap are dropped."""
    cap = min(f.max_weight, g.max_weight)
    terms: dict[Partition, Fraction] = {}
    for lam, a in f._terms.items():
        for mu, b in g._terms.items():
            if sum(lam) + sum(mu) > cap:
                continue
            nu = _merge(lam, mu)
            terms[nu] = terms.get(nu, Fraction(0)) + a * b
    return SymExpr(terms, cap)


def _adams(g: SymExpr, k: int, cap: int) -> dict[Partition, Fraction]:
    # p_k[g]: every p_j in g becomes p_{jk}
    out = {}
    for lam, c in g._terms.items():
        w = k * sum(lam)
        if w > cap:
            raise WeightOverflow(f"plethysm needs weight {w} > cap {cap}")
        out[tuple(k * part for part in lam)] = c
    return out


def plethysm(f: SymExpr, g: SymExpr) -> SymExpr:
    """f[g], raising WeightOverflow instead of truncating."""
    cap = min(f.max_weight, g.max_weight)
    adams_cache: dict[int, dict[Partition, Fraction]] = {}
    result: dict[Partition, Fraction] = {}
    for lam, c in f._terms.items():
        acc: dict[Partition, Fraction] = {(): c}
        for k in lam:
            if k not in adams_cache:
                adams_cache[k] = _adams(g, k, cap)
            nxt: dict[Partition, Fraction] = {}
            for mu, a in acc.items():
                for nu, b in adams_cache[k].items():
                    if sum(mu) + sum(nu) > cap:
                        raise WeightOverflow(f"plethysm needs weight > cap {cap}")
                    key = _merge(mu, nu)
                    nxt[key] = nxt.get(key, Fraction(0)) + a * b
            acc = nxt
        for mu, a in acc.items():
            result[mu] = result.get(mu, Fraction(0)) + a
    return SymExpr(result, cap)


# --- elementary basis -------------------------------------------------------

EPoly = dict  # Partition -> Fraction, meaning sum c_lambda e_lambda


def _epoly_mul(a: Mapping[Partition, Fraction], b: Mapping[Partition, Fraction]) -> dict:
    out: dict[Partition, Fraction] = {}
    for lam, x in a.items():
        for mu, y in b.items():
            nu = _merge(lam, mu)
            out[nu] = out.get(nu, Fraction(0)) + x * y
    return {k: v for k, v in out.items() if v != 0}


@lru_cache(maxsize=None)
def _power_sum_in_e(n: int) -> tuple[tuple[Partition, Fraction], ...]:
    # p_n = sum_{i=1}^{n-1} (-1)^{i-1} e_i p_{n-i} + (-1)^{n-1} n e_n
    acc: dict[Partition, Fraction] = {(n,): Fraction((-1) ** (n - 1) * n)}
    for i in range(1, n):
        sign = (-1) ** (i - 1)
        for lam, c in _epoly_mul({(i,): Fraction(sign)}, dict(_power_sum_in_e(n - i))).items():
            acc[lam] = acc.get(lam, Fraction(0)) + c
    return tuple(sorted(((k, v) for k, v in acc.items() if v != 0), key=lambda kv: partition_key(kv[0])))


@lru_cache(maxsize=None)
def _power_product_in_e(lam: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    acc: dict[Partition, Fraction] = {(): Fraction(1)}
    for k in lam:
        acc = _epoly_mul(acc, dict(_power_sum_in_e(k)))
    return tuple(acc.items())


def p_to_e(f: SymExpr) -> dict[Partition, Fraction]:
    """Rewrite a power-sum expression as a polynomial in e_1, e_2, ..."""
    out: dict[Partition, Fraction] = {}
    for lam, c in f._terms.items():
        for mu, a in _power_product_in_e(lam):
            out[mu] = out.get(mu, Fraction(0)) + c * a
    return {k: v for k, v in out.items() if v != 0}


def e_to_p(poly: Mapping[Partition, Fraction | int], max_weight: int = DEFAULT_MAX_WEIGHT) -> SymExpr:
    """Expand sum c_lambda e_lambda in power sums."""
    total = SymExpr({}, max_weight)
    for lam, c in poly.items():
        lam = make_partition(lam)
        if sum(lam) > max_weight:
            raise WeightOverflow(f"e{list(lam)} has weight {sum(lam)} > {max_weight}")
        term = one(max_weight) * Fraction(c)
        for k in lam:
            term = sym_mul(term, e(k, max_weight))
        total = total + term
    return total


def newton_convert(f, direction: str, max_weight: int = DEFAULT_MAX_WEIGHT):
    """Convert between the power-sum and elementary bases.

    ``direction`` is ``"p-to-e"`` (SymExpr -> {partition: coeff}) or
    ``"e-to-p"`` ({partition: coeff} -> SymExpr).
    """
    if direction == "p-to-e":
        return p_to_e(f)
    if direction == "e-to-p":
        return e_to_p(f, max_weight)
    raise InvalidArgument(f"unknown direction {direction!r}")


# --- universal polynomials --------------------------------------------------


@dataclass(frozen=True)
class UniversalPoly:
    """Integer polynomial in one or two families of elementary variables.

    ``terms`` maps a tuple of partitions (one per family) to its coefficient;
    partition (2, 1, 1) in family ``e`` stands for e1^2*e2.
    """

    families: tuple[str, ...]
    nvars: int
    terms: tuple[tuple[tuple[Partition, ...], int], ...]

    def coefficient(self, *parts: Partition) -> int:
        key = tuple(make_partition(lam) for lam in parts)
        for k, c in self.terms:
            if k == key:
                return c
        return 0

    def variables(self) -> list[str]:
        return [f"{fam}{i}" for fam in self.families for i in range(1, self.nvars + 1)]

    def exponents(self, key: tuple[Partition, ...]) -> list[int]:
        vec = []
        for lam in key:
            mult = _multiplicities(lam)
            vec.extend(mult.get(i, 0) for i in range(1, self.nvars + 1))
        return vec

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for key, c in self.terms:
            factors = []
            for fam, lam in zip(self.families, key):
                mult = _multiplicities(lam)
                for i in sorted(mult):
                    factors.append(f"{fam}{i}" if mult[i] == 1 else f"{fam}{i}^{mult[i]}")
            mono = "*".join(factors)
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(("+ " if c > 0 else "- ") + body)
        return " ".join(chunks)

    def to_json(self) -> dict:
        return {
            "variables": self.variables(),
            "text": self.to_text(),
            "coefficients": {
                ",".join(map(str, self.exponents(key))): c for key, c in self.terms
            },
        }

    def evaluate(self, *values: Sequence[Fraction | int]) -> Fraction:
        """Evaluate with ``values[j][i-1]`` substituted for variable i of family j."""
        total = Fraction(0)
        for key, c in self.terms:
            v = Fraction(c)
            for vals, lam in zip(values, key):
                for k in lam:
                    v *= Fraction(vals[k - 1]) if k <= len(vals) else 0
            total += v
        return total


def _integral_terms(raw: Mapping[tuple[Partition, ...], Fraction], what: str):
    items = []
    for key, c in raw.items():
        if c == 0:
            continue
        if c.denominator != 1:
            raise IntegralityViolation(f"{what} has non-integer coefficient {c} at {key}")
        items.append((key, int(c)))
    items.sort(key=lambda kv: tuple(partition_key(lam) for lam in kv[0]))
    return tuple(items)


@lru_cache(maxsize=None)
def universal_product_poly(n: int) -> UniversalPoly:
    """P_n with e_n(x*y) = P_n(e(x); f(y)), where f_i = e_i(y).

    Uses p_k(xy) = p_k(x) p_k(y), so e_n(xy) = sum sign/z * p_lambda(x) p_lambda(y).
    """
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    raw: dict[tuple[Partition, Partition], Fraction] = {}
    for lam in partitions(n):
        c = Fraction((-1) ** (n - len(lam)), z_lambda(lam))
        ex = _power_product_in_e(lam)
        for mu, a in ex:
            for nu, b in ex:
                key = (mu, nu)
                raw[key] = raw.get(key, Fraction(0)) + c * a * b
    return UniversalPoly(("e", "f"), n, _integral_terms(raw, f"P_{n}"))


@lru_cache(maxsize=None)
def universal_composition_poly(m: int, n: int) -> UniversalPoly:
    """P_{m,n} with e_m(alphabet of n-fold products) = P_{m,n}(e_1..e_{mn})."""
    if m < 1 or n < 1:
        raise InvalidArgument("m and n must be >= 1")
    w = m * n
    composed = plethysm(e(m, w), e(n, w))
    raw = {(lam,): c for lam, c in p_to_e(composed).items()}
    return UniversalPoly(("e",), w, _integral_terms(raw, f"P_{{{m},{n}}}"))
