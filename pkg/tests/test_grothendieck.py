from __future__ import annotations

import random
import warnings
from fractions import Fraction

import pytest

from oracles import alphabet_series, conv, effective_zero_cycles, geometric, naive_exp
from wittzeta.errors import BadLPolynomial, InsufficientData, InvalidArgument, NonIntegralClosedPoints
from wittzeta.grothendieck import (
    ClassExpr,
    CountingMeasure,
    affine,
    closed_point_counts,
    curve,
    curve_ghost_from_lpoly,
    custom,
    measure_ghost,
    point,
    projective,
    suspend,
    sym_power_count,
    torus,
    triangle_check,
    zeta_sym,
    zeta_wedge,
)
from wittzeta.series import TruncatedSeries, series_inv, series_scale_t
from wittzeta.witt import witt_mul

C = ClassExpr.of
S = TruncatedSeries


def mu(q, order):
    return CountingMeasure(q, order)


def random_class(rng, effective=False):
    atoms = [point(), affine(1), affine(2), projective(1), projective(2), torus(), point(2)]
    x = ClassExpr.scalar(0)
    for _ in range(rng.randint(1, 3)):
        coeff = rng.randint(1, 3) if effective else rng.choice([-2, -1, 1, 2, 3])
        mono = C(rng.choice(atoms))
        if rng.random() < 0.3:
            mono = mono * rng.choice(atoms)
        x = x + coeff * mono
    return x


def test_measure_affine_line():
    assert measure_ghost(affine(1), mu(2, 5)) == (2, 4, 8, 16, 32)


@pytest.mark.parametrize("q", [2, 3, 7])
def test_measure_projective_line(q):
    assert measure_ghost(projective(1), mu(q, 6)) == tuple(q**m + 1 for m in range(1, 7))


@pytest.mark.parametrize("q", [2, 5])
def test_measure_product_rule(q):
    x = C(projective(1)) * projective(1)
    assert measure_ghost(x, mu(q, 6)) == tuple((q**m + 1) ** 2 for m in range(1, 7))


def test_measure_torus_point():
    assert measure_ghost(torus(), mu(3, 3)) == (2, 8, 26)
    assert measure_ghost(point(), mu(3, 3)) == (1, 1, 1)
    assert measure_ghost(point(2), mu(3, 4)) == (0, 2, 0, 2)


def test_measure_homomorphism_random():
    rng = random.Random(21)
    m = mu(3, 6)
    for _ in range(30):
        x, y = random_class(rng), random_class(rng)
        gx, gy = measure_ghost(x, m), measure_ghost(y, m)
        assert measure_ghost(x + y, m) == tuple(a + b for a, b in zip(gx, gy))
        assert measure_ghost(x * y, m) == tuple(a * b for a, b in zip(gx, gy))


def test_curve_genus_zero_is_projective_line():
    m = mu(5, 6)
    assert curve_ghost_from_lpoly([1], 0, m) == measure_ghost(projective(1), m)


def test_curve_first_count():
    assert curve_ghost_from_lpoly([1, -2, 5], 1, mu(5, 3))[0] == 4


def test_curve_second_count():
    assert curve_ghost_from_lpoly([1, 0, 2], 1, mu(2, 2))[1] == 9


def test_curve_counts_match_root_power_sums():
    # 1 - 2t + 5t^2 has inverse roots 1 +- 2i, so s_m = 2 Re (1+2i)^m
    N = 8
    z = complex(1, 2)
    expected = tuple(5**m + 1 - round(2 * (z**m).real) for m in range(1, N + 1))
    assert curve_ghost_from_lpoly([1, -2, 5], 1, mu(5, N)) == expected


@pytest.mark.parametrize("L,g", [([1, 2], 1), ([2, 0, 5], 1), ([1, -2, 5], 2), (["1/2", 1, 5], 1)])
def test_bad_lpoly(L, g):
    with pytest.raises(BadLPolynomial):
        curve(L, g)


def test_weil_mismatch_is_a_warning():
    with pytest.warns(UserWarning):
        measure_ghost(curve([1, -2, 7], 1), mu(5, 2))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        measure_ghost(curve([1, -2, 5], 1), mu(5, 2))


def test_custom_atom():
    assert measure_ghost(custom([3, 9, 27]), mu(3, 3)) == (3, 9, 27)
    with pytest.raises(InsufficientData):
        measure_ghost(custom([3, 9]), mu(3, 3))


def test_measure_rejects_small_q():
    with pytest.raises(InvalidArgument):
        CountingMeasure(1, 4)


def test_zeta_point():
    assert zeta_sym(point(), mu(2, 6)).series == S([1] * 7)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_zeta_affine_line(q):
    N = 7
    assert list(zeta_sym(affine(1), mu(q, N)).coeffs) == [q**n for n in range(N + 1)]
    assert list(zeta_sym(affine(1), mu(q, N)).coeffs) == naive_exp([0] + [Fraction(q**m, m) for m in range(1, N + 1)], N)


@pytest.mark.parametrize("q", [2, 4])
def test_zeta_projective_line(q):
    N = 8
    oracle = naive_exp([0] + [Fraction(q**m + 1, m) for m in range(1, N + 1)], N)
    got = list(zeta_sym(projective(1), mu(q, N)).coeffs)
    assert got == oracle
    assert got == conv(geometric(1, N), geometric(q, N), N)


def test_zeta_curve_is_rational():
    # Z = L / ((1-t)(1-qt))
    N, q = 8, 5
    L = [1, -2, 5]
    got = zeta_sym(curve(L, 1), mu(q, N)).series
    expected = S.from_polynomial(L, N) * series_inv(S.from_polynomial([1, -1 - q, q], N))
    assert got == expected


def test_wedge_point():
    assert zeta_wedge(point(), mu(2, 5)).series == S.from_polynomial([1, 1], 5)


def test_wedge_two_points():
    assert zeta_wedge(2 * C(point()), mu(2, 5)).series == S.from_polynomial([1, 2, 1], 5)


def test_wedge_negative_point():
    assert zeta_wedge(-C(point()), mu(2, 5)).series == series_inv(S.from_polynomial([1, 1], 5))


def test_opposite_identity_random():
    rng = random.Random(22)
    for _ in range(50):
        x = random_class(rng)
        m = mu(rng.choice([2, 3, 4, 5]), 6)
        wedge = zeta_wedge(x, m).series
        sym_neg = series_scale_t(zeta_sym(x, m).series, -1)
        assert wedge * sym_neg == S.one(6)


def test_closed_points_point():
    assert closed_point_counts(point(), mu(2, 5)).counts == (1, 0, 0, 0, 0)


def test_closed_points_affine_line():
    assert closed_point_counts(affine(1), mu(2, 2)).counts == (2, 1)


def test_closed_points_torus():
    assert closed_point_counts(torus(), mu(2, 2)).counts == (1, 1)


def test_closed_points_irreducible_polynomials():
    # closed points of A^1 are monic irreducibles: 2, 1, 2, 3, 6, 9 over F_2
    assert closed_point_counts(affine(1), mu(2, 6)).counts == (2, 1, 2, 3, 6, 9)


def test_closed_points_euler_product():
    # zeta = prod_d (1 - t^d)^{-M_d}
    N = 6
    x = C(projective(2)) + torus()
    m = mu(3, N)
    counts = closed_point_counts(x, m).counts
    prod = S.one(N)
    for d, M in enumerate(counts, start=1):
        factor = S([1 if k % d == 0 else 0 for k in range(N + 1)])
        for _ in range(int(M)):
            prod = prod * factor
    assert prod == zeta_sym(x, m).series


def test_closed_points_virtual_flagged_not_raised():
    x = -C(point()) + affine(1)
    res = closed_point_counts(x, mu(2, 3))
    assert res.counts == (1, 1, 2)
    v = C(torus()) - affine(1)
    res = closed_point_counts(v, mu(2, 2))
    assert not res.integral and res.first_bad_degree() == 1


def test_closed_points_effective_raises():
    with pytest.raises(NonIntegralClosedPoints):
        # M_2 = (2 - 1)/2
        closed_point_counts(ClassExpr.of(custom([1, 2])).with_effective(), mu(2, 2))


def test_closed_points_max_degree():
    assert closed_point_counts(affine(1), mu(2, 2), max_degree=4).counts == (2, 1, 2, 3)


def test_sym_count_three_points():
    assert sym_power_count(3 * C(point()), mu(2, 4), 2) == 6
    assert sym_power_count(3 * C(point()), mu(2, 4), 2) == effective_zero_cycles([1, 1, 1], 2)


def test_sym_count_affine_plane():
    assert sym_power_count(affine(2), mu(2, 3), 3) == 64


def test_sym_count_degree_zero():
    rng = random.Random(23)
    for _ in range(5):
        assert sym_power_count(random_class(rng), mu(3, 4), 0) == 1


def test_sym_count_range():
    with pytest.raises(InvalidArgument):
        sym_power_count(point(), mu(2, 3), 4)


@pytest.mark.parametrize("degrees", [[1], [2, 3], [1, 2], [1, 1, 3], [2, 2, 4]])
def test_zero_dimensional_oracle(degrees):
    N = 6
    x = ClassExpr.scalar(0)
    for d in degrees:
        x = x + point(d)
    m = mu(3, N)
    expected = S.one(N)
    for d in degrees:
        expected = expected * series_inv(S([1] + [0] * (d - 1) + [-1] + [0] * (N - d)) if d <= N else S.one(N))
    assert zeta_sym(x, m).series == expected
    for n in range(N + 1):
        assert sym_power_count(x, m, n) == effective_zero_cycles(degrees, n)


def test_effectivity_property():
    rng = random.Random(24)
    for _ in range(30):
        x = random_class(rng, effective=True).with_effective()
        m = mu(rng.choice([2, 3, 5]), 6)
        for n in range(7):
            c = sym_power_count(x, m, n)
            assert c.denominator == 1 and c >= 0
        assert closed_point_counts(x, m).integral


def test_special_structure_on_products():
    rng = random.Random(25)
    atoms = [point(), affine(1), projective(1), torus(), projective(2), curve([1, -2, 5], 1)]
    m = mu(5, 8)
    for _ in range(10):
        a, b = rng.choice(atoms), rng.choice(atoms)
        assert zeta_sym(C(a) * b, m) == witt_mul(zeta_sym(a, m), zeta_sym(b, m))


def test_triangle_scissor_line():
    report = triangle_check(affine(1), projective(1), point(), mu(3, 10))
    assert report.passed
    assert [c.name for c in report.checks] == ["ghost_additivity", "zeta_product", "kunneth_coefficients"]


def test_triangle_scissor_plane():
    assert triangle_check(affine(2), projective(2), projective(1), mu(3, 8)).passed


@pytest.mark.parametrize("q", [3, 5])
def test_triangle_corrupted(q):
    report = triangle_check(affine(1), projective(1), torus(), mu(q, 8))
    assert not report.passed
    assert all(not c.passed for c in report.checks)
    assert report.checks[0].first_failure == 1
    assert report.checks[1].first_failure == 1
    assert report.checks[2].first_failure == 1


def test_triangle_json():
    data = triangle_check(affine(1), projective(1), point(), mu(2, 3)).to_json()
    assert data["passed"] is True
    assert data["checks"][0] == {"name": "ghost_additivity", "passed": True, "first_failure": None}


def test_suspend_point():
    assert zeta_sym(suspend(point()), mu(2, 5)).series == S.from_polynomial([1, -1], 5)


def test_suspend_involution():
    rng = random.Random(26)
    for _ in range(10):
        x = random_class(rng)
        assert suspend(suspend(x)) == x


def test_suspend_projective_line():
    q = 3
    assert zeta_sym(suspend(projective(1)), mu(q, 5)).series == S.from_polynomial([1, -1 - q, q], 5)


def test_suspend_inverts_zeta():
    rng = random.Random(27)
    for _ in range(10):
        x = random_class(rng)
        m = mu(2, 6)
        assert zeta_sym(suspend(x), m).series == series_inv(zeta_sym(x, m).series)


def test_class_canonical_form():
    x = C(affine(1)) + point() - affine(1)
    assert x == C(point())
    assert C(affine(1)) - affine(1) == ClassExpr.scalar(0)
    assert str(C(projective(1)) * projective(1) - 2 * C(point())) == "-2*pt + P(1)*P(1)"


def test_alphabet_reading_of_zeta():
    # P^2 over F_q is the alphabet {1, q, q^2}
    q, N = 2, 6
    assert list(zeta_sym(projective(2), mu(q, N)).coeffs) == alphabet_series([1, q, q * q], N)
