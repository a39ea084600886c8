from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_exp
from wittzeta.errors import InvalidArgument, NonzeroConstantTerm, ParseError, ZeroConstantTerm
from wittzeta.series import (
    OneUnit,
    TruncatedSeries,
    parse_rational,
    rational_function_series,
    series_add,
    series_exp,
    series_inv,
    series_log,
    series_mul,
    series_scale_t,
)

S = TruncatedSeries


def poly(*cs, order=None):
    return S.from_polynomial(cs, len(cs) - 1 if order is None else order)


small_ints = st.integers(min_value=-5, max_value=5)
series8 = st.lists(small_ints, min_size=9, max_size=9).map(S)
one_units8 = st.lists(small_ints, min_size=8, max_size=8).map(lambda cs: OneUnit([1] + cs))


def test_add_cancellation():
    assert poly(1, 1) + poly(1, -1) == poly(2, 0)


def test_add_zero_identity():
    f = S([1, -2, "1/3"])
    assert f + S.zero(2) == f


def test_mixed_orders_truncate_to_smaller():
    assert series_add(S.one(5), S.one(3)).order == 3
    assert series_mul(S.one(5), S.one(3)).order == 3


def test_mul_difference_of_squares():
    assert poly(1, 1, order=2) * poly(1, -1, order=2) == poly(1, 0, -1)


def test_mul_unit():
    f = S([2, 3, "-1/2", 7])
    assert f * S.one(3) == f


def test_geometric_times_one_minus_t():
    N = 10
    geo = S([1] * (N + 1))
    assert geo * poly(1, -1, order=N) == S.one(N)


def test_inv_geometric():
    assert series_inv(poly(1, -1, order=6)) == S([1] * 7)
    assert series_inv(S.one(4)) == S.one(4)


def test_inv_zero_constant_raises():
    with pytest.raises(ZeroConstantTerm):
        series_inv(S([0, 1, 2]))


def test_inv_roundtrip_random():
    rng = random.Random(7)
    for _ in range(20):
        f = OneUnit([1] + [rng.randint(-9, 9) for _ in range(8)])
        assert series_inv(series_inv(f)) == f


def test_exp_of_t():
    assert series_exp(poly(0, 1, order=3)) == S([1, 1, "1/2", "1/6"])


def test_exp_zero():
    assert series_exp(S.zero(5)) == S.one(5)


def test_exp_matches_naive_oracle():
    f = [0, 1, 1, 0, 0]
    got = series_exp(S(f))
    assert got[2] == Fraction(3, 2)
    assert list(got) == naive_exp(f, 4)


def test_exp_rejects_constant():
    with pytest.raises(NonzeroConstantTerm):
        series_exp(S([1, 1]))


def test_log_of_one_plus_t():
    assert series_log(poly(1, 1, order=3)) == S([0, 1, "-1/2", "1/3"])


def test_log_one():
    assert series_log(S.one(6)) == S.zero(6)


def test_log_geometric_is_harmonic():
    N = 9
    assert series_log(series_inv(poly(1, -1, order=N))) == S([0] + [Fraction(1, n) for n in range(1, N + 1)])


def test_log_rejects_non_unit():
    with pytest.raises(NonzeroConstantTerm):
        series_log(S([2, 1]))


def test_scale():
    assert series_scale_t(poly(1, 1, 1), -1) == poly(1, -1, 1)
    f = S([3, "1/2", -4, 5])
    assert series_scale_t(f, 1) == f
    assert series_scale_t(series_scale_t(f, 2), Fraction(1, 2)) == f


def test_one_unit_invariant():
    with pytest.raises(InvalidArgument):
        OneUnit([2, 1])


def test_rational_function_series():
    # 1/((1-t)(1-2t)) has coefficients 2^{n+1} - 1
    got = rational_function_series([1], [1, -3, 2], 6)
    assert list(got) == [2 ** (n + 1) - 1 for n in range(7)]


@pytest.mark.parametrize("text,value", [("3", 3), ("-1/2", Fraction(-1, 2)), ("+4/6", Fraction(2, 3)), ("−1/3", Fraction(-1, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1.5", "1e3", "1/0", "1/-2", "", "a", "1 / 2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_json_roundtrip():
    f = S([1, "-1/2", "1/3"])
    data = json.loads(json.dumps(f.to_json()))
    assert data == {"order": 2, "coeffs": ["1", "-1/2", "1/3"]}
    assert S.from_json(data) == f
    assert S.from_json(["1", "-1/2", "1/3"]) == f


def test_json_rejects_floats_and_bad_order():
    with pytest.raises(ParseError):
        S.from_json([1, 0.5])
    with pytest.raises(ParseError):
        S.from_json({"order": 3, "coeffs": ["1"]})


def test_immutable():
    f = S([1, 2])
    with pytest.raises(AttributeError):
        f._coeffs = (Fraction(0),)


@settings(max_examples=60, deadline=None)
@given(series8, series8, series8)
def test_ring_axioms(f, g, h):
    zero, one = S.zero(8), S.one(8)
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + zero == f and f * one == f
    assert f + (-f) == zero


@settings(max_examples=100, deadline=None)
@given(one_units8)
def test_inverse_roundtrip(f):
    assert f * series_inv(f) == S.one(8)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=10, max_size=10))
def test_exp_log_inverse(cs):
    f = S([0] + cs)
    assert series_log(series_exp(f)) == f
    u = OneUnit([1] + cs)
    assert series_exp(series_log(u)) == u


@settings(max_examples=40, deadline=None)
@given(series8)
def test_negative_scaling_is_involution(f):
    assert series_scale_t(series_scale_t(f, -1), -1) == f
