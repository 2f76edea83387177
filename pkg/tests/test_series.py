from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sunpi.numbers import GaussianRational
from sunpi.precision import ctx_new
from sunpi.series import (
    HEADLINE,
    IV2,
    DivergentSeriesError,
    PiSeriesSpec,
    SeriesPoint,
    a_double,
    a_legendre,
    a_theta,
    converges_absolutely,
    eval_pi_series,
    row_ratio,
    t_poly,
)

from conftest import load_script

PT = SeriesPoint(Fraction(1, 480), 8)
# 30-term exact partial sum of A(1/480, 8), produced by scripts/brute_force_oracle.py
A30 = "0.94172578851202868610100892020010836676071585520674"


def test_convergence_predicate():
    c = converges_absolutely(Fraction(1, 480), 8)
    assert c.converges
    assert c.ratio == pytest.approx(64 / 225, rel=2e-3)
    assert converges_absolutely(0, 5) == (True, 0)
    assert not converges_absolutely(1, 1).converges
    with pytest.raises(ValueError):
        converges_absolutely(1, 0)


def test_x_zero(ctx60):
    assert a_double(SeriesPoint(0, 3), ctx60).approx == 1


def test_divergent_rejected(ctx60):
    with pytest.raises(DivergentSeriesError):
        a_double(SeriesPoint(1, 1), ctx60)
    with pytest.raises(DivergentSeriesError):
        a_legendre(SeriesPoint(1, 1), ctx60)


def test_oracle_script_reproduces_golden():
    oracle = load_script("brute_force_oracle")
    s_a, _ = oracle.partial_sums(30)
    assert oracle.to_decimal(s_a, 50) == A30


def test_against_exact_oracle(ctx120):
    oracle = load_script("brute_force_oracle")
    s_a, s_pi = oracle.partial_sums(130)
    mp = ctx120.mp
    a = a_double(PT, ctx120)
    # remainder after 130 terms is below 0.29^130 * C(260,130)-growth majorant < 1e-60
    assert abs(a.approx - mp.mpf(s_a.numerator) / s_a.denominator) < mp.mpf("1e-50")
    v = eval_pi_series(HEADLINE, ctx120)
    assert abs(v.approx - mp.mpf(s_pi.numerator) / s_pi.denominator) < mp.mpf("1e-50")


def test_headline_value(ctx120):
    v = eval_pi_series(HEADLINE, ctx120)
    assert abs(v.approx - 520 / ctx120.mp.pi) + v.err < ctx120.mp.mpf("1e-40")


def test_euler_weights_consistent(ctx60):
    # sum (a n + b) c_n x^n = b A + a theta_x A
    a, ax = a_double(PT, ctx60), a_theta(PT, "x", ctx60)
    v = eval_pi_series(HEADLINE, ctx60)
    assert abs((a * 233 + ax * 1054).approx - v.approx) < ctx60.tol * 10
    with pytest.raises(ValueError):
        a_theta(PT, "z", ctx60)


def test_theta_y_small_case(ctx60):
    # finite difference in y of A at a small point
    mp = ctx60.mp
    pt = SeriesPoint(Fraction(1, 100), Fraction(1, 2))
    ay = a_theta(pt, "y", ctx60).approx
    h = Fraction(1, 10**12)
    up = a_double(SeriesPoint(pt.x, pt.y + h), ctx60).approx
    dn = a_double(SeriesPoint(pt.x, pt.y - h), ctx60).approx
    fd = mp.mpf(1) / 2 * (up - dn) / (2 * mp.mpf(h.numerator) / h.denominator)
    assert abs(ay - fd) < mp.mpf("1e-20")


def test_legendre_form_headline(ctx120):
    a, l = a_double(PT, ctx120), a_legendre(PT, ctx120)
    assert abs(a.approx - l.approx) + a.err + l.err < ctx120.mp.mpf("1e-40")


def test_t_poly_against_legendre(ctx60):
    mp = ctx60.mp
    for b, c in ((62, 1), (3, 2), (-5, 7)):
        d = mp.sqrt(mp.mpf(b * b - 4 * c))
        for k in range(0, 12):
            lhs = t_poly(k, b, c)
            rhs = d**k * mp.legendre(k, b / d)
            assert abs(lhs - rhs) <= abs(rhs) * ctx60.tol * 1e10 + ctx60.tol


def test_t_poly_small():
    assert [t_poly(k, 1, 1) for k in range(6)] == [1, 1, 3, 7, 19, 51]
    with pytest.raises(ValueError):
        t_poly(-1, 1, 1)


def test_iv2_value(ctx120):
    v = eval_pi_series(IV2, ctx120)
    assert abs(v.approx - 120 / ctx120.mp.pi) + v.err < ctx120.mp.mpf("1e-40")


def test_pi_series_validation():
    with pytest.raises(ValueError):
        PiSeriesSpec(1, 1, Fraction(1, 480), 0, y=8)
    with pytest.raises(ValueError):
        PiSeriesSpec(1, 1, Fraction(1, 480), 1)
    with pytest.raises(DivergentSeriesError):
        eval_pi_series(PiSeriesSpec(1, 1, Fraction(1, 4), 1, "T_form", t_b=3, t_c=1), ctx_new(30))


def test_row_ratio():
    assert row_ratio(Fraction(1, 480), 8) == pytest.approx(16 * 9 / 480)


small = st.fractions(min_value=-1, max_value=1, max_denominator=50)


@settings(max_examples=20, deadline=None)
@given(small, small, st.fractions(min_value=-6, max_value=6, max_denominator=20), small)
def test_double_equals_legendre_random(xr, xi, yr, yi):
    x = GaussianRational(xr / 400, xi / 400)
    y = GaussianRational(yr, yi)
    assume(y and converges_absolutely(x, y).ratio < 0.6)
    ctx = ctx_new(50)
    pt = SeriesPoint(x, y)
    a, l = a_double(pt, ctx), a_legendre(pt, ctx)
    assert abs(a.approx - l.approx) <= a.err + l.err + ctx.tol


@settings(max_examples=20, deadline=None)
@given(small, st.fractions(min_value=-6, max_value=6, max_denominator=20))
def test_conjugation_symmetry(xr, yr):
    x, y = GaussianRational(xr / 50, xr / 70), GaussianRational(yr, 1)
    assume(converges_absolutely(x, y).ratio < 0.6)
    ctx = ctx_new(40)
    a = a_double(SeriesPoint(x, y), ctx).approx
    b = a_double(SeriesPoint(x, y).conjugate(), ctx).approx
    assert abs(a.conjugate() - b) < ctx.tol * 10


def test_theta_x_finite_difference(ctx120):
    mp = ctx120.mp
    h = Fraction(1, 10**25)
    up = a_double(SeriesPoint(PT.x * (1 + h), PT.y), ctx120).approx
    dn = a_double(SeriesPoint(PT.x * (1 - h), PT.y), ctx120).approx
    fd = (up - dn) / (2 * mp.mpf(h.numerator) / h.denominator)
    assert abs(a_theta(PT, "x", ctx120).approx - fd) < mp.mpf("1e-20")
