"""Reference values and small invariants for each module."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from sunpi.harness.pipeline import S2_POLY
from sunpi.harness.registry import load_registry
from sunpi.harness.pipeline import modular_pair
from sunpi.modular import (
    TAU0,
    AlphaBeta,
    e2_inversion_residual,
    e2_tau0_chain,
    g_from_beta,
    modular_eq2,
    modular_eq5_residual,
    multiplier5,
    r_p,
    r_p_definition,
    tau_from_modulus,
)
from sunpi.precision import (
    BoundedValue,
    GeometricTailModel,
    Verdict,
    bounded_eq,
    ctx_new,
    sum_with_tail,
)
from sunpi.recognition import IntPolynomial, RecognitionBudget, poly_residual, recognize_min_poly, verify_zero
from sunpi.series import (
    HEADLINE,
    PiSeriesSpec,
    SeriesPoint,
    a_double,
    a_theta,
    converges_absolutely,
    eval_pi_series,
    t_poly,
)
from sunpi.special import e2, eta, hyp_F, hyp_FG, hyp_G, legendre_values, modulus_k, modulus_kprime, theta
from sunpi.wz import XYPair, _newton, relations_residual, solve_xy, symmetry_orbit, wz_product

PT = SeriesPoint(Fraction(1, 480), 8)


@pytest.fixture(scope="module")
def c100():
    return ctx_new(100)


# precision ------------------------------------------------------------------

def test_context_examples():
    assert ctx_new(100).tol == ctx_new(100).mp.mpf("1e-50")
    assert ctx_new(40).tol == ctx_new(40).mp.mpf("1e-20")
    with pytest.raises(ValueError):
        ctx_new(10)


def test_zero_series_and_half_powers(c100):
    z = sum_with_tail(lambda k: 0, GeometricTailModel(0.5, 0), c100)
    assert z.approx == 0 and z.err == 0
    s = sum_with_tail(lambda k: c100.mp.mpf(2) ** -k, GeometricTailModel(0.5, 0), c100)
    assert abs(s.approx - 2) <= s.err and s.err < c100.tol


def test_exp_one_by_factorial_tail(c100):
    mp = c100.mp
    # 1/k! decays faster than any ratio from k = 4 on: (1/(k+1)) <= 1/5
    s = sum_with_tail(lambda k: 1 / mp.factorial(k), GeometricTailModel(mp.mpf(1) / 5, 4), c100)
    assert abs(s.approx - mp.e) <= s.err + c100.tol / 100


def test_bounded_eq_examples():
    assert bounded_eq(BoundedValue(1, 1e-60), BoundedValue(1, 1e-60), 1e-40) is Verdict.VERIFIED
    assert bounded_eq(BoundedValue(1, 0), BoundedValue(2, 0), 1e-40) is Verdict.REFUTED
    a, b = BoundedValue(1, 1e-3), BoundedValue(1 + 1e-5, 1e-3)
    assert bounded_eq(a, b, 1e-6) is Verdict.INCONCLUSIVE
    assert bounded_eq(a, b, 1e-6) is bounded_eq(b, a, 1e-6)


def test_summation_is_deterministic(c100):
    a = eval_pi_series(HEADLINE, c100)
    b = eval_pi_series(HEADLINE, ctx_new(100))
    assert a.approx == b.approx and a.err == b.err


# special functions ------------------------------------------------------------

def test_G_finite_difference_at_half(c100):
    mp = c100.mp
    h = mp.mpf(10) ** -20
    a = mp.mpf("0.5")
    fd = a * (hyp_F(a + h, c100).approx - hyp_F(a - h, c100).approx) / (2 * h)
    assert abs(hyp_G(a, c100).approx - fd) < mp.mpf("1e-30")
    assert hyp_G(0, c100).approx == 0


def test_leading_terms_at_50i(c100):
    mp = c100.mp
    tau = mp.mpc(0, 50)
    assert abs(theta(3, tau, c100).approx - 1) < mp.mpf("1e-60")
    q24 = mp.expjpi(2 * tau / 24)
    assert abs(eta(tau, c100).approx / q24 - 1) < mp.mpf("1e-60")
    assert abs(e2(tau, c100).approx - 1) < mp.mpf("1e-60")


def test_pythagorean_on_20_random_tau(c100):
    mp = c100.mp
    rng = random.Random(7)
    for _ in range(20):
        tau = mp.mpc(mp.mpf(rng.uniform(-1, 1)), mp.mpf(rng.uniform(0.5, 3)))
        assert abs(modulus_k(tau, c100).approx ** 2 + modulus_kprime(tau, c100).approx ** 2 - 1) < mp.mpf("1e-40")


def test_legendre_closed_forms(c100):
    mp = c100.mp
    for z in (Fraction(1, 3), Fraction(-7, 5), Fraction(22, 7)):
        exact = [1, z, (3 * z**2 - 1) / 2, (5 * z**3 - 3 * z) / 2, (35 * z**4 - 30 * z**2 + 3) / 8]
        got = legendre_values(4, mp.mpf(z.numerator) / z.denominator, c100)
        for g, e in zip(got, exact):
            assert abs(g - mp.mpf(e.numerator) / e.denominator) < c100.tol


# series ----------------------------------------------------------------------

def test_trivial_series_values(c100):
    assert a_theta(SeriesPoint(0, 2), "x", c100).approx == 0
    assert eval_pi_series(PiSeriesSpec(0, 0, Fraction(1, 480), 520, y=8), c100).approx == 0


def test_t2_62_1(c100):
    assert t_poly(2, 62, 1) == 62**2 + 2
    mp = c100.mp
    d = mp.sqrt(62**2 - 4)
    assert abs(t_poly(2, 62, 1) - d**2 * mp.legendre(2, 62 / d)) < c100.tol


def test_convergence_reduction():
    rng = random.Random(3)
    for _ in range(50):
        x = (Fraction(rng.randint(-50, 50), rng.randint(50, 5000)), Fraction(rng.randint(-50, 50), rng.randint(50, 5000)))
        y = (Fraction(rng.randint(-50, 50), rng.randint(1, 9)), Fraction(rng.randint(1, 50), rng.randint(1, 9)))
        xa, ya = abs(complex(*map(float, x))), abs(complex(*map(float, y)))
        a = converges_absolutely(x, y)
        b = converges_absolutely((0, Fraction(xa).limit_denominator(10**12)), (0, Fraction(ya).limit_denominator(10**12)))
        assert a.ratio == pytest.approx(b.ratio, rel=1e-9)


# wz bridge ---------------------------------------------------------------------

def test_relations_trivial_and_printed(c100):
    mp = c100.mp
    r = relations_residual(XYPair(mp.mpf("0.3"), mp.mpf("0.3")), SeriesPoint(0, 1), c100)
    assert r.r1 == 0 and r.r2 == 0
    printed = XYPair(mp.mpc("0.57884718", "-0.81543604"), mp.mpc("0.99999998", "-0.00021224"))
    assert relations_residual(printed, PT, c100).worst < 1e-6
    X, Y = _newton(printed.X, printed.Y, PT, c100)
    assert relations_residual(XYPair(X, Y), PT, c100).worst < mp.mpf("1e-80")


def test_orbit_of_one_one():
    orbit = symmetry_orbit(XYPair(1, 1))
    assert any(q.X == 0 and q.Y == 0 for q in orbit)
    assert all(not (q.X == 1 and q.Y == 1) or q is orbit[0] for q in orbit)


def test_orbit_contains_tau1_pair(c100):
    mp = c100.mp
    t = TAU0.value(mp)
    pair = XYPair(modulus_kprime(t, c100).approx, modulus_kprime(5 * t, c100).approx)
    orbit = symmetry_orbit(pair, include_conjugate=True)
    target = (mp.mpc(0, "0.000106121305"), mp.mpc(0, "0.51647560"))
    assert any(abs(q.X - target[0]) < 1e-11 and abs(q.Y - target[1]) < 1e-8 for q in orbit)
    # negation, swap and conjugation preserve the product (A is real here); inversion
    # and the twist do not, so exactly one class of 8 matches A
    a = a_double(PT, c100).approx
    matching = [q for q in orbit if _matches(q, a, c100)]
    assert len(matching) == 8
    assert any(q.close_to(pair, 1e-30) for q in matching)
    assert not any(abs(q.X - target[0]) < 1e-11 for q in matching)


def _matches(q, a, ctx):
    try:
        return abs(wz_product(q, ctx).approx - a) < ctx.mp.mpf("1e-40")
    except ValueError:
        return False


def test_product_at_one(c100):
    assert abs(wz_product(XYPair(1, 1), c100).approx - 1) < c100.tol


@pytest.mark.parametrize("eid", list(load_registry()))
def test_table_pair_among_solutions(eid):
    ctx = ctx_new(60)
    e = load_registry()[eid]
    pair = modular_pair(e, ctx)
    sols = [q for orb in solve_xy(e.point, ctx) for q in orb]
    assert any(q.close_to(pair, ctx.mp.mpf("1e-20")) for q in sols)
    assert relations_residual(pair, e.point, ctx).worst < ctx.mp.mpf("1e-25")


# modular engine ----------------------------------------------------------------

@pytest.mark.parametrize("t", [("0", "1.1"), ("0.25", "2")])
def test_modular_eq2_examples(c100, t):
    assert modular_eq2(c100.mp.mpc(*map(c100.mp.mpf, t)), c100) < c100.mp.mpf("1e-40")


def test_eq5_and_multiplier_trivial(c100):
    res, _ = modular_eq5_residual(AlphaBeta(0, 0), c100)
    assert res == 0
    m, _ = multiplier5(AlphaBeta(c100.mp.mpf("0.3"), c100.mp.mpf("0.3")), c100)
    assert m.approx == 1


def test_g_from_beta_generic(c100):
    mp = c100.mp
    tau = mp.mpc(0, "1.2")
    ab = AlphaBeta(modulus_k(tau, c100).approx ** 2, modulus_k(5 * tau, c100).approx ** 2)
    b = g_from_beta(ab, c100)
    fa, ga = hyp_FG(ab.alpha, c100)
    fb, gb = hyp_FG(ab.beta, c100)
    assert abs(b.t * fa.approx - fb.approx) < mp.mpf("1e-40")
    assert abs(b.t1 * fa.approx + b.t2 * ga.approx - gb.approx) < mp.mpf("1e-40")


def test_r3_and_e2_examples(c100):
    mp = c100.mp
    tau = mp.mpc(0, "1.1")
    k, kp = modulus_k(tau, c100).approx, modulus_kprime(tau, c100).approx
    l, lp = modulus_k(3 * tau, c100).approx, modulus_kprime(3 * tau, c100).approx
    assert abs(r_p(3, l, k, c100, lp=lp, kp=kp) - r_p_definition(3, tau, c100)) < mp.mpf("1e-40")
    assert e2_inversion_residual(mp.mpc(0, "1.7"), c100) < mp.mpf("1e-40")


def test_tau_round_trips(c100):
    mp = c100.mp
    up = tau_from_modulus(modulus_kprime(mp.mpc(0, "1.3"), c100).approx, c100, recognize=False)
    assert abs(up.tau - mp.mpc(0, "1.3")) < mp.mpf("1e-40")
    up = tau_from_modulus(1 / mp.sqrt(2), c100)
    assert abs(up.tau - mp.j) < mp.mpf("1e-40")


def test_modular_residuals_on_random_tau(c100):
    mp = c100.mp
    rng = random.Random(11)
    for _ in range(10):
        tau = mp.mpc(mp.mpf(rng.uniform(-0.5, 0.5)), mp.mpf(rng.uniform(0.6, 3)))
        assert modular_eq2(tau, c100) < mp.mpf("1e-40")
        assert modular_eq5_residual(AlphaBeta.from_tau(tau, c100), c100)[0] < mp.mpf("1e-40")
        assert e2_inversion_residual(tau, c100) < mp.mpf("1e-40")


# recognition -------------------------------------------------------------------

def test_poly_residual_examples(c100):
    one = BoundedValue(c100.mp.mpf(1), 0)
    assert poly_residual(IntPolynomial((-1, 1)), one, c100) == 0
    assert poly_residual(IntPolynomial((1, 0, 1)), one, c100) == 2
    assert verify_zero(BoundedValue(c100.mp.mpf("1e-3"), 0), c100.mp.mpf("1e-40")) is Verdict.REFUTED
    assert verify_zero(BoundedValue(0, 0), c100.mp.mpf("1e-40")) is Verdict.VERIFIED


def test_s2_recognized_at_400_digits():
    ctx = ctx_new(400)
    s2 = e2_tau0_chain(ctx).s2
    P = recognize_min_poly(BoundedValue(s2.approx, ctx.tol), RecognitionBudget(8, 11, 20), ctx)
    assert P == S2_POLY


def test_round_trip_random_integer_polynomials():
    ctx = ctx_new(200)
    mp = ctx.mp
    rng = random.Random(5)
    z = sympy.Symbol("z")
    for _ in range(6):
        deg = rng.randint(2, 6)
        coeffs = [rng.randint(-9999, 9999) for _ in range(deg)] + [rng.randint(1, 9999)]
        P = IntPolynomial(tuple(coeffs))
        root = mp.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=400)[0]
        Q = recognize_min_poly(BoundedValue(root, ctx.tol), RecognitionBudget(6, 5, 20), ctx)
        assert Q is not None
        assert poly_residual(Q, BoundedValue(root, ctx.tol), ctx) < mp.mpf("1e-20")
        rem = sympy.rem(sympy.Poly(list(reversed(P.coefficients)), z), sympy.Poly(list(reversed(Q.coefficients)), z))
        assert rem.is_zero


def test_recognition_stable_across_precision():
    out = []
    for d in (100, 160):
        ctx = ctx_new(d)
        v = (1 + ctx.mp.sqrt(3)) / ctx.mp.mpf(7) + ctx.mp.j / 5
        out.append(recognize_min_poly(BoundedValue(v, ctx.tol), RecognitionBudget(4, 7), ctx))
    assert out[0] == out[1] == IntPolynomial.from_descending([1500625, -857500, 120050, 700, 14701])
