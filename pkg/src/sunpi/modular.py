"""Modular parametrization at tau0 = 1/2 + (3/10) sqrt(-5) and the E2 evaluation.

The pieces are: modular equations of degree 2, 3 and 5, the degree-5
multiplier with its derivative, the identity linking F G to E2, the
multipliers of the second kind R_p, the E2 inversion law and singular
values.  :func:`e2_tau0_chain` reduces E2(tau0) to 2 sqrt5/pi + s2 F(alpha)^2
and :func:`s1_chain` reduces the headline series to s1 F(alpha)^2 + 52 sqrt5 E2(tau0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .numbers import QuadraticIrrational
from .precision import BoundedValue, PrecisionContext
from .recognition import RecognitionBudget, recognize_min_poly
from .series import HEADLINE, SeriesPoint
from .special import (
    UpperHalfPoint,
    as_tau,
    e2,
    hyp_F,
    hyp_FG,
    modulus_k,
    modulus_kprime,
    moduli,
    theta,
)
from .wz import XYPair, d_a_dx_hyper

TAU0 = QuadraticIrrational(Fraction(1, 2), Fraction(3, 10), 5)


@dataclass(frozen=True)
class BranchCertificate:
    """Root choices made when evaluating a multi-valued display.

    ``choice`` lists, per radical, the power of the primitive root of unity
    multiplying the principal root.  ``runner_up`` is the residual of the
    next-best choice, showing how clearly the selection is determined.
    """

    name: str
    choice: Tuple[int, ...]
    residual: Any
    runner_up: Any

    def to_json(self, mp) -> dict:
        return {
            "name": self.name,
            "choice": list(self.choice),
            "residual": mp.nstr(self.residual, 6),
            "runner_up": mp.nstr(self.runner_up, 6),
        }


@dataclass(frozen=True)
class AlphaBeta:
    alpha: Any
    beta: Any
    p: int = 5

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("degree must be at least 2")

    @classmethod
    def from_tau(cls, tau, ctx: PrecisionContext, p: int = 5) -> "AlphaBeta":
        tau = as_tau(tau, ctx)
        return cls(modulus_k(tau, ctx).approx ** 2, modulus_k(p * tau, ctx).approx ** 2, p)


def tau0_alpha_beta(ctx: PrecisionContext) -> AlphaBeta:
    """alpha = 1 - X^2 = k^2(tau0), beta = 1 - Y^2 = k^2(5 tau0)."""
    tau = TAU0.value(ctx.mp)
    X = modulus_kprime(tau, ctx).approx
    Y = modulus_kprime(5 * tau, ctx).approx
    return AlphaBeta(1 - X * X, 1 - Y * Y, 5)


# ---------------------------------------------------------------------------
# Modular equations
# ---------------------------------------------------------------------------

def modular_eq2(tau, ctx: PrecisionContext):
    """|k'(tau) - (1 - k(2 tau))/(1 + k(2 tau))|."""
    tau = as_tau(tau, ctx)
    kp = modulus_kprime(tau, ctx).approx
    l = modulus_k(2 * tau, ctx).approx
    return abs(kp - (1 - l) / (1 + l))


def modular_eq3_residual(k, l, kp, lp):
    """|sqrt(kl) + sqrt(k'l') - 1| with principal roots."""
    return abs((k * l) ** 0.5 + (kp * lp) ** 0.5 - 1)


def _roots(mp, z, n):
    r = mp.root(z, n)
    w = mp.expjpi(mp.mpf(2) / n)
    return [r * w**j for j in range(n)]


def _eq5_terms(ab: AlphaBeta, mp):
    a, b = mp.mpc(ab.alpha), mp.mpc(ab.beta)
    P = _roots(mp, a * b, 2)
    Q = _roots(mp, (1 - a) * (1 - b), 2)
    R = _roots(mp, 16 * a * b * (1 - a) * (1 - b), 6)
    return P, Q, R


def _select(name, values):
    """values: list of (residual, choice, payload); returns (payload, certificate)."""
    ranked = sorted(values, key=lambda t: t[0])
    best = ranked[0]
    runner = ranked[1][0] if len(ranked) > 1 else best[0]
    return best[2], BranchCertificate(name, best[1], best[0], runner)


def modular_eq5_branches(ab: AlphaBeta, ctx: PrecisionContext):
    """Roots (P, Q, R) of (ab)^(1/2), ((1-a)(1-b))^(1/2), (16ab(1-a)(1-b))^(1/6)
    minimizing |P + Q + 2R - 1|, with their certificate."""
    if ab.p != 5:
        raise ValueError("the degree-5 modular equation needs p = 5")
    mp = ctx.mp
    P, Q, R = _eq5_terms(ab, mp)
    vals = [
        (abs(P[i] + Q[j] + 2 * R[m] - 1), (i, j, m), (P[i], Q[j], R[m]))
        for i, j, m in itertools.product(range(2), range(2), range(6))
    ]
    return _select("modular equation of degree 5", vals)


def modular_eq5_residual(ab: AlphaBeta, ctx: PrecisionContext):
    _, cert = modular_eq5_branches(ab, ctx)
    return cert.residual, cert


def multiplier5_branches(ab: AlphaBeta, ctx: PrecisionContext, target=None):
    """(u, v) = ((b/a)^(1/4), ((1-b)/(1-a))^(1/4)) for the multiplier u + v - uv.

    The fourth roots are those bringing u + v - uv closest to ``target``
    (by default F(alpha)/F(beta)); the choice is recorded.
    """
    mp = ctx.mp
    a, b = mp.mpc(ab.alpha), mp.mpc(ab.beta)
    if target is None:
        target = hyp_F(a, ctx).approx / hyp_F(b, ctx).approx
    U = _roots(mp, b / a, 4)
    V = _roots(mp, (1 - b) / (1 - a), 4)
    vals = []
    for i, j in itertools.product(range(4), range(4)):
        u, v = U[i], V[j]
        vals.append((abs(u + v - u * v - target), (i, j), (u, v)))
    return _select("degree-5 multiplier", vals)


def multiplier5(ab: AlphaBeta, ctx: PrecisionContext):
    if ab.alpha == ab.beta:
        return BoundedValue(ctx.mp.mpf(1), 0), None
    (u, v), cert = multiplier5_branches(ab, ctx)
    return BoundedValue(u + v - u * v, 0), cert


def dbeta_dalpha(ab: AlphaBeta, ctx: PrecisionContext):
    """d(beta)/d(alpha) from the differentiated degree-5 modular equation."""
    (P, Q, R), cert = modular_eq5_branches(ab, ctx)
    a, b = ctx.cnum(ab.alpha), ctx.cnum(ab.beta)
    num = P / (2 * a) - Q / (2 * (1 - a)) + R / 3 * (1 / a - 1 / (1 - a))
    den = P / (2 * b) - Q / (2 * (1 - b)) + R / 3 * (1 / b - 1 / (1 - b))
    if abs(den) < ctx.tol:
        raise ZeroDivisionError("vanishing coefficient of d(beta)/d(alpha)")
    return BoundedValue(-num / den, 0), cert


@dataclass(frozen=True)
class BetaFromAlpha:
    """F(beta) = t F(alpha) and G(beta) = t1 F(alpha) + t2 G(alpha)."""

    t: Any
    t1: Any
    t2: Any
    dbeta: Any
    certificates: Tuple[BranchCertificate, ...]


def g_from_beta(ab: AlphaBeta, ctx: PrecisionContext) -> BetaFromAlpha:
    a, b = ctx.cnum(ab.alpha), ctx.cnum(ab.beta)
    (u, v), c_mult = multiplier5_branches(ab, ctx)
    db, c_eq = dbeta_dalpha(ab, ctx)
    db = db.approx
    M = u + v - u * v
    du = u / 4 * (db / b - 1 / a)
    dv = v / 4 * (1 / (1 - a) - db / (1 - b))
    dM = du * (1 - v) + dv * (1 - u)
    t = 1 / M
    # log-derivative of F(a)/F(b) = M:  G(a)/(a F(a)) - G(b) b' / (b F(b)) = M'/M
    t2 = b * t / (a * db)
    t1 = -b * t * dM / (db * M)
    return BetaFromAlpha(t, t1, t2, db, (c_eq, c_mult))


# ---------------------------------------------------------------------------
# E2 identities
# ---------------------------------------------------------------------------

def fg_e2_residual(alpha, tau, ctx: PrecisionContext):
    """|F G - (E2 + (2 alpha - 1) F^2) / (6 (1 - alpha))| at alpha = k^2(tau)."""
    alpha = ctx.cnum(alpha)
    if alpha == 1:
        raise ValueError("alpha = 1 is excluded")
    f, g = hyp_FG(alpha, ctx)
    E = e2(tau, ctx)
    rhs = (E + f * f * (2 * alpha - 1)) / (6 * (1 - alpha))
    lhs = f * g
    return abs(lhs.approx - rhs.approx) + lhs.err + rhs.err


def _comp(ctx, z):
    return ctx.mp.sqrt(1 - z * z)


def r_p(p: int, l, k, ctx: PrecisionContext, lp=None, kp=None):
    """Multiplier of the second kind R_p(l, k) = (p E2(p tau) - E2(tau)) / (theta3(p tau)^2 theta3(tau)^2)
    with l = k(p tau); complements default to principal square roots."""
    l, k = ctx.cnum(l), ctx.cnum(k)
    lp = _comp(ctx, l) if lp is None else ctx.cnum(lp)
    kp = _comp(ctx, k) if kp is None else ctx.cnum(kp)
    if p == 2:
        return kp + l
    s = k * l + kp * lp
    if p == 3:
        return 1 + s
    if p == 5:
        return (3 + s) * ctx.mp.sqrt((1 + s) / 2)
    raise ValueError(f"multiplier of the second kind not available for p = {p}")


def r_p_definition(p: int, tau, ctx: PrecisionContext):
    tau = as_tau(tau, ctx)
    num = e2(p * tau, ctx) * p - e2(tau, ctx)
    den = theta(3, p * tau, ctx) ** 2 * theta(3, tau, ctx) ** 2
    return (num / den).approx


def e2_inversion_residual(tau, ctx: PrecisionContext):
    """|E2(-1/tau) - tau^2 E2(tau) - 6 tau / (pi i)|."""
    mp = ctx.mp
    tau = as_tau(tau, ctx)
    lhs = e2(-1 / tau, ctx)
    rhs = e2(tau, ctx) * tau**2 + 6 * tau / (mp.pi * mp.j)
    return abs(lhs.approx - rhs.approx) + lhs.err + rhs.err


# ---------------------------------------------------------------------------
# Singular values and radical displays
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SingularValueRecord:
    n: int
    k_n: Any
    kprime_n: Any
    G_n: Any = None

    def invariant_residual(self):
        """|G_n^12 * 2 k_n k'_n - 1| and |k_n^2 + k'_n^2 - 1|."""
        pyth = abs(self.k_n**2 + self.kprime_n**2 - 1)
        if self.G_n is None:
            return pyth
        return max(pyth, abs(self.G_n**12 * 2 * self.k_n * self.kprime_n - 1))


def singular_value_5(ctx: PrecisionContext) -> SingularValueRecord:
    mp = ctx.mp
    s5 = mp.sqrt(5)
    a, b = mp.sqrt(s5 - 1), mp.sqrt(3 - s5)
    k, kp = (a - b) / 2, (a + b) / 2
    return SingularValueRecord(5, k, kp, (2 * k * kp) ** (-mp.mpf(1) / 12))


def k_10tau0_radical(ctx: PrecisionContext):
    mp = ctx.mp
    s5 = mp.sqrt(5)
    f1 = mp.sqrt((7 + 3 * s5) / 4) - mp.sqrt((3 + 3 * s5) / 4)
    f2 = mp.sqrt((3 + s5) / 2) - mp.sqrt((1 + s5) / 2)
    return mp.j * f1**4 * f2**4


def singular_value_45(ctx: PrecisionContext) -> SingularValueRecord:
    """k_45, k'_45 from k(10 tau0) = k(1 + 3 i sqrt5) = i k_45 / k'_45."""
    mp = ctx.mp
    rho = (-mp.j * k_10tau0_radical(ctx)).real
    kp = 1 / mp.sqrt(1 + rho * rho)
    k = rho * kp
    return SingularValueRecord(45, k, kp, (2 * k * kp) ** (-mp.mpf(1) / 12))


def xy_radicals(ctx: PrecisionContext):
    """Radical forms of X = k'(tau0) and Y = k'(5 tau0) (principal roots of negatives)."""
    mp = ctx.mp
    s5 = mp.sqrt(5)
    f1 = mp.sqrt((7 - 3 * s5) / 4) - mp.sqrt(mp.mpc((3 - 3 * s5) / 4))
    a, b = mp.sqrt((3 - s5) / 2), mp.sqrt(mp.mpc((1 - s5) / 2))
    X = mp.j * f1**4 * (a - b) ** 4
    Y = mp.j * f1**4 * (a + b) ** 4
    return X, Y, -(f1**8), (a - b) ** 8


@dataclass(frozen=True)
class Check:
    name: str
    residual: Any
    certificates: Tuple[BranchCertificate, ...] = ()


def verify_radicals(ctx: PrecisionContext) -> List[Check]:
    from .wz import relations_residual

    mp = ctx.mp
    tau = TAU0.value(mp)
    X = modulus_kprime(tau, ctx).approx
    Y = modulus_kprime(5 * tau, ctx).approx
    k10 = modulus_k(10 * tau, ctx).approx
    Xr, Yr, XYr, XoYr = xy_radicals(ctx)
    kr = k_10tau0_radical(ctx)
    rel = relations_residual(XYPair(Xr, Yr, "manual"), SeriesPoint(HEADLINE.base, HEADLINE.y), ctx)
    sv45 = singular_value_45(ctx)
    k45 = modulus_k(mp.j * mp.sqrt(45), ctx).approx
    return [
        Check("radical X = k'(tau0)", abs(Xr - X)),
        Check("radical Y = k'(5 tau0)", abs(Yr - Y)),
        Check("radical k(10 tau0)", abs(kr - k10)),
        Check("XY display", abs(XYr - Xr * Yr) + abs(XYr - X * Y)),
        Check("X/Y display", abs(XoYr - Xr / Yr) + abs(XoYr - X / Y)),
        Check("Y = (1 - k(10 tau0))/(1 + k(10 tau0))", abs(Yr - (1 - kr) / (1 + kr))),
        Check("radical X, Y satisfy the relations", rel.worst),
        Check("k_45 from k(10 tau0) against theta", abs(sv45.k_n - k45)),
        Check("class invariant G_45", sv45.invariant_residual()),
    ]


# ---------------------------------------------------------------------------
# Inversion tau from k'
# ---------------------------------------------------------------------------

def normalize_gamma2(tau, mp, max_steps: int = 200):
    """Move tau by Gamma(2) (which fixes k^2 and k'^2) into |Re tau| <= 1, |tau +- 1/2| >= 1/2."""
    for _ in range(max_steps):
        shift = 2 * mp.floor((tau.real + 1) / 2)
        tau = tau - shift
        if tau.real <= -1:
            tau += 2
        if abs(tau - mp.mpf(1) / 2) < mp.mpf(1) / 2:
            tau = tau / (1 - 2 * tau)
        elif abs(tau + mp.mpf(1) / 2) < mp.mpf(1) / 2:
            tau = tau / (1 + 2 * tau)
        else:
            return tau
    raise RuntimeError("lattice normalization did not terminate")


def tau_from_modulus(X, ctx: PrecisionContext, recognize: bool = True) -> UpperHalfPoint:
    """tau = i K(k')/K(k) = i F(X^2)/F(1 - X^2), so that k'(tau)^2 = X^2."""
    mp = ctx.mp
    X = ctx.cnum(X)
    if X == 0 or X * X == 1:
        raise ValueError("X must avoid 0 and +-1")
    tau = mp.j * hyp_F(X * X, ctx).approx / hyp_F(1 - X * X, ctx).approx
    if not tau.imag > 0:
        raise ValueError("inversion left the upper half-plane")
    tau = normalize_gamma2(tau, mp)
    exact = None
    if recognize:
        exact = recognize_quadratic(tau, ctx)
    return UpperHalfPoint(tau, exact)


def recognize_quadratic(tau, ctx: PrecisionContext, max_coeff_digits: int = 4) -> Optional[QuadraticIrrational]:
    budget = RecognitionBudget(2, max_coeff_digits, 12)
    digits = int(-ctx.mp.log10(ctx.tol))
    if digits < budget.required_digits:
        return None
    P = recognize_min_poly(BoundedValue(tau, ctx.tol), budget, ctx)
    if P is None or P.degree != 2:
        return None
    C, B, A = P.coefficients
    disc = 4 * A * C - B * B
    if disc <= 0:
        return None
    return QuadraticIrrational.from_radical(Fraction(-B, 2 * A), Fraction(1, 2 * A), disc)


# ---------------------------------------------------------------------------
# E2(tau0) = 2 sqrt5/pi + s2 theta3(tau0)^4
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class E2Chain:
    pi_coeff: Any
    s2: BoundedValue
    steps: Dict[str, Any] = field(default_factory=dict)
    checks: Tuple[Check, ...] = ()


def e2_tau0_chain(ctx: PrecisionContext) -> E2Chain:
    """Evaluate E2(tau0) through i/sqrt5 -> 3i/sqrt5 -> 1 + 3i/sqrt5 = 2 tau0 -> tau0.

    At every stage E2 = pi_coeff/pi + c theta3^4; the 1/pi coefficient is
    carried exactly through the algebra while c is computed numerically.
    """
    mp = ctx.mp
    s5 = mp.sqrt(5)
    ta = mp.j / s5
    tau0 = TAU0.value(mp)
    checks: List[Check] = []

    # stage 1: tau = i/sqrt5, where l = k' and l' = k
    sv = singular_value_5(ctx)
    k, kp = sv.kprime_n, sv.k_n
    th_a = theta(3, ta, ctx).approx
    checks.append(Check("k(i/sqrt5) radical against theta", abs(k - modulus_k(ta, ctx).approx)))
    R5 = r_p(5, kp, k, ctx, lp=k, kp=kp)
    c1 = -R5 / (2 * s5)
    pc1 = 3 * s5
    checks.append(Check("E2(i/sqrt5) radical coefficient", abs(c1 + mp.sqrt(1 + s5) / mp.sqrt(10))))
    checks.append(Check("E2(i/sqrt5) direct", abs(e2(ta, ctx).approx - (pc1 / mp.pi + c1 * th_a**4))))

    # stage 2: degree 3, tau = i/sqrt5 -> 3i/sqrt5
    k3, k3p, th_3 = moduli(3 * ta, ctx)
    k3, k3p, th_3 = k3.approx, k3p.approx, th_3.approx
    checks.append(Check("modular equation of degree 3", modular_eq3_residual(k, k3, kp, k3p)))
    m3 = th_a**2 / th_3**2
    r1 = r_p(3, k3, k, ctx, lp=k3p, kp=kp) * m3
    checks.append(Check(
        "3 E2(3i/sqrt5) - E2(i/sqrt5) = r1 theta3(3i/sqrt5)^4",
        abs(3 * e2(3 * ta, ctx).approx - e2(ta, ctx).approx - r1 * th_3**4),
    ))
    c2 = (c1 * m3**2 + r1) / 3
    pc2 = pc1 / 3

    # stage 3: 2 tau0 = 1 + 3i/sqrt5, theta3(1 + t) = theta4(t)
    c3 = c2 / k3p**2
    pc3 = pc2
    checks.append(Check("2 tau0 = 1 + 3i/sqrt5", abs(2 * tau0 - 1 - 3 * ta)))

    # stage 4: degree 2, 2 tau0 -> tau0
    X = modulus_kprime(tau0, ctx).approx
    l2 = modulus_k(2 * tau0, ctx).approx
    checks.append(Check("modular equation of degree 2 at tau0", abs(X - (1 - l2) / (1 + l2))))
    m2 = 1 + l2
    th0 = theta(3, tau0, ctx).approx
    th2 = theta(3, 2 * tau0, ctx).approx
    checks.append(Check("theta3(tau0)^2 = (1 + k(2 tau0)) theta3(2 tau0)^2", abs(th0**2 - m2 * th2**2)))
    R2 = r_p(2, l2, modulus_k(tau0, ctx).approx, ctx, kp=X)
    checks.append(Check("R2 against its definition at tau0", abs(R2 - r_p_definition(2, tau0, ctx))))
    s2 = 2 * c3 / m2**2 - R2 / m2
    pc = 2 * pc3

    direct = e2(tau0, ctx).approx
    checks.append(Check("E2(tau0) = 2 sqrt5/pi + s2 theta3(tau0)^4", abs(direct - (pc / mp.pi + s2 * th0**4))))
    steps = {"c_i/sqrt5": c1, "r1": r1, "c_3i/sqrt5": c2, "c_2tau0": c3, "R2": R2, "m2": m2}
    return E2Chain(pc, BoundedValue(s2, 0), steps, tuple(checks))


# ---------------------------------------------------------------------------
# Headline series -> s1 F(alpha)^2 + 52 sqrt5 E2(tau0)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class S1Chain:
    r1: Any
    r2: Any
    r3: Any
    fa_fb: Any
    ga_fb: Any
    fa_gb: Any
    beta_from_alpha: BetaFromAlpha
    q1: Any
    q2: Any
    s1: Any
    e2_coeff: Any
    alpha: Any


def s1_chain(ctx: PrecisionContext) -> S1Chain:
    """Coefficients r1, r2, r3 of F(a)F(b), G(a)F(b), F(a)G(b) in the headline
    sum, then q1 F(a)^2 + q2 F(a)G(a) via t, t1, t2, then s1 and the E2
    coefficient q2/(6(1 - alpha))."""
    mp = ctx.mp
    tau = TAU0.value(mp)
    X = modulus_kprime(tau, ctx).approx
    Y = modulus_kprime(5 * tau, ctx).approx
    pair = XYPair(X, Y, "modular")
    pt = SeriesPoint(HEADLINE.base, HEADLINE.y)
    x = pt.x.to_mp(mp).real
    d = d_a_dx_hyper(pair, pt, ctx)
    # sum (a n + b) c_n x^n = b A + a x dA/dx
    a, b = HEADLINE.a, HEADLINE.b
    r1 = b * (1 + X * Y) / 2 + a * x * d.c_ff
    r2 = a * x * d.c_gf
    r3 = a * x * d.c_fg
    alpha, beta = 1 - X * X, 1 - Y * Y
    fa, ga = hyp_FG(alpha, ctx)
    fb, gb = hyp_FG(beta, ctx)
    bfa = g_from_beta(AlphaBeta(alpha, beta, 5), ctx)
    q1 = r1 * bfa.t + r3 * bfa.t1
    q2 = r2 * bfa.t + r3 * bfa.t2
    e2_coeff = q2 / (6 * (1 - alpha))
    s1 = q1 + e2_coeff * (2 * alpha - 1)
    return S1Chain(
        r1, r2, r3,
        (fa * fb).approx, (ga * fb).approx, (fa * gb).approx,
        bfa, q1, q2, s1, e2_coeff, alpha,
    )
