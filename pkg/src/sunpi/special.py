"""Hypergeometric and modular functions at high precision.

Conventions: ``q = exp(2*pi*i*tau)`` and the theta functions are sums of
``q**(n**2/2)``, i.e. of ``Q**(n**2)`` with ``Q = exp(pi*i*tau)``.
``F(a) = 2F1(1/2, 1/2; 1; a)`` and ``G(a) = a F'(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .numbers import QuadraticIrrational
from .precision import (
    BoundedValue,
    GeometricTailModel,
    PrecisionContext,
    default_onset,
    sum_with_tail,
)

# |w| above which a hypergeometric argument is moved by a connection formula
CONTINUATION_RADIUS = 0.8
_MAX_LANDEN = 8


class BranchCutError(ValueError):
    """Argument lies on the cut [1, oo) and no side was requested."""


@dataclass(frozen=True)
class UpperHalfPoint:
    tau: Any
    exact: Optional[QuadraticIrrational] = None

    def __post_init__(self):
        if not self.tau.imag > 0:
            raise ValueError(f"tau must lie in the upper half-plane, got {self.tau}")

    @classmethod
    def from_exact(cls, q: QuadraticIrrational, ctx: PrecisionContext) -> "UpperHalfPoint":
        return cls(q.value(ctx.mp), q)


def as_tau(tau, ctx: PrecisionContext):
    if isinstance(tau, UpperHalfPoint):
        tau = tau.tau
    elif isinstance(tau, QuadraticIrrational):
        tau = tau.value(ctx.mp)
    tau = ctx.cnum(tau)
    if not tau.imag > 0:
        raise ValueError(f"tau must lie in the upper half-plane, got {tau}")
    return tau


def weighted_model(ratio, degree: int = 1) -> GeometricTailModel:
    """Tail model for a geometric majorant multiplied by a degree-``degree`` polynomial in n."""
    onset = default_onset(ratio)
    r = ratio * (1 + 1.0 / onset) ** degree
    if r >= 1:
        onset *= 4 * degree
        r = ratio * (1 + 1.0 / onset) ** degree
    return GeometricTailModel(r, onset)


# ---------------------------------------------------------------------------
# 2F1(1/2, 1/2; 1; z) and its Euler derivative
# ---------------------------------------------------------------------------

def _coeff_table(mp):
    """Closure producing c_n = ((1/2)_n/n!)^2 and h_n = 2(psi(n+1) - psi(n+1/2))."""
    cs = [mp.mpf(1)]
    hs = [4 * mp.log(2)]

    def get(n):
        while len(cs) <= n:
            k = len(cs) - 1
            cs.append(cs[k] * (mp.mpf(2 * k + 1) / (2 * k + 2)) ** 2)
            hs.append(hs[k] - mp.mpf(2) / ((k + 1) * (2 * k + 1)))
        return cs[n], hs[n]

    return get


def _direct(z, ctx, want_g: bool):
    mp = ctx.mp
    coef = _coeff_table(mp)
    az = abs(z)
    if want_g:
        return sum_with_tail(lambda n: n * coef(n)[0] * z**n, weighted_model(az), ctx)
    return sum_with_tail(lambda n: coef(n)[0] * z**n, GeometricTailModel(az, 0), ctx)


def _near_one(u, log_u, ctx, want_g: bool):
    """Expansion in ``u = 1 - z``; ``log_u`` carries the branch of log(u)."""
    mp = ctx.mp
    coef = _coeff_table(mp)
    au, al = abs(u), abs(log_u)
    if want_g:
        def term(n):
            c, h = coef(n)
            return c * u ** (n - 1) * (1 - n * (h - log_u))

        def major(n, t):
            c, h = coef(n)
            return c * au ** (n - 1) * (1 + n * (h + al))

        s = sum_with_tail(term, weighted_model(au), ctx, major)
        return s * ((1 - u) / mp.pi)

    def term(n):
        c, h = coef(n)
        return c * u**n * (h - log_u)

    def major(n, t):
        c, h = coef(n)
        return c * au**n * (h + al)

    return sum_with_tail(term, GeometricTailModel(au, 0), ctx, major) * (1 / mp.pi)


def _at_infinity(s, log_s, rsqrt_s, ctx, want_g: bool):
    """Expansion in ``1/z`` with ``s = -z``; ``log_s`` and ``rsqrt_s = s**(-1/2)`` fix branches."""
    mp = ctx.mp
    coef = _coeff_table(mp)
    w = -1 / s
    aw, al = abs(w), abs(log_s)
    if want_g:
        def term(n):
            c, h = coef(n)
            return c * w**n * (1 - (n + mp.mpf(1) / 2) * (log_s + h))

        def major(n, t):
            c, h = coef(n)
            return c * aw**n * (1 + (n + 1) * (al + h))

        model = weighted_model(aw)
    else:
        def term(n):
            c, h = coef(n)
            return c * w**n * (log_s + h)

        def major(n, t):
            c, h = coef(n)
            return c * aw**n * (al + h)

        model = GeometricTailModel(aw, 0)
    return sum_with_tail(term, model, ctx, major) * (rsqrt_s / mp.pi)


def _on_cut_branches(x, side: str, mp):
    """Boundary values of log and sqrt at a negative real number approached from ``side``."""
    sign = -1 if side == "above" else 1
    r = abs(x)
    return mp.mpc(mp.log(r), sign * mp.pi), mp.mpc(0, -sign) / mp.sqrt(r)


def _fg(z, ctx: PrecisionContext, side: Optional[str], depth: int = 0):
    """Return the pair (F(z), G(z)) as BoundedValues."""
    mp = ctx.mp
    z = ctx.cnum(z)
    on_cut = z.imag == 0 and z.real >= 1
    if on_cut:
        if side not in ("above", "below"):
            raise BranchCutError(f"argument {mp.nstr(z, 15)} lies on the branch cut [1, oo)")
        if z.real == 1:
            raise BranchCutError("F has a logarithmic singularity at 1")
        u = 1 - z.real
        if abs(u) <= CONTINUATION_RADIUS:
            log_u, _ = _on_cut_branches(u, side, mp)
            return (_near_one(ctx.cnum(u), log_u, ctx, False),
                    _near_one(ctx.cnum(u), log_u, ctx, True))
        log_s, rs = _on_cut_branches(-z.real, side, mp)
        s = ctx.cnum(-z.real)
        return _at_infinity(s, log_s, rs, ctx, False), _at_infinity(s, log_s, rs, ctx, True)

    if z == 0:
        return BoundedValue(mp.mpc(1), mp.mpf(0)), BoundedValue(mp.mpc(0), mp.mpf(0))

    routes = {
        "direct": abs(z),
        "near_one": abs(1 - z),
        "infinity": 1 / abs(z),
        "pfaff": abs(z / (z - 1)),
    }
    route = min(routes, key=routes.get)
    if routes[route] > CONTINUATION_RADIUS and depth < _MAX_LANDEN:
        route = "landen"

    if route == "direct":
        return _direct(z, ctx, False), _direct(z, ctx, True)
    if route == "near_one":
        u = 1 - z
        lu = mp.log(u)
        return _near_one(u, lu, ctx, False), _near_one(u, lu, ctx, True)
    if route == "infinity":
        s = -z
        ls, rs = mp.log(s), 1 / mp.sqrt(s)
        return _at_infinity(s, ls, rs, ctx, False), _at_infinity(s, ls, rs, ctx, True)
    if route == "pfaff":
        w = z / (z - 1)
        fw, gw = _fg(w, ctx, None, depth + 1)
        pre = 1 / mp.sqrt(1 - z)
        f = fw * pre
        g = (fw * (z / (2 * (1 - z))) + gw * (1 / (1 - z))) * pre
        return f, g
    # quadratic (Landen) step: |(1-k')/(1+k')| < 1 whenever Re k' > 0
    kp = mp.sqrt(1 - z)
    w = ((1 - kp) / (1 + kp)) ** 2
    fw, gw = _fg(w, ctx, None, depth + 1)
    f = fw * (2 / (1 + kp))
    g = (fw * (1 - kp) + gw * 4) * (1 / (kp * (1 + kp)))
    return f, g


def hyp_F(alpha, ctx: PrecisionContext, side: Optional[str] = None) -> BoundedValue:
    """``2F1(1/2, 1/2; 1; alpha)``, analytically continued off the cut [1, oo).

    On the cut a ``side`` of ``"above"`` or ``"below"`` selects the boundary value.
    """
    return _fg(alpha, ctx, side)[0]


def hyp_G(alpha, ctx: PrecisionContext, side: Optional[str] = None) -> BoundedValue:
    """``alpha * F'(alpha) = (alpha/4) 2F1(3/2, 3/2; 2; alpha)``."""
    return _fg(alpha, ctx, side)[1]


def hyp_FG(alpha, ctx: PrecisionContext, side: Optional[str] = None):
    return _fg(alpha, ctx, side)


def hyp2f1_terminating(a: int, b: int, c: int, z, ctx: PrecisionContext):
    """Terminating 2F1 with a non-positive integer among ``a, b``, summed exactly term by term."""
    mp = ctx.mp
    if b > 0 and a > 0:
        raise ValueError("one numerator parameter must be a non-positive integer")
    n = -min(a, b)
    total, t = mp.mpf(0), mp.mpf(1)
    for k in range(n + 1):
        total += t
        t = t * (a + k) * (b + k) / ((c + k) * (k + 1)) * z
    return total


# ---------------------------------------------------------------------------
# Legendre polynomials
# ---------------------------------------------------------------------------

def legendre_values(n: int, z, ctx: PrecisionContext):
    """``[P_0(z), ..., P_n(z)]`` by the three-term recurrence."""
    mp = ctx.mp
    z = ctx.num(z)
    out = [mp.mpf(1)]
    if n >= 1:
        out.append(z)
    for k in range(1, n):
        out.append(((2 * k + 1) * z * out[k] - k * out[k - 1]) / (k + 1))
    return out


def legendre_P(n: int, z, ctx: PrecisionContext) -> BoundedValue:
    if n < 0:
        raise ValueError("degree must be non-negative")
    return BoundedValue(legendre_values(n, z, ctx)[n], ctx.mp.mpf(0))


# ---------------------------------------------------------------------------
# Theta, eta, E2 and the elliptic moduli
# ---------------------------------------------------------------------------

def _nome(tau, ctx):
    return ctx.mp.expjpi(tau)


def theta(kind: int, tau, ctx: PrecisionContext) -> BoundedValue:
    """Jacobi theta constant ``theta_kind(tau)`` for kind in {2, 3, 4}."""
    mp = ctx.mp
    tau = as_tau(tau, ctx)
    Q = _nome(tau, ctx)
    aq = abs(Q)
    model = GeometricTailModel(aq, 1)
    if kind == 3:
        s = sum_with_tail(lambda n: Q ** (n * n), model, ctx, start=1)
        return 1 + s * 2
    if kind == 4:
        s = sum_with_tail(lambda n: (-1) ** n * Q ** (n * n), model, ctx, start=1)
        return 1 + s * 2
    if kind == 2:
        s = sum_with_tail(lambda n: Q ** (n * (n + 1)), GeometricTailModel(aq**2, 1), ctx)
        return s * (2 * mp.expjpi(tau / 4))
    raise ValueError(f"unsupported theta kind {kind}")


def eta(tau, ctx: PrecisionContext) -> BoundedValue:
    """Dedekind eta ``q**(1/24) * prod(1 - q**n)``."""
    mp = ctx.mp
    tau = as_tau(tau, ctx)
    q = mp.expjpi(2 * tau)
    aq = abs(q)
    goal = ctx.tol / 4
    prod = mp.mpc(1)
    qn = mp.mpc(1)
    for n in range(1, 10**6):
        qn *= q
        prod *= 1 - qn
        # |log prod_{m>n}(1 - q^m)| <= sum |q|^m/(1-|q|^m)
        aqn = aq ** (n + 1)
        delta = aqn / ((1 - aq) * (1 - aqn))
        if delta < 0.5:
            err = abs(prod) * 2 * delta
            if err < goal:
                break
    pre = mp.expjpi(tau / 12)
    return BoundedValue(prod * pre, err * abs(pre))


def e2(tau, ctx: PrecisionContext) -> BoundedValue:
    """Weight-2 Eisenstein series ``24 D(eta)/eta = 1 - 24 sum n q^n/(1 - q^n)``."""
    mp = ctx.mp
    tau = as_tau(tau, ctx)
    q = mp.expjpi(2 * tau)
    aq = abs(q)

    def term(n):
        qn = q**n
        return n * qn / (1 - qn)

    s = sum_with_tail(term, weighted_model(aq), ctx, lambda n, t: n * aq**n / (1 - aq), start=1)
    return 1 - s * 24


def modulus_k(tau, ctx: PrecisionContext) -> BoundedValue:
    return (theta(2, tau, ctx) / theta(3, tau, ctx)) ** 2


def modulus_kprime(tau, ctx: PrecisionContext) -> BoundedValue:
    return (theta(4, tau, ctx) / theta(3, tau, ctx)) ** 2


def moduli(tau, ctx: PrecisionContext):
    """``(k, k', theta_3)`` sharing one set of theta evaluations."""
    t2, t3, t4 = (theta(j, tau, ctx) for j in (2, 3, 4))
    return (t2 / t3) ** 2, (t4 / t3) ** 2, t3
