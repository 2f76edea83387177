"""The double series A(x, y) with its Euler derivatives and single-series forms.

    A(x, y) = sum_n x^n C(2n, n) sum_k C(n, k)^2 C(2k, n) (-1)^k y^(2k - n)

Rows (fixed n) are summed exactly over k; the outer sum is floating point.
The row tail uses the majorant |x|^n C(2n,n)^2 (1+|y|)^n, which follows from
C(2k,k) C(2n-2k,n-k) <= C(2n,n) and decays with ratio 16|x|(1+|y|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from mpmath.libmp import MPZ

from .numbers import GaussianRational
from .precision import BoundedValue, GeometricTailModel, PrecisionContext, sum_with_tail
from .special import weighted_model


class DivergentSeriesError(ValueError):
    pass


@dataclass(frozen=True)
class SeriesPoint:
    x: GaussianRational
    y: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "x", GaussianRational.of(self.x))
        object.__setattr__(self, "y", GaussianRational.of(self.y))
        if not self.y:
            raise ValueError("y must be nonzero")

    def conjugate(self) -> "SeriesPoint":
        return SeriesPoint(self.x.conjugate(), self.y.conjugate())

    def __str__(self):
        return f"({self.x}, {self.y})"


class Convergence(NamedTuple):
    converges: bool
    ratio: float


def _mag(v: GaussianRational):
    return abs(v)


def converges_absolutely(x, y) -> Convergence:
    """Evaluate |16xy (sqrt|4x/y| + sqrt(1 + |4x/y|))^2| and compare with 1."""
    x, y = GaussianRational.of(x), GaussianRational.of(y)
    if not y:
        raise ValueError("y must be nonzero")
    a = _mag(4 * x / y)
    ratio = 16 * _mag(x * y) * (math.sqrt(a) + math.sqrt(1 + a)) ** 2
    return Convergence(ratio < 1, ratio)


def row_ratio(x, y) -> float:
    """Asymptotic ratio 16|x|(1+|y|) of the row-wise (index n) absolute sums."""
    return 16 * _mag(GaussianRational.of(x)) * (1 + _mag(GaussianRational.of(y)))


def _abs_mp(v: GaussianRational, mp):
    n = v.norm()
    return mp.sqrt(mp.mpf(n.numerator) / n.denominator)


def _require_convergent(pt: SeriesPoint):
    conv = converges_absolutely(pt.x, pt.y)
    if not conv.converges:
        raise DivergentSeriesError(f"double series diverges at {pt} (ratio {conv.ratio:.6g})")
    return conv


class _Rows:
    """Exact inner sums of the double series, produced row by row.

    For row n (j0 = n mod 2, M = n // 2) with y = Y/d and W = Y^2, D = d^2:

        sum_k C(n,k)^2 C(2k,n) (-1)^k y^(2k-n) = y^j0 D^-M * sum_m b_m W^m

    where b_m = a_m D^(M-m) are integers obtained from a_M = (-1)^n C(2n,n) by
    exact ratio steps (the outer C(2n,n) is not included).  ``row(n)`` returns the Gaussian integers
    ``P = sum b_m W^m`` and ``Pm = sum m b_m W^m``.
    """

    def __init__(self, y: GaussianRational):
        u, v, d = y.integer_form()
        self.wr, self.wi = MPZ(u * u - v * v), MPZ(2 * u * v)
        self.D = MPZ(d * d)

    def row(self, n: int, want_m: bool):
        M = n // 2
        j0 = n - 2 * M
        k = n
        b = MPZ(math.comb(2 * n, n)) * (-1 if n % 2 else 1)
        wr, wi, D = self.wr, self.wi, self.D
        pr, pi_ = b, MPZ(0)
        mr, mi = b * M, MPZ(0)
        for m in range(M, 0, -1):
            # step a_m -> a_(m-1), i.e. k -> k-1
            j = 2 * k - n
            b = -(b * (k * k * j * (j - 1)) * D) // ((n - k + 1) ** 2 * 2 * k * (2 * k - 1))
            k -= 1
            if wi:
                pr, pi_ = pr * wr - pi_ * wi + b, pr * wi + pi_ * wr
                if want_m:
                    mr, mi = mr * wr - mi * wi + (m - 1) * b, mr * wi + mi * wr
            else:
                pr, pi_ = pr * wr + b, pi_ * wr
                if want_m:
                    mr, mi = mr * wr + (m - 1) * b, mi * wr
        return (pr, pi_), (mr, mi), j0, M


def double_series_sum(pt: SeriesPoint, ctx: PrecisionContext, a=0, b=1, c=0) -> BoundedValue:
    """sum_n sum_k (a*n + b + c*(2k-n)) * term(n, k) for integers a, b, c."""
    _require_convergent(pt)
    mp = ctx.mp
    rows = _Rows(pt.y)
    x = pt.x.to_mp(mp)
    y = pt.y.to_mp(mp)
    if pt.x.im == 0:
        x = x.real
    if pt.y.im == 0:
        y = y.real
    ax, ay = _abs_mp(pt.x, mp), _abs_mp(pt.y, mp)
    ratio = row_ratio(pt.x, pt.y)
    if ratio >= 1:
        raise DivergentSeriesError(f"row-wise summation diverges at {pt}")
    want_m = c != 0
    Dbig = rows.D

    def term(n):
        if n == 0:
            return mp.mpf(b)
        (pr, pim), (mr, mim), j0, M = rows.row(n, want_m)
        if want_m:
            wr, wi = (a * n + b + c * j0) * pr + 2 * c * mr, (a * n + b + c * j0) * pim + 2 * c * mim
        else:
            wr, wi = (a * n + b) * pr, (a * n + b) * pim
        cn = MPZ(math.comb(2 * n, n))
        wr, wi = wr * cn, wi * cn
        scale = mp.mpf(Dbig**M)
        val = mp.mpc(mp.mpf(wr) / scale, mp.mpf(wi) / scale) if wi else mp.mpf(wr) / scale
        if j0:
            val *= y
        return val * x**n

    cbin = [mp.mpf(1)]

    def major(n, t):
        while len(cbin) <= n:
            k = len(cbin) - 1
            cbin.append(cbin[k] * (2 * k + 1) * (2 * k + 2) / ((k + 1) ** 2))
        w = (abs(a) + abs(c)) * n + abs(b)
        return w * cbin[n] ** 2 * (ax * (1 + ay)) ** n

    model = GeometricTailModel(ratio, 0) if a == 0 and c == 0 else weighted_model(ratio)
    return sum_with_tail(term, model, ctx, major)


def a_double(pt: SeriesPoint, ctx: PrecisionContext) -> BoundedValue:
    return double_series_sum(pt, ctx, 0, 1, 0)


def a_theta(pt: SeriesPoint, which: str, ctx: PrecisionContext) -> BoundedValue:
    """theta_x A (weight n) or theta_y A (weight 2k - n)."""
    if which == "x":
        return double_series_sum(pt, ctx, 1, 0, 0)
    if which == "y":
        return double_series_sum(pt, ctx, 0, 0, 1)
    raise ValueError(f"which must be 'x' or 'y', not {which!r}")


def a_legendre(pt: SeriesPoint, ctx: PrecisionContext) -> BoundedValue:
    """sum_k (-xy)^k C(2k,k)^2 P_2k(sqrt(1 + 4x/y)), principal square root."""
    conv = _require_convergent(pt)
    mp = ctx.mp
    x, y = pt.x.to_mp(mp), pt.y.to_mp(mp)
    z = mp.sqrt(1 + 4 * x / y)
    w = -x * y
    za = mp.sqrt(1 + _abs_mp(4 * pt.x / pt.y, mp))
    aw = abs(w)
    state = {"k": -1, "pz": [mp.mpf(1), z], "pa": [mp.mpf(1), za], "c": mp.mpf(1)}

    def advance(k):
        # P_2k from P_(2k-2), P_(2k-1) twice over
        for n in (2 * k - 1, 2 * k):
            if n < 2:
                continue
            for key, arg in (("pz", z), ("pa", za)):
                p0, p1 = state[key]
                state[key] = [p1, ((2 * n - 1) * arg * p1 - (n - 1) * p0) / n]
        if k > 0:
            state["c"] *= (mp.mpf(2 * (2 * k - 1)) / k) ** 2
        state["k"] = k

    def p2k(key, k):
        return state[key][1] if k > 0 else mp.mpf(1)

    def term(k):
        advance(k)
        return w**k * state["c"] * p2k("pz", k)

    def major(k, t):
        return aw**k * state["c"] * p2k("pa", k)

    return sum_with_tail(term, GeometricTailModel(conv.ratio, 0), ctx, major)


def t_poly(k: int, b: int, c: int) -> int:
    """Coefficient of x^k in (x^2 + b x + c)^k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum(math.comb(k, 2 * j) * math.comb(2 * j, j) * b ** (k - 2 * j) * c**j
               for j in range(k // 2 + 1))


@dataclass(frozen=True)
class PiSeriesSpec:
    """sum (a n + b) * base^n * ... = target_numerator / pi.

    ``form == "double_series"`` uses the inner double-series sum at ``(base, y)``;
    ``form == "T_form"`` uses C(2n,n)^2 T_2n(t_b, t_c).
    """

    a: int
    b: int
    base: GaussianRational
    target_numerator: Fraction
    form: str = "double_series"
    y: Optional[GaussianRational] = None
    t_b: int = 0
    t_c: int = 0

    def __post_init__(self):
        object.__setattr__(self, "base", GaussianRational.of(self.base))
        object.__setattr__(self, "target_numerator", Fraction(self.target_numerator))
        if self.y is not None:
            object.__setattr__(self, "y", GaussianRational.of(self.y))
        if self.target_numerator == 0:
            raise ValueError("target must be nonzero")
        if self.form not in ("double_series", "T_form"):
            raise ValueError(f"unknown series form {self.form!r}")
        if self.form == "double_series" and self.y is None:
            raise ValueError("double_series form needs y")

    def target(self, ctx: PrecisionContext):
        t = self.target_numerator
        return ctx.mp.mpf(t.numerator) / t.denominator / ctx.mp.pi


HEADLINE = PiSeriesSpec(1054, 233, Fraction(1, 480), 520, "double_series", y=8)
IV2 = PiSeriesSpec(340, 59, Fraction(-1, 480**2), 120, "T_form", t_b=62, t_c=1)


def eval_pi_series(spec: PiSeriesSpec, ctx: PrecisionContext) -> BoundedValue:
    mp = ctx.mp
    if spec.a == 0 and spec.b == 0:
        return BoundedValue(mp.mpf(0), mp.mpf(0))
    if spec.form == "double_series":
        return double_series_sum(SeriesPoint(spec.base, spec.y), ctx, spec.a, spec.b, 0)
    base = spec.base.to_mp(mp)
    if spec.base.is_real:
        base = base.real
    growth = (abs(spec.t_b) + 2 * math.sqrt(abs(spec.t_c))) ** 2
    ratio = 16 * abs(spec.base) * growth
    if ratio >= 1:
        raise DivergentSeriesError(f"T-form series with ratio {ratio:.4g} does not converge")
    ab = _abs_mp(spec.base, mp)
    cb = [MPZ(1)]

    def cbin2(n):
        while len(cb) <= n:
            k = len(cb) - 1
            cb.append(cb[k] * (2 * k + 1) * (2 * k + 2) // ((k + 1) ** 2))
        return cb[n] ** 2

    def term(n):
        return (spec.a * n + spec.b) * mp.mpf(cbin2(n) * t_poly(2 * n, spec.t_b, spec.t_c)) * base**n

    def major(n, t):
        return (abs(spec.a) * n + abs(spec.b)) * mp.mpf(cbin2(n)) * (ab * mp.mpf(growth)) ** n

    return sum_with_tail(term, weighted_model(ratio), ctx, major)
