"""Hypergeometric form of A(x, y) through the pair (X, Y).

X and Y are tied to (x, y) by

    -xy = ((X - Y) / (4 (1 + XY)))^2
    1 + 4x/y = [((X + Y)(1 - XY)) / ((X - Y)(1 + XY))]^2

and, near X = Y = 1, A(x, y) = (1 + XY)/2 * F(1 - X^2) * F(1 - Y^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

import mpmath
import sympy

from .numbers import GaussianRational
from .precision import BoundedValue, PrecisionContext
from .series import SeriesPoint, converges_absolutely
from .special import BranchCutError, hyp_FG

PROVENANCES = ("solved", "modular", "manual", "orbit")


@dataclass(frozen=True)
class XYPair:
    X: Any
    Y: Any
    provenance: str = "manual"

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if 1 + self.X * self.Y == 0:
            raise ValueError("degenerate pair: 1 + XY = 0")

    def close_to(self, other: "XYPair", tol) -> bool:
        return abs(self.X - other.X) < tol and abs(self.Y - other.Y) < tol


@dataclass(frozen=True)
class RelationResidual:
    r1: Any
    r2: Any

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError("residuals are non-negative")

    @property
    def worst(self):
        return max(self.r1, self.r2)


def _uv(X, Y):
    """The right-hand sides of the two relations: (-xy, 1 + 4x/y)."""
    s, p = X - Y, 1 + X * Y
    if p == 0:
        raise ValueError("degenerate pair: 1 + XY = 0")
    u2 = (s / (4 * p)) ** 2
    if s == 0:
        return u2, None
    v2 = ((X + Y) * (1 - X * Y) / (s * p)) ** 2
    return u2, v2


def relations_residual(pair: XYPair, pt: SeriesPoint, ctx: PrecisionContext) -> RelationResidual:
    mp = ctx.mp
    x, y = pt.x.to_mp(mp), pt.y.to_mp(mp)
    X, Y = ctx.cnum(pair.X), ctx.cnum(pair.Y)
    u2, v2 = _uv(X, Y)
    r1 = abs(-x * y - u2)
    if v2 is None:
        # X = Y forces xy = 0; the second relation only constrains x/y then
        r2 = abs(4 * x / y) if x == 0 else mp.inf
    else:
        r2 = abs(1 + 4 * x / y - v2)
    return RelationResidual(r1, r2)


def _system(pt: SeriesPoint):
    """Cleared polynomials (f1, f2) as functions with their Jacobians."""

    def evaluate(X, Y, c, a):
        # c = 16xy, a = 1 + 4x/y
        S, P, T, U = X - Y, 1 + X * Y, X + Y, 1 - X * Y
        f1 = S * S + c * P * P
        f2 = a * S * S * P * P - T * T * U * U
        j11 = 2 * S + 2 * c * Y * P
        j12 = -2 * S + 2 * c * X * P
        j21 = a * (2 * S * P * P + 2 * S * S * P * Y) - (2 * T * U * U - 2 * T * T * U * Y)
        j22 = a * (-2 * S * P * P + 2 * S * S * P * X) - (2 * T * U * U - 2 * T * T * U * X)
        return (f1, f2), ((j11, j12), (j21, j22))

    return evaluate


def _newton(X, Y, pt: SeriesPoint, ctx: PrecisionContext, steps: int = 200):
    mp = ctx.mp
    x, y = pt.x.to_mp(mp), pt.y.to_mp(mp)
    c, a = 16 * x * y, 1 + 4 * x / y
    ev = _system(pt)
    for _ in range(steps):
        (f1, f2), ((j11, j12), (j21, j22)) = ev(X, Y, c, a)
        det = j11 * j22 - j12 * j21
        if det == 0:
            break
        dX = (f1 * j22 - f2 * j12) / det
        dY = (j11 * f2 - j21 * f1) / det
        X, Y = X - dX, Y - dY
        if abs(dX) + abs(dY) < mp.mpf(10) ** (-mp.dps + 5):
            break
    return X, Y


def _sym(v: GaussianRational):
    return sympy.Rational(v.re.numerator, v.re.denominator) + sympy.I * sympy.Rational(
        v.im.numerator, v.im.denominator
    )


def _resultant_factors(pt: SeriesPoint):
    Xs, Ys = sympy.symbols("X Y")
    x, y = _sym(pt.x), _sym(pt.y)
    f1 = sympy.Poly((Xs - Ys) ** 2 + 16 * x * y * (1 + Xs * Ys) ** 2, Ys, Xs, domain="QQ_I")
    f2 = sympy.Poly(
        (y + 4 * x) * (Xs - Ys) ** 2 * (1 + Xs * Ys) ** 2 - y * (Xs + Ys) ** 2 * (1 - Xs * Ys) ** 2,
        Ys, Xs, domain="QQ_I",
    )
    res = sympy.Poly(sympy.resultant(f1, f2, Ys), Xs, domain="QQ_I")
    if res.is_zero:
        raise ValueError(f"relations are dependent at {pt}")
    return [f for f, _ in res.factor_list()[1] if f.degree() > 0]


def _mp_coeffs(poly, mp):
    out = []
    for cf in poly.all_coeffs():
        re, im = sympy.re(cf), sympy.im(cf)
        out.append(mp.mpc(mp.mpf(re.p) / re.q, mp.mpf(im.p) / im.q))
    return out


def solve_xy(pt: SeriesPoint, ctx: PrecisionContext) -> List[List[XYPair]]:
    """All solutions (X, Y) of the two relations, grouped into symmetry orbits."""
    conv = converges_absolutely(pt.x, pt.y)
    if not conv.converges:
        raise ValueError(f"{pt} is outside the convergence domain")
    mp = ctx.mp
    x, y = pt.x.to_mp(mp), pt.y.to_mp(mp)
    c = 16 * x * y
    accept = mp.mpf(10) ** (-(mp.dps - 10))
    dedup = mp.mpf(10) ** (-(mp.dps // 4))
    found: List[XYPair] = []
    for factor in _resultant_factors(pt):
        coeffs = _mp_coeffs(factor, mp)
        if len(coeffs) == 2:
            roots = [-coeffs[1] / coeffs[0]]
        else:
            roots = mp.polyroots(coeffs, maxsteps=400, extraprec=4 * mp.prec)
        for X in roots:
            # f1 is quadratic in Y: (c X^2 + 1) Y^2 + (2cX - 2X) Y + (X^2 + c) = 0
            qa, qb, qc = c * X * X + 1, 2 * c * X - 2 * X, X * X + c
            if qa == 0:
                cands = [-qc / qb] if qb != 0 else []
            else:
                disc = mp.sqrt(qb * qb - 4 * qa * qc)
                cands = [(-qb + disc) / (2 * qa), (-qb - disc) / (2 * qa)]
            for Y in cands:
                Xp, Yp = _newton(mp.mpc(X), mp.mpc(Y), pt, ctx)
                if abs(1 + Xp * Yp) < dedup or abs(Xp - Yp) < dedup:
                    continue
                pair = XYPair(Xp, Yp, "solved")
                if relations_residual(pair, pt, ctx).worst > accept:
                    continue
                if not any(pair.close_to(q, dedup) for q in found):
                    found.append(pair)
    if not found:
        raise ValueError(f"no solution of the relations found at {pt}")
    orbits: List[List[XYPair]] = []
    for pair in found:
        if any(any(pair.close_to(q, dedup) for q in orb) for orb in orbits):
            continue
        orb = symmetry_orbit(pair, include_conjugate=pt.x.is_real and pt.y.is_real, tol=dedup)
        orbits.append([q for q in found if any(q.close_to(o, dedup) for o in orb)])
    return orbits


def _twist(z):
    return (1 - z) / (1 + z)


def symmetry_orbit(pair: XYPair, include_conjugate: bool = False, tol=None) -> List[XYPair]:
    """Closure of ``pair`` under negation, inversion, swap, the twist (1-z)/(1+z)
    and, for real (x, y), complex conjugation.  Images with a pole are dropped."""
    if tol is None:
        digits = mpmath.mp.dps
        if hasattr(pair.X, "context"):
            digits = pair.X.context.dps
        tol = mpmath.mpf(10) ** (-(digits // 4))
    moves = [
        lambda X, Y: (-X, -Y),
        lambda X, Y: (1 / X, 1 / Y),
        lambda X, Y: (Y, X),
        lambda X, Y: (_twist(X), _twist(Y)),
    ]
    if include_conjugate:
        moves.append(lambda X, Y: (X.conjugate(), Y.conjugate()))
    seed = XYPair(pair.X, pair.Y, pair.provenance)
    orbit = [seed]
    frontier = [seed]
    while frontier:
        nxt = []
        for p in frontier:
            for mv in moves:
                try:
                    X, Y = mv(p.X, p.Y)
                    q = XYPair(X, Y, "orbit")
                except (ZeroDivisionError, ValueError):
                    continue
                if not any(q.close_to(o, tol) for o in orbit):
                    orbit.append(q)
                    nxt.append(q)
        frontier = nxt
        if len(orbit) > 64:
            raise RuntimeError("symmetry orbit failed to close")
    return orbit


def _argument(z, ctx: PrecisionContext, side: Optional[str]):
    """1 - z^2, snapped onto the real axis when it lies on the cut within tolerance."""
    a = 1 - z * z
    if a.real > 1 and abs(a.imag) < ctx.tol:
        if side is None:
            raise BranchCutError(f"argument {ctx.mp.nstr(a, 10)} lies on the cut [1, oo)")
        return ctx.mp.mpf(a.real)
    return a


def _fg_pair(pair: XYPair, ctx: PrecisionContext, side: Optional[str]):
    X, Y = ctx.cnum(pair.X), ctx.cnum(pair.Y)
    fa, ga = hyp_FG(_argument(X, ctx, side), ctx, side)
    fb, gb = hyp_FG(_argument(Y, ctx, side), ctx, side)
    return X, Y, fa, ga, fb, gb


def wz_product(pair: XYPair, ctx: PrecisionContext, side: Optional[str] = None) -> BoundedValue:
    """(1 + XY)/2 * F(1 - X^2) * F(1 - Y^2).

    When an argument lies on the cut, ``side`` ("above" or "below") picks the
    boundary value; without it a :class:`BranchCutError` is raised.
    """
    X, Y, fa, _, fb, _ = _fg_pair(pair, ctx, side)
    return fa * fb * ((1 + X * Y) / 2)


def dxy_dx(pair: XYPair, pt: SeriesPoint, ctx: PrecisionContext):
    """(dX/dx, dY/dx) along fixed y, from the differentiated relations."""
    mp = ctx.mp
    y = pt.y.to_mp(mp)
    X, Y = ctx.cnum(pair.X), ctx.cnum(pair.Y)
    S, P = X - Y, 1 + X * Y
    k1 = S / (8 * P**3)
    k2 = 4 * (X + Y) * (1 - X * Y) / (S * P) ** 3
    a11, a12 = k1 * (1 + Y * Y), -k1 * (1 + X * X)
    a21 = -k2 * Y * (1 + X * X) * (1 - Y * Y)
    a22 = k2 * X * (1 + Y * Y) * (1 - X * X)
    det = a11 * a22 - a12 * a21
    if abs(det) < ctx.tol:
        raise ValueError("singular system for dX/dx, dY/dx")
    b1, b2 = -y, 4 / y
    return (b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det


@dataclass(frozen=True)
class HyperDerivative:
    """dA/dx = c_ff F(a)F(b) + c_gf G(a)F(b) + c_fg F(a)G(b), a = 1 - X^2, b = 1 - Y^2."""

    c_ff: Any
    c_gf: Any
    c_fg: Any
    dX: Any
    dY: Any
    value: BoundedValue = field(compare=False)


def d_a_dx_hyper(pair: XYPair, pt: SeriesPoint, ctx: PrecisionContext,
                 side: Optional[str] = None) -> HyperDerivative:
    X, Y, fa, ga, fb, gb = _fg_pair(pair, ctx, side)
    dX, dY = dxy_dx(pair, pt, ctx)
    P = 1 + X * Y
    c_ff = (Y * dX + X * dY) / 2
    c_gf = -X * P / (1 - X * X) * dX
    c_fg = -Y * P / (1 - Y * Y) * dY
    value = fa * fb * c_ff + ga * fb * c_gf + fa * gb * c_fg
    return HyperDerivative(c_ff, c_gf, c_fg, dX, dY, value)


# ---------------------------------------------------------------------------
# Continuation along X_t = (1 - t) X + t, Y_t = (1 - t) Y + t
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathCertificate:
    grid: int
    max_ratio: float
    min_abs_real: float
    ratio_bound: float
    estimates: Tuple[Tuple[str, float, float], ...]

    @property
    def ok(self) -> bool:
        return (
            self.max_ratio <= self.ratio_bound
            and self.min_abs_real > 0
            and all(v <= b for _, v, b in self.estimates)
        )


def _pred_from_xy(X, Y):
    u2, v2 = _uv(X, Y)
    a = float(abs(v2 - 1))
    return 16 * float(abs(u2)) * (math.sqrt(a) + math.sqrt(1 + a)) ** 2


def path_estimates(pair: XYPair):
    """Bounds controlling the whole path, each with the threshold it must meet."""
    X, Y = pair.X, pair.Y
    e1 = abs(1 - X * Y) + abs(1 - X) * abs(1 - Y)
    lower = 2 - e1
    big_a = abs((1 - X * Y) / (X - Y))
    eps1 = abs((1 - X) * (1 - Y) / (X - Y))
    eps2 = abs((1 - X) * (1 - Y)) / lower
    xy_half = abs(X - Y) / (4 * lower)
    slack = (big_a + eps1) ** 2 * (1 + eps2) ** 2 - big_a**2
    q = abs(((1 - X * Y) / (X - Y)) ** 2 - 1) + slack
    return (
        ("|1-XY| + |1-X||1-Y|", float(e1), 0.92),
        ("|xy|^(1/2) along the path", float(xy_half), 0.22),
        ("epsilon_1", float(eps1), 0.00022),
        ("epsilon_2", float(eps2), 0.00019),
        ("|(1-XY)/(X-Y)|", float(big_a), 1.00042),
        ("|4x/y| along the path", float(q), 0.0017),
    )


def certify_path(pair: XYPair, grid: int = 64, ratio_bound: float = 0.85) -> PathCertificate:
    """Sample t = j/grid, j < grid, checking absolute convergence at (x_t, y_t)
    and that neither X_t nor Y_t is purely imaginary (so 1 - X_t^2, 1 - Y_t^2
    avoid the cut)."""
    X, Y = pair.X, pair.Y
    worst, min_re = 0.0, math.inf
    for j in range(grid):
        t = mpmath.mpf(j) / grid
        Xt, Yt = (1 - t) * X + t, (1 - t) * Y + t
        worst = max(worst, _pred_from_xy(Xt, Yt))
        min_re = min(min_re, float(abs(Xt.real)), float(abs(Yt.real)))
    return PathCertificate(grid, worst, min_re, ratio_bound, path_estimates(pair))
