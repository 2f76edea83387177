"""Exact Gaussian rationals and quadratic irrationalities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rationalish = Union[int, Fraction, str]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, dict):
        return Fraction(int(v["num"]), int(v["den"]))
    return Fraction(v)


@dataclass(frozen=True)
class GaussianRational:
    """``re + im*i`` with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @classmethod
    def of(cls, v) -> "GaussianRational":
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, complex):
            raise TypeError("use exact parts, not a float complex")
        if isinstance(v, tuple):
            return cls(*v)
        return cls(_frac(v), Fraction(0))

    def __add__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussianRational.of(o))

    def __rsub__(self, o):
        return GaussianRational.of(o) - self

    def __mul__(self, o):
        o = GaussianRational.of(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        o = GaussianRational.of(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        q = self * o.conjugate()
        return GaussianRational(q.re / n, q.im / n)

    def __rtruediv__(self, o):
        return GaussianRational.of(o) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self) -> float:
        return math.sqrt(float(self.norm()))

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def integer_form(self):
        """Return ``(u, v, d)`` with ``self == (u + v*i)/d`` and integer ``d > 0``."""
        d = math.lcm(self.re.denominator, self.im.denominator)
        return int(self.re * d), int(self.im * d), d

    def to_mp(self, mp):
        return mp.mpc(mp.mpf(self.re.numerator) / self.re.denominator,
                      mp.mpf(self.im.numerator) / self.im.denominator)

    def to_json(self) -> dict:
        return {
            "re": {"num": self.re.numerator, "den": self.re.denominator},
            "im": {"num": self.im.numerator, "den": self.im.denominator},
        }

    @classmethod
    def from_json(cls, d: dict) -> "GaussianRational":
        return cls(_frac(d["re"]), _frac(d["im"]))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        return f"{self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i"


def squarefree_split(n: int):
    """Write ``n > 0`` as ``s**2 * d`` with ``d`` square-free; returns ``(s, d)``."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, d, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return s, d * n


def is_squarefree(n: int) -> bool:
    return n > 0 and squarefree_split(n)[0] == 1


@dataclass(frozen=True)
class QuadraticIrrational:
    """``a + b*i*sqrt(d)`` with rational ``a, b`` and square-free ``d > 0``.

    Only points in the upper half-plane (``b > 0``) are admitted.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        if self.b == 0:
            raise ValueError("b must be nonzero")
        if not is_squarefree(self.d):
            raise ValueError(f"d={self.d} is not square-free")
        if self.b < 0:
            raise ValueError("point must lie in the upper half-plane")

    @classmethod
    def from_radical(cls, a, coeff, radicand) -> "QuadraticIrrational":
        """Build ``a + coeff*i*sqrt(radicand)`` for a rational radicand, as printed in tables."""
        a, coeff, r = _frac(a), _frac(coeff), _frac(radicand)
        if r <= 0:
            raise ValueError("radicand must be positive")
        # sqrt(p/q) = sqrt(p*q)/q
        s, d = squarefree_split(r.numerator * r.denominator)
        return cls(a, coeff * Fraction(s, r.denominator), d)

    def value(self, mp):
        return mp.mpc(mp.mpf(self.a.numerator) / self.a.denominator,
                      mp.mpf(self.b.numerator) / self.b.denominator * mp.sqrt(self.d))

    def scale(self, n: int) -> "QuadraticIrrational":
        return QuadraticIrrational(self.a * n, self.b * n, self.d)

    def shift(self, n: int) -> "QuadraticIrrational":
        return QuadraticIrrational(self.a + n, self.b, self.d)

    def min_poly(self):
        """Primitive integer ``(A, B, C)`` with ``A*t**2 + B*t + C == 0``."""
        # (t - a)^2 = -b^2 d
        A, B, C = Fraction(1), -2 * self.a, self.a * self.a + self.b * self.b * self.d
        den = math.lcm(A.denominator, B.denominator, C.denominator)
        coeffs = [int(c * den) for c in (A, B, C)]
        g = math.gcd(*coeffs)
        return tuple(c // g for c in coeffs)

    def __str__(self):
        return f"{self.a} + {self.b}*i*sqrt({self.d})"
