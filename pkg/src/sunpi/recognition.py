"""Integer-relation recognition of algebraic constants and polynomial certificates.

Relations are found with LLL (fpylll) on the lattice spanned by the rows
``e_i | N Re(v^i) | N Im(v^i)``; real inputs drop the imaginary column.
Degrees are tried in increasing order, so the first accepted polynomial is
minimal within the budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from fpylll import LLL, IntegerMatrix

from .precision import BoundedValue, PrecisionContext, Verdict


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        cs = [int(c) for c in self.coefficients]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs or cs[-1] == 0:
            raise ValueError("the zero polynomial is not admitted")
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(reversed(list(coeffs))))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def content(self) -> int:
        return math.gcd(*self.coefficients)

    def normalized(self) -> "IntPolynomial":
        """Primitive, with positive leading coefficient."""
        g = self.content
        sign = -1 if self.coefficients[-1] < 0 else 1
        return IntPolynomial(tuple(sign * c // g for c in self.coefficients))

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def derivative_bound(self, radius):
        """sum |j c_j| radius^(j-1), a bound for |P'| on the disk of that radius."""
        return sum(abs(j * c) * radius ** (j - 1) for j, c in enumerate(self.coefficients) if j)

    def height(self) -> int:
        return max(abs(c) for c in self.coefficients)

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def rational_roots(self):
        """Rational roots p/q by the rational root test."""
        from fractions import Fraction

        cs = self.coefficients
        lead, const = cs[-1], cs[0]
        if const == 0:
            return [Fraction(0)] + IntPolynomial(cs[1:]).rational_roots()
        roots = []
        for p in _divisors(abs(const)):
            for q in _divisors(abs(lead)):
                for s in (1, -1):
                    r = Fraction(s * p, q)
                    if r not in roots and self._exact_at(r) == 0:
                        roots.append(r)
        return roots

    def _exact_at(self, r):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * r + c
        return acc

    def __str__(self):
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coefficients[j]
            if c == 0:
                continue
            mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            coef = str(c) if (abs(c) != 1 or j == 0) else ("-" if c < 0 else "")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _divisors(n: int):
    if n > 10**12:
        raise ValueError("rational root test limited to coefficients below 10^12")
    small = [d for d in range(1, int(math.isqrt(n)) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@dataclass(frozen=True)
class RecognitionBudget:
    max_degree: int
    max_coeff_digits: int
    confidence_margin: float = 20

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max_degree must be at least 1")
        if self.max_coeff_digits < 1:
            raise ValueError("max_coeff_digits must be at least 1")
        if not self.confidence_margin > 10:
            raise ValueError("confidence_margin must exceed 10")

    @property
    def required_digits(self) -> float:
        return self.max_degree * self.max_coeff_digits + self.confidence_margin


class InsufficientPrecisionError(ValueError):
    pass


def _accuracy_digits(v: BoundedValue, ctx: PrecisionContext) -> float:
    mp = ctx.mp
    err = mp.mpf(v.err)
    limit = ctx.working_digits - 5
    if err == 0:
        return limit
    return min(limit, float(-mp.log10(err)))


def _lattice_candidates(v, degree: int, scale_digits: int, ctx: PrecisionContext):
    mp = ctx.mp
    N = mp.mpf(10) ** scale_digits
    is_complex = isinstance(v, mp.mpc) and v.imag != 0
    powers = [mp.mpf(1)]
    for _ in range(degree):
        powers.append(powers[-1] * v)
    rows = []
    for i, p in enumerate(powers):
        row = [0] * (degree + 1)
        row[i] = 1
        pc = mp.mpc(p)
        row.append(int(mp.nint(N * pc.real)))
        if is_complex:
            row.append(int(mp.nint(N * pc.imag)))
        rows.append(row)
    M = IntegerMatrix.from_matrix(rows)
    LLL.reduction(M)
    out = []
    for r in range(M.nrows):
        coeffs = [M[r, j] for j in range(degree + 1)]
        if any(coeffs):
            out.append(coeffs)
    return out


def _relative_residual(coeffs, v, mp):
    P = IntPolynomial(tuple(coeffs)) if any(coeffs[1:]) or coeffs[0] else None
    if P is None:
        return mp.inf
    size = sum(abs(c) * abs(v) ** j for j, c in enumerate(P.coefficients))
    if size == 0:
        # only when v = 0 and P has no constant term, so P(v) = 0
        return mp.mpf(0)
    return abs(P(v)) / size


def recognize_min_poly(
    v: BoundedValue, budget: RecognitionBudget, ctx: PrecisionContext
) -> Optional[IntPolynomial]:
    """Smallest-degree primitive integer polynomial vanishing at ``v``, or None.

    Raises :class:`InsufficientPrecisionError` when ``v`` is not accurate to
    ``budget.required_digits`` digits.
    """
    mp = ctx.mp
    acc = _accuracy_digits(v, ctx)
    if acc < budget.required_digits:
        raise InsufficientPrecisionError(
            f"value known to {acc:.0f} digits; budget needs {budget.required_digits:.0f}"
        )
    x = v.approx
    margin = mp.mpf(10) ** (-budget.confidence_margin)
    for degree in range(1, budget.max_degree + 1):
        scale = int(min(acc - 5, degree * budget.max_coeff_digits + 2 * budget.confidence_margin))
        cands = _lattice_candidates(x, degree, scale, ctx)
        if not cands:
            continue
        best = cands[0]
        if best[-1] == 0 or max(abs(c) for c in best) >= 10**budget.max_coeff_digits:
            continue
        r_best = _relative_residual(best, x, mp)
        r_next = min((_relative_residual(c, x, mp) for c in cands[1:]), default=mp.mpf(1))
        if r_best > margin or r_best > r_next * margin:
            continue
        P = IntPolynomial(tuple(best)).normalized()
        # independent check at the full accuracy of v
        if poly_residual(P, v, ctx) > mp.mpf(10) ** (-(acc - degree * budget.max_coeff_digits)) * P.height():
            continue
        return P
    return None


def poly_residual(P: IntPolynomial, v: BoundedValue, ctx: PrecisionContext):
    """|P(v)| plus a derivative bound times the error of ``v``."""
    mp = ctx.mp
    x = v.approx
    err = mp.mpf(v.err)
    val = abs(P(x))
    if err:
        val += P.derivative_bound(abs(x) + err) * err
    return val


def verify_zero(v: BoundedValue, tol) -> Verdict:
    if not isinstance(v, BoundedValue):
        v = BoundedValue(v, 0)
    return Verdict.VERIFIED if abs(v.approx) + v.err < tol else Verdict.REFUTED


def palindromic_reduce(P: IntPolynomial) -> IntPolynomial:
    """For an even palindromic ``P`` of degree 4m, return ``q`` with
    ``P(z) = z^(2m) q(z^2 + z^-2)``."""
    cs = list(P.coefficients)
    n = P.degree
    if not P.is_palindromic() or n % 4 or any(cs[j] for j in range(1, n + 1, 2)):
        raise ValueError("polynomial is not an even palindromic polynomial of degree 4m")
    m = n // 4
    # work in the variable s = z^2: P = s^m q(s + 1/s), a palindromic degree-2m polynomial
    a = [cs[2 * j] for j in range(2 * m + 1)]
    q = [0] * (m + 1)
    # Laurent coefficients of sum a_j s^(j-m), indices -m..m
    lau = {j - m: a[j] for j in range(2 * m + 1)}
    for deg in range(m, -1, -1):
        b = lau.get(deg, 0)
        q[deg] = b
        # subtract b (s + 1/s)^deg
        for i in range(deg + 1):
            e = deg - 2 * i
            lau[e] = lau.get(e, 0) - b * math.comb(deg, i)
    if any(lau.values()):
        raise ValueError("palindromic reduction left a remainder")
    return IntPolynomial(tuple(q))


def palindromic_lift(q: IntPolynomial) -> IntPolynomial:
    """Inverse of :func:`palindromic_reduce`: coefficients of z^(4m) q(z^2 + z^-2) / z^(2m)."""
    m = q.degree
    lau = {}
    for deg, b in enumerate(q.coefficients):
        for i in range(deg + 1):
            e = deg - 2 * i
            lau[e] = lau.get(e, 0) + b * math.comb(deg, i)
    cs = [0] * (4 * m + 1)
    for e, c in lau.items():
        cs[2 * (e + m)] = c
    return IntPolynomial(tuple(cs))
