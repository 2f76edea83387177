#!/usr/bin/env python3
"""Independent exact-rational partial sums of A(x, y) and of the 520/pi series.

Uses only the standard library, straight from the defining double sum

    A(x, y) = sum_n x^n C(2n, n) sum_k C(n, k)^2 C(2k, n) (-1)^k y^(2k - n),

so it shares no code with the package.  Prints the partial sums as decimals.

    python scripts/brute_force_oracle.py --terms 30 --digits 50
"""

from __future__ import annotations

import argparse
from decimal import Decimal, getcontext
from fractions import Fraction
from math import comb


def row(n: int, y: Fraction) -> Fraction:
    return comb(2 * n, n) * sum(
        comb(n, k) ** 2 * comb(2 * k, n) * (-1) ** k * y ** (2 * k - n) for k in range(n + 1)
    )


def partial_sums(terms: int, x: Fraction = Fraction(1, 480), y: Fraction = Fraction(8),
                 a: int = 1054, b: int = 233):
    """(sum_{n<terms} A_n x^n, sum_{n<terms} (a n + b) A_n x^n), both exact."""
    s_a, s_pi = Fraction(0), Fraction(0)
    for n in range(terms):
        t = row(n, y) * x**n
        s_a += t
        s_pi += (a * n + b) * t
    return s_a, s_pi


def to_decimal(q: Fraction, digits: int) -> str:
    getcontext().prec = digits + 10
    v = Decimal(q.numerator) / Decimal(q.denominator)
    return f"{v:.{digits}f}"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--terms", type=int, default=30)
    ap.add_argument("--digits", type=int, default=50)
    args = ap.parse_args()
    s_a, s_pi = partial_sums(args.terms)
    print(f"terms   {args.terms}")
    print(f"A_N     {to_decimal(s_a, args.digits)}")
    print(f"S_N     {to_decimal(s_pi, args.digits)}")
    getcontext().prec = args.digits + 10
    # 520/pi from the stdlib has no arbitrary-precision pi; print the ratio instead
    print(f"S_N/520 {to_decimal(s_pi / 520, args.digits)}  (compare with 1/pi)")


if __name__ == "__main__":
    main()
