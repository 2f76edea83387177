from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sunpi.numbers import GaussianRational, QuadraticIrrational, is_squarefree, squarefree_split

fracs = st.fractions(min_value=-100, max_value=100, max_denominator=1000)
gauss = st.builds(GaussianRational, fracs, fracs)


@given(gauss, gauss)
def test_field_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(gauss)
def test_json_round_trip(a):
    assert GaussianRational.from_json(a.to_json()) == a


def test_float_complex_rejected():
    with pytest.raises(TypeError):
        GaussianRational.of(1j)


@given(st.integers(min_value=1, max_value=10**6))
def test_squarefree_split(n):
    s, d = squarefree_split(n)
    assert s * s * d == n and is_squarefree(d)


def test_tau0_from_radical():
    q = QuadraticIrrational.from_radical(Fraction(1, 2), Fraction(3, 2), Fraction(1, 5))
    assert q == QuadraticIrrational(Fraction(1, 2), Fraction(3, 10), 5)
    assert q.min_poly() == (10, -10, 7)
    mp = mpmath.MPContext()
    mp.dps = 50
    v = q.value(mp)
    assert abs(10 * v**2 - 10 * v + 7) < mp.mpf(10) ** -45


def test_quadratic_validation():
    with pytest.raises(ValueError):
        QuadraticIrrational(0, 1, 4)
    with pytest.raises(ValueError):
        QuadraticIrrational(0, -1, 5)
    with pytest.raises(ValueError):
        QuadraticIrrational(0, 0, 5)
