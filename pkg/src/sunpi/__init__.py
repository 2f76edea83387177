"""Arbitrary-precision verification of the 520/pi double series and its
modular parametrization.

Submodules:

- ``precision``: precision contexts, bounded values, tail models
- ``special``: 2F1 values F and G, Legendre polynomials, theta, eta, E2
- ``series``: the double series A(x, y), its single-sum forms and pi-series
- ``wz``: WZ relations for (X, Y), symmetry orbit, derivative formulas
- ``modular``: modular equations, singular values and the E2 chain
- ``recognition``: LLL-based minimal polynomial recovery
- ``harness``: the table registry, verification pipeline and ``verify`` CLI
"""

from __future__ import annotations

from .precision import PrecisionContext, Verdict, ctx_new
from .series import HEADLINE, IV2, SeriesPoint, a_double, a_legendre, eval_pi_series

__all__ = [
    "PrecisionContext",
    "Verdict",
    "ctx_new",
    "HEADLINE",
    "IV2",
    "SeriesPoint",
    "a_double",
    "a_legendre",
    "eval_pi_series",
]
__version__ = "0.1.0"
