"""Working precision and tail-bounded summation.

Every numerical routine in the package takes a :class:`PrecisionContext`.
The context owns a private mpmath ``MPContext`` so that evaluations at
different precisions never interfere through ``mpmath.mp`` global state.

Series are summed by :func:`sum_with_tail`, which stops once a geometric
majorant of the remaining terms drops below a quarter of the context
tolerance and reports that majorant as the truncation error.  Rounding
error is not tracked; instead the working precision is kept at twice the
number of digits demanded by the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional

import mpmath

MIN_DIGITS = 20
MAX_TERMS = 10**6


class Verdict(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


class TailModelError(RuntimeError):
    """Raised when a series does not reach its tail bound in MAX_TERMS terms."""


@dataclass(frozen=True)
class PrecisionContext:
    working_digits: int
    target_tolerance: Any
    mp: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.working_digits < 1:
            raise ValueError("working_digits must be positive")
        mp = mpmath.MPContext()
        mp.dps = self.working_digits
        tol = mp.mpf(self.target_tolerance)
        if not tol > 0:
            raise ValueError("target_tolerance must be positive")
        required = -2 * math.log10(float(tol))
        if self.working_digits < required - 1e-9:
            raise ValueError(
                f"{self.working_digits} digits cannot support tolerance "
                f"{self.target_tolerance}: need at least {required:.1f}"
            )
        object.__setattr__(self, "mp", mp)
        object.__setattr__(self, "target_tolerance", tol)

    def __reduce__(self):
        tol = self.mp.nstr(self.target_tolerance, self.working_digits)
        return (_rebuild_context, (self.working_digits, tol))

    @property
    def tol(self):
        return self.target_tolerance

    def with_digits(self, digits: int) -> "PrecisionContext":
        return ctx_new(digits)

    def num(self, value) -> Any:
        """Convert ``value`` to a real or complex number of this context."""
        if isinstance(value, (complex, mpmath.mpc)) or hasattr(value, "_mpc_"):
            return self.mp.mpc(value)
        return self.mp.mpf(value)

    def cnum(self, value) -> Any:
        return self.mp.mpc(value)


def _rebuild_context(digits: int, tol: str) -> PrecisionContext:
    return PrecisionContext(digits, tol)


def ctx_new(digits: int) -> PrecisionContext:
    """Context with ``digits`` working digits and tolerance ``10**(-digits/2)``."""
    if int(digits) != digits or digits < MIN_DIGITS:
        raise ValueError(f"precision must be an integer >= {MIN_DIGITS} digits, got {digits}")
    digits = int(digits)
    mp = mpmath.MPContext()
    mp.dps = digits
    return PrecisionContext(digits, mp.power(10, mp.mpf(-digits) / 2))


@dataclass(frozen=True)
class BoundedValue:
    """Approximation plus an upper bound on its truncation error."""

    approx: Any
    err: Any = 0

    def __post_init__(self):
        if self.err < 0 or not mpmath.isfinite(self.err):
            raise ValueError(f"error bound must be finite and non-negative, got {self.err}")

    def __add__(self, other: "BoundedValue") -> "BoundedValue":
        other = _as_bounded(other)
        return BoundedValue(self.approx + other.approx, self.err + other.err)

    __radd__ = __add__

    def __sub__(self, other: "BoundedValue") -> "BoundedValue":
        other = _as_bounded(other)
        return BoundedValue(self.approx - other.approx, self.err + other.err)

    def __rsub__(self, other) -> "BoundedValue":
        return _as_bounded(other) - self

    def __neg__(self) -> "BoundedValue":
        return BoundedValue(-self.approx, self.err)

    def __mul__(self, other) -> "BoundedValue":
        other = _as_bounded(other)
        err = abs(self.approx) * other.err + abs(other.approx) * self.err + self.err * other.err
        return BoundedValue(self.approx * other.approx, err)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BoundedValue":
        other = _as_bounded(other)
        den = abs(other.approx) - other.err
        if den <= 0:
            raise ZeroDivisionError("divisor interval contains zero")
        q = self.approx / other.approx
        return BoundedValue(q, (self.err + abs(q) * other.err) / den)

    def __rtruediv__(self, other) -> "BoundedValue":
        return _as_bounded(other) / self

    def __pow__(self, n: int) -> "BoundedValue":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = BoundedValue(1, 0)
        for _ in range(n):
            out = out * self
        return out

    def __abs__(self):
        return abs(self.approx)


def _as_bounded(v) -> BoundedValue:
    return v if isinstance(v, BoundedValue) else BoundedValue(v, 0)


@dataclass(frozen=True)
class GeometricTailModel:
    """Terms (or their majorants) shrink by at least ``ratio`` from ``onset_index`` on."""

    ratio: Any
    onset_index: int = -1

    def __post_init__(self):
        if not 0 <= self.ratio < 1:
            raise ValueError(f"tail ratio must lie in [0, 1), got {self.ratio}")
        if self.onset_index < 0:
            object.__setattr__(self, "onset_index", default_onset(self.ratio))


def default_onset(ratio) -> int:
    return 2 * int(math.ceil(1 / (1 - float(ratio))))


def sum_with_tail(
    term: Callable[[int], Any],
    model: GeometricTailModel,
    ctx: PrecisionContext,
    majorant: Optional[Callable[[int, Any], Any]] = None,
    start: int = 0,
) -> BoundedValue:
    """Sum ``term(k)`` for ``k >= start`` until the geometric tail is below ``ctx.tol/4``.

    ``majorant(k, t)`` must return an upper bound for ``|term(k)|`` (``t`` is the
    computed term) that itself obeys the tail model.  It defaults to ``|t|``.
    """
    mp = ctx.mp
    ratio = mp.mpf(model.ratio)
    factor = ratio / (1 - ratio)
    goal = ctx.tol / 4
    total = mp.mpf(0)
    for k in range(start, start + MAX_TERMS):
        t = term(k)
        total += t
        if k < model.onset_index:
            continue
        size = abs(t) if majorant is None else majorant(k, t)
        bound = size * factor
        if bound < goal:
            return BoundedValue(total, bound)
    raise TailModelError(
        f"series did not reach tail bound {mp.nstr(goal, 5)} within {MAX_TERMS} terms "
        f"(ratio {mp.nstr(ratio, 8)})"
    )


def bounded_eq(a: BoundedValue, b: BoundedValue, tol) -> Verdict:
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    a, b = _as_bounded(a), _as_bounded(b)
    gap = abs(a.approx - b.approx)
    slack = a.err + b.err
    if gap + slack < tol:
        return Verdict.VERIFIED
    if gap - slack > tol:
        return Verdict.REFUTED
    return Verdict.INCONCLUSIVE


def verdict_for_residual(residual, tol) -> Verdict:
    """Verdict for a residual that should vanish (``residual`` includes its error bound)."""
    return Verdict.VERIFIED if residual < tol else Verdict.REFUTED
