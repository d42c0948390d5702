"""Reciprocal hypotenuse 1/sqrt(x^2 + y^2), naive and compensated.

The compensated variant cannot rely on the sum of squares being exactly
representable, so it carries the sum as an unevaluated pair (s, s_e):
the Fast2Sum recovery of the addition error plus the two FMA-extracted
squaring errors.  The reciprocal's residual and the square root's
residual are then folded into one correction of rho = RN(sqrt(RN(1/s))).

Inputs of wildly different or extreme magnitude can push s = x^2 + y^2
out of the normal range.  The naive variant reports that as a range
error and leaves rescaling to the caller; the compensated variant
retries once with both inputs scaled by an exact power of 4 and scales
the result back.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from . import _kernels
from .fp_core import DomainError, RangeError, split_pow4

__all__ = ["SumSquares", "sum_squares_ee", "rhypot_naive", "rhypot_compensated"]

_SMALLEST_NORMAL = 2.0**-1022


class SumSquares(NamedTuple):
    """x^2 + y^2 as the unevaluated sum s + s_e.

    s is the rounded sum of the rounded squares; s_e collects the three
    rounding errors.  When those errors are themselves exact, s + s_e
    equals x^2 + y^2 exactly; in general the pair is accurate to O(u^2)
    relative error.
    """

    s: float
    s_e: float


def _is_normal(v: float) -> bool:
    return math.isfinite(v) and abs(v) >= _SMALLEST_NORMAL


def _check_pair(x: float, y: float, what: str) -> None:
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"{what} requires finite inputs, got {x!r}, {y!r}")
    if x == 0.0 and y == 0.0:
        raise DomainError(f"{what} is undefined at (0, 0)")


def sum_squares_ee(x: float, y: float) -> SumSquares:
    """Error-compensated sum of squares for ordered inputs x >= y > 0."""
    if not (x >= y > 0.0) or not math.isfinite(x):
        raise DomainError(f"sum_squares_ee requires x >= y > 0, got {x!r}, {y!r}")
    return SumSquares(*_kernels.sum_squares_ee(x, y))


def rhypot_naive(x: float, y: float) -> float:
    """RN(sqrt(RN(1/RN(x^2 + y^2)))), the uncompensated route."""
    _check_pair(x, y, "rhypot_naive")
    v, s, r = _kernels.rhypot_naive_core(x, y)
    if not (_is_normal(s) and _is_normal(r) and _is_normal(v)):
        raise RangeError(
            f"x^2 + y^2 leaves the normal range for {x!r}, {y!r}; caller rescales"
        )
    return v


def rhypot_compensated(x: float, y: float) -> float:
    """Compensated reciprocal hypotenuse; equals RN(1/sqrt(x^2+y^2)) in
    practice on well-scaled inputs (correctness of the correction, not
    correct rounding, is the guarantee).

    Symmetric in x, y and insensitive to signs by construction.  On
    intermediate over/underflow the pair is rescaled by an exact power
    of 4 and the computation retried once.
    """
    _check_pair(x, y, "rhypot_compensated")
    v, s, r = _kernels.rhypot_compensated_core(x, y)
    if _is_normal(s) and _is_normal(r) and _is_normal(v):
        return v
    # rescale so the larger magnitude lands in [1, 4), exactly
    _, k = split_pow4(max(abs(x), abs(y)))
    xs = math.ldexp(x, -2 * k)
    ys = math.ldexp(y, -2 * k)
    v, _, _ = _kernels.rhypot_compensated_core(xs, ys)
    try:
        out = math.ldexp(v, -2 * k)
    except OverflowError:
        raise RangeError(
            f"rhypot result for {x!r}, {y!r} not representable"
        ) from None
    if not _is_normal(out) or math.ldexp(out, 2 * k) != v:
        raise RangeError(f"rhypot result for {x!r}, {y!r} not representable")
    return out
