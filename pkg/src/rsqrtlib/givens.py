"""Givens rotation generation: c = f/sqrt(f^2+g^2), s = g/sqrt(f^2+g^2).

The rotation zeroes the second component of the vector [f, g].  The
naive route divides by the rounded hypotenuse; the compensated route
reuses the error-compensated sum of squares and reciprocal square root
from the rhypot machinery, then forms each output with a final FMA
c = f*rho + f*nu_bar so the correction is applied in one rounding.

Sign convention: c carries the sign of f and s the sign of g.  The
exceptional cases are handled before any arithmetic: g = 0 maps to
(1, 0) regardless of f's sign (which diverges from some LAPACK
variants), and f = 0 maps to (0, sign(g)).
"""

from __future__ import annotations

import math
from typing import NamedTuple

from . import _kernels
from .fp_core import DomainError, RangeError, split_pow4

__all__ = ["GivensRotation", "dlartg_naive", "dlartg_compensated"]

_SMALLEST_NORMAL = 2.0**-1022


class GivensRotation(NamedTuple):
    """Cosine-sine pair with c^2 + s^2 = 1 up to a few units roundoff."""

    c: float
    s: float


def _is_normal(v: float) -> bool:
    return math.isfinite(v) and abs(v) >= _SMALLEST_NORMAL


def _exceptional(f: float, g: float) -> GivensRotation | None:
    if not (math.isfinite(f) and math.isfinite(g)):
        raise DomainError(f"givens requires finite inputs, got {f!r}, {g!r}")
    if f == 0.0 and g == 0.0:
        raise DomainError("givens rotation is undefined at (0, 0)")
    if g == 0.0:
        return GivensRotation(1.0, 0.0)
    if f == 0.0:
        return GivensRotation(0.0, math.copysign(1.0, g))
    return None


def dlartg_naive(f: float, g: float) -> GivensRotation:
    """Divide both elements by the rounded hypotenuse; within 2 ulp."""
    exc = _exceptional(f, g)
    if exc is not None:
        return exc
    c, s, ssum = _kernels.dlartg_naive_core(f, g)
    if not _is_normal(ssum):
        raise RangeError(
            f"f^2 + g^2 leaves the normal range for {f!r}, {g!r}; caller rescales"
        )
    return GivensRotation(c, s)


def dlartg_compensated(f: float, g: float) -> GivensRotation:
    """Compensated rotation; c and s are each correctly rounded in
    practice on well-scaled inputs.

    The outputs are invariant under scaling f, g by a common power of
    two, so on intermediate over/underflow the inputs are rescaled by an
    exact power of 4 and the computation retried once, with no back
    scaling needed.
    """
    exc = _exceptional(f, g)
    if exc is not None:
        return exc
    c, s, ssum, r = _kernels.dlartg_compensated_core(f, g)
    if _is_normal(ssum) and _is_normal(r):
        return GivensRotation(c, s)
    _, k = split_pow4(max(abs(f), abs(g)))
    fs = math.ldexp(f, -2 * k)
    gs = math.ldexp(g, -2 * k)
    c, s, ssum, r = _kernels.dlartg_compensated_core(fs, gs)
    if not (_is_normal(ssum) and _is_normal(r)):
        raise RangeError(f"givens intermediates for {f!r}, {g!r} not representable")
    return GivensRotation(c, s)
