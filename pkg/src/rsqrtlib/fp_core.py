"""Binary64 primitives: single-rounding FMA, ulp arithmetic, bit views, scaling.

Everything downstream assumes round-to-nearest, ties-to-even, and a fused
multiply-add with one rounding.  Importing this module runs a probe that
compares the compiled FMA against an exact software implementation on
discriminating inputs and raises ``RuntimeError`` if the environment cannot
guarantee single rounding.  All functions here are pure and stateless.
"""

from __future__ import annotations

import math
import struct
from typing import NamedTuple

from . import _kernels
from .dyadic import DyadicRational

#: Unit roundoff of binary64 under round-to-nearest, u = 2^-53.
UNIT_ROUNDOFF = 2.0**-53

_SMALLEST_NORMAL = 2.0**-1022
_SMALLEST_SUBNORMAL = 2.0**-1074
_SIGN_BIT = 1 << 63


class DomainError(ValueError):
    """An argument lies outside the function's domain."""


class RangeError(ArithmeticError):
    """A result or intermediate left the safe exponent range; caller rescales."""


class ScaledValue(NamedTuple):
    """x decomposed as m * 4**k with m in [1, 4); the product is exact."""

    m: float
    k: int


def fma_exact(a: float, b: float, c: float) -> float:
    """RN(a*b + c) by exact dyadic arithmetic; the reference for the probe.

    Special cases follow IEEE-754 fusedMultiplyAdd: the product is never
    rounded before the addition, so e.g. a huge finite product plus an
    infinity of the opposite sign is that infinity, not NaN.
    """
    if math.isnan(a) or math.isnan(b) or math.isnan(c):
        return math.nan
    if math.isinf(a) or math.isinf(b):
        if a == 0.0 or b == 0.0:
            return math.nan
        prod_sign = -1.0 if (a < 0.0) != (b < 0.0) else 1.0
        if math.isinf(c) and (c < 0.0) == (prod_sign < 0.0):
            return c
        if math.isinf(c):
            return math.nan
        return math.copysign(math.inf, prod_sign)
    if math.isinf(c):
        return c
    total = DyadicRational.from_float(a) * DyadicRational.from_float(b)
    total = total + DyadicRational.from_float(c)
    if total.is_zero():
        # exact zero: product sign XOR for 0+0, else RN cancellation gives +0
        prod_neg = (math.copysign(1.0, a) < 0.0) != (math.copysign(1.0, b) < 0.0)
        if a * b == 0.0 and c == 0.0:
            return -0.0 if prod_neg and math.copysign(1.0, c) < 0.0 else 0.0
        return 0.0
    return total.round_float()


def fma_rn(a: float, b: float, c: float) -> float:
    """RN(a*b + c) with a single rounding."""
    return _kernels.fma(a, b, c)


def ulp_of(x: float) -> float:
    """Unit in the last place: 2^(e-52) for x in [2^e, 2^(e+1)).

    In the subnormal range the representable spacing stops shrinking, so the
    result floors at 2^-1074.
    """
    if not math.isfinite(x) or x == 0.0:
        raise DomainError(f"ulp_of requires finite nonzero x, got {x!r}")
    ax = abs(x)
    if ax < _SMALLEST_NORMAL:
        return _SMALLEST_SUBNORMAL
    _, e = math.frexp(ax)  # ax in [2**(e-1), 2**e)
    return math.ldexp(1.0, e - 53)


def float_to_bits(x: float) -> int:
    """IEEE-754 binary64 encoding as an unsigned 64-bit integer."""
    return struct.unpack("<Q", struct.pack("<d", x))[0]


def bits_to_float(b: int) -> float:
    """float64 with the given encoding; inverse of float_to_bits."""
    if not 0 <= b <= 0xFFFFFFFFFFFFFFFF:
        raise DomainError(f"bit pattern out of 64-bit range: {b:#x}")
    return struct.unpack("<d", struct.pack("<Q", b))[0]


def _ordered_int(x: float) -> int:
    # Monotone integer key: consecutive floats map to consecutive integers,
    # with -0.0 and +0.0 both at 0.
    b = float_to_bits(x)
    return (_SIGN_BIT - b) if b & _SIGN_BIT else b


def ulp_distance(a: float, b: float) -> int:
    """Count of representable steps between a and b (0 when equal).

    Defined within one sign class; mixing a negative with a positive value
    is a domain error, as is any NaN or infinity.  Zeros of either sign
    compare with both classes.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"ulp_distance requires finite values, got {a!r}, {b!r}")
    if (a < 0.0 < b) or (b < 0.0 < a):
        raise DomainError(f"ulp_distance across a sign change: {a!r}, {b!r}")
    return abs(_ordered_int(a) - _ordered_int(b))


def split_pow4(x: float) -> ScaledValue:
    """Decompose x > 0 as m * 4**k exactly, with m in [1, 4).

    Subnormal x is renormalized exactly; this is the one place subnormals
    are handled, so the kernels can assume inputs in a safe normal range.
    """
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"split_pow4 requires finite x > 0, got {x!r}")
    m0, e = math.frexp(x)  # x = m0 * 2**e, m0 in [0.5, 1)
    k = (e - 1) // 2
    return ScaledValue(math.ldexp(m0, e - 2 * k), k)


_kernels.verify_fma_single_rounding(fma_exact)
