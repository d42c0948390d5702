"""Exact dyadic-rational arithmetic (m * 2**e with unbounded integer m).

Every finite binary64 value is a dyadic rational, so sums, products, and
comparisons of float-derived values can be carried out with no rounding at
all.  This is the number system behind the correct-rounding oracle: instead
of an extended-precision library (whose results pass through two roundings),
all rounding decisions reduce to exact integer comparisons.
"""

from __future__ import annotations

import math
import struct
from fractions import Fraction

__all__ = ["DyadicRational"]

_EXP_MASK = 0x7FF
_FRAC_MASK = (1 << 52) - 1


def _decompose(x: float) -> tuple[int, int]:
    """Return (m, e) with x == m * 2**e exactly, m == 0 only for x == 0.

    Works for normals and subnormals; the pair is not normalized.
    """
    bits = struct.unpack("<Q", struct.pack("<d", x))[0]
    sign = -1 if bits >> 63 else 1
    biased = (bits >> 52) & _EXP_MASK
    frac = bits & _FRAC_MASK
    if biased == _EXP_MASK:
        raise ValueError(f"non-finite value has no dyadic form: {x!r}")
    if biased == 0:
        return sign * frac, -1074
    return sign * ((1 << 52) | frac), biased - 1075


def _round_to_float(m: int, e: int) -> float:
    """Round m * 2**e to the nearest binary64 (ties to even).

    Relies on CPython's correctly rounded int/int true division; overflow
    beyond the binary64 range maps to +/-inf.
    """
    if m == 0:
        return 0.0
    try:
        if e >= 0:
            return float(m << e)
        return m / (1 << -e)
    except OverflowError:
        return math.inf if m > 0 else -math.inf


class DyadicRational:
    """Immutable exact value m * 2**e, kept canonical (m odd, or m = e = 0)."""

    __slots__ = ("m", "e")

    def __init__(self, mantissa: int, exponent: int = 0):
        if mantissa == 0:
            object.__setattr__(self, "m", 0)
            object.__setattr__(self, "e", 0)
        else:
            shift = (mantissa & -mantissa).bit_length() - 1
            object.__setattr__(self, "m", mantissa >> shift)
            object.__setattr__(self, "e", exponent + shift)

    def __setattr__(self, name, value):
        raise AttributeError("DyadicRational is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_float(cls, x: float) -> "DyadicRational":
        """Exact conversion; raises ValueError for inf/nan."""
        return cls(*_decompose(x))

    @classmethod
    def from_int(cls, n: int) -> "DyadicRational":
        return cls(n, 0)

    # -- accessors ---------------------------------------------------------

    @property
    def mantissa(self) -> int:
        return self.m

    @property
    def exponent(self) -> int:
        return self.e

    def is_zero(self) -> bool:
        return self.m == 0

    def sign(self) -> int:
        return (self.m > 0) - (self.m < 0)

    def as_fraction(self) -> Fraction:
        if self.e >= 0:
            return Fraction(self.m << self.e)
        return Fraction(self.m, 1 << -self.e)

    def exact_float(self) -> float:
        """Convert back to binary64; raises ValueError if not representable."""
        x = _round_to_float(self.m, self.e)
        if not math.isfinite(x) or DyadicRational.from_float(x) != self:
            raise ValueError(f"{self!r} is not representable in binary64")
        return x

    def round_float(self) -> float:
        """Round to the nearest binary64, ties to even."""
        return _round_to_float(self.m, self.e)

    # -- arithmetic (always exact) ----------------------------------------

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.m, self.e)

    def __abs__(self) -> "DyadicRational":
        return DyadicRational(abs(self.m), self.e)

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        if not isinstance(other, DyadicRational):
            return NotImplemented
        if self.m == 0:
            return other
        if other.m == 0:
            return self
        if self.e >= other.e:
            return DyadicRational((self.m << (self.e - other.e)) + other.m, other.e)
        return DyadicRational(self.m + (other.m << (other.e - self.e)), self.e)

    def __sub__(self, other: "DyadicRational") -> "DyadicRational":
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "DyadicRational") -> "DyadicRational":
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return DyadicRational(self.m * other.m, self.e + other.e)

    def scale_pow2(self, k: int) -> "DyadicRational":
        """Exact multiplication by 2**k."""
        if self.m == 0:
            return self
        return DyadicRational(self.m, self.e + k)

    def halve(self) -> "DyadicRational":
        return self.scale_pow2(-1)

    # -- comparisons (exact total order) ----------------------------------

    def compare(self, other: "DyadicRational") -> int:
        """Return -1, 0, or +1 as self <, ==, > other."""
        d = self - other
        return d.sign()

    def __eq__(self, other) -> bool:
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return self.m == other.m and self.e == other.e

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    def __hash__(self):
        return hash((self.m, self.e))

    def __repr__(self) -> str:
        return f"DyadicRational({self.m}, {self.e})"
