"""Reciprocal square root: naive, compensated, and modified kernels.

The naive route computes r = RN(1/x) and then RN(sqrt(r)); taking
sqrt(x) first and dividing can err by more than 1 ulp, so the order is
fixed.  The compensated variant recovers the residual nu_bar, which is
half of (1 - x*y^2) computed exactly through three FMAs, and applies one
Newton update y + y*nu_bar.  The modified variant upgrades the update to
a Halley step nu = nu_bar*(1 + 1.5*nu_bar), which also repairs the
ties-to-even undercompensation cases the Newton step leaves behind.

Kernels require x in [KERNEL_MIN, KERNEL_MAX], where 1/x, x/2, and y^2
can neither overflow nor underflow; rsqrt_full_range removes that
restriction by exact power-of-4 scaling.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from . import _kernels
from .fp_core import DomainError, RangeError, split_pow4

__all__ = [
    "KERNEL_MIN",
    "KERNEL_MAX",
    "CompensationTriple",
    "rsqrt_naive",
    "rsqrt_compensated",
    "rsqrt_modified",
    "compensation_terms",
    "rsqrt_full_range",
]

#: Safe kernel domain: within it no intermediate can leave the normal range.
KERNEL_MIN = 2.0**-510
KERNEL_MAX = 2.0**510


class CompensationTriple(NamedTuple):
    """The three FMA-extracted correction terms.

    With r = RN(1/x) and y = RN(sqrt(r)), sigma = 0.5 - (x/2)*r and
    tau = y*y - r are exact, and nu_bar rounds (1 - x*y^2)/2, the Newton
    residual of y.
    """

    sigma: float
    tau: float
    nu_bar: float


def _check_kernel_domain(x: float) -> None:
    # NaN fails both comparisons, so a single chained check covers it
    if not KERNEL_MIN <= x <= KERNEL_MAX:
        raise DomainError(
            f"kernel domain is [2^-510, 2^510], got {x!r}; "
            "use rsqrt_full_range for wider inputs"
        )


def rsqrt_naive(x: float) -> float:
    """RN(sqrt(RN(1/x))): at most a couple of ulps from 1/sqrt(x)."""
    _check_kernel_domain(x)
    return _kernels.rsqrt_naive(x)


def rsqrt_compensated(x: float) -> float:
    """Naive estimate plus one exact-residual Newton step; weakly rounded.

    The result is the correctly rounded 1/sqrt(x) or its immediate
    neighbor, never further.
    """
    _check_kernel_domain(x)
    return _kernels.rsqrt_compensated(x)


def rsqrt_modified(x: float) -> float:
    """Naive estimate plus a Halley-corrected compensation step."""
    _check_kernel_domain(x)
    return _kernels.rsqrt_modified(x)


def compensation_terms(x: float, r: float, y: float) -> CompensationTriple:
    """The (sigma, tau, nu_bar) triple for given x, r, y.

    r and y must be the values the kernels would form, r = RN(1/x) and
    y = RN(sqrt(r)); the exactness guarantees hold only for those.
    """
    _check_kernel_domain(x)
    if r != 1.0 / x or y != math.sqrt(r):
        raise DomainError("compensation_terms requires r = RN(1/x), y = RN(sqrt(r))")
    return CompensationTriple(*_kernels.compensation_terms(x, r, y))


_VARIANTS = {
    "naive": _kernels.rsqrt_naive,
    "compensated": _kernels.rsqrt_compensated,
    "modified": _kernels.rsqrt_modified,
}


def rsqrt_full_range(x: float, variant: str = "modified") -> float:
    """Any-range reciprocal square root via exact power-of-4 scaling.

    Splits x = m * 4**k with m in [1, 4), runs the chosen kernel variant
    on m, and rescales by the exact factor 2**-k.  Subnormal x is
    handled here, not in the kernels.
    """
    try:
        kernel = _VARIANTS[variant]
    except KeyError:
        raise DomainError(
            f"unknown variant {variant!r}; expected one of {sorted(_VARIANTS)}"
        ) from None
    m, k = split_pow4(x)  # domain errors (x <= 0, non-finite) surface here
    v = kernel(m)
    out = math.ldexp(v, -k)
    # the rescale is exact unless the final value leaves the float range
    if out == 0.0 or math.isinf(out) or math.ldexp(out, k) != v:
        raise RangeError(f"rsqrt result for {x!r} not representable; got {out!r}")
    return out
