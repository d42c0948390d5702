"""Square-root-free reciprocal square root seeded by magic constants.

RcpSqrt331d reinterprets the input's bits, subtracts from a per-branch
magic constant to get a first estimate, sharpens it with two polynomial
FMA refinements (choosing the branch by one exponent bit), and finishes
with a careful Newton step.  The modified variant swaps that last step
for the exact-residual Halley compensation used by rsqrt_modified, at the
price of three more FMAs and one divide.

No square root is ever taken, which makes the sequence attractive where
sqrt is slow or unavailable.  The seed trick is only validated for
normal inputs, so the domain matches the rsqrt kernels' safe range.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .fp_core import DomainError
from .rsqrt import KERNEL_MAX, KERNEL_MIN

__all__ = ["MagicConstants", "MAGIC", "rcpsqrt331d", "rcpsqrt331d_modified"]


@dataclass(frozen=True)
class MagicConstants:
    """The nine constants of the seed and its polynomial refinements.

    branch_mask selects the low exponent bit; the a-constants serve that
    branch, the b-constants the other; shared_coeff drives the final
    common refinement.  Values must be bit-exact: the accuracy figures
    are properties of these specific constants.
    """

    branch_mask: int
    magic_a: int
    coeff_a1: float
    coeff_a2: float
    magic_b: int
    coeff_b1: float
    coeff_b2: float
    shared_coeff: float


#: The constants actually compiled into the kernels (single source of truth).
MAGIC = MagicConstants(
    branch_mask=_kernels.BRANCH_MASK,
    magic_a=_kernels.MAGIC_A,
    coeff_a1=_kernels.COEFF_A1,
    coeff_a2=_kernels.COEFF_A2,
    magic_b=_kernels.MAGIC_B,
    coeff_b1=_kernels.COEFF_B1,
    coeff_b2=_kernels.COEFF_B2,
    shared_coeff=_kernels.SHARED_COEFF,
)


def _check_domain(x: float) -> None:
    if not KERNEL_MIN <= x <= KERNEL_MAX:
        raise DomainError(
            f"rcpsqrt331d domain is normal x in [2^-510, 2^510], got {x!r}"
        )


def rcpsqrt331d(x: float) -> float:
    """Magic-constant estimate plus one Newton step; within 1 ulp."""
    _check_domain(x)
    return _kernels.rcpsqrt331d(x)


def rcpsqrt331d_modified(x: float) -> float:
    """Magic-constant estimate finished with the Halley compensation."""
    _check_domain(x)
    return _kernels.rcpsqrt331d_modified(x)
