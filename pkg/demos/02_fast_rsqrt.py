"""Walkthrough: the square-root-free reciprocal square root.

RcpSqrt331d never calls sqrt.  It reinterprets the input's bits as an
integer, subtracts from a magic constant to get a crude estimate, and
polishes with three FMA refinements.  A compensated Halley correction
(three more FMAs and one divide) then makes it correctly rounded on
every sampled input.

Run:  python3 demos/02_fast_rsqrt.py
"""

from rsqrtlib import (
    Distribution,
    MAGIC,
    TrialConfig,
    float_to_bits,
    bits_to_float,
    rcpsqrt331d,
    rcpsqrt331d_modified,
    rn_rsqrt_ref,
    run_trial,
    ulp_distance,
)

# ----------------------------------------------------------------------
# 1. The magic-constant seed
#
# The exponent field of 1/sqrt(x) is roughly the negated halved
# exponent of x, which is what (magic - (bits >> 1)) computes, mantissa
# bits riding along as a free linear interpolation.  One bit of the
# input (branch_mask) selects between two fitted parameter sets, one
# per binade parity, because the estimate's quality differs on
# [1,2) and [2,4).
# ----------------------------------------------------------------------

for x in (1.5707963267948966, 0.7853981633974483):
    bits = float_to_bits(x)
    branch = "a" if bits & MAGIC.branch_mask else "b"
    magic = MAGIC.magic_a if branch == "a" else MAGIC.magic_b
    seed = bits_to_float(magic - (bits >> 1))
    print(f"x = {x:<22.17g} branch {branch}   seed {seed:.6f}"
          f"   true {rn_rsqrt_ref(x):.6f}")
print()

# ----------------------------------------------------------------------
# 2. From seed to full accuracy
#
# Two polynomial FMA steps bring the seed to about 33 correct bits,
# the shared 1.5000000034937999 coefficient is a Newton step with a
# tweaked constant that centers the error, and the final Newton (or
# compensated Halley) step lands within one ulp (or exactly).
# ----------------------------------------------------------------------

x = 1.2345678901234567
ref = rn_rsqrt_ref(x)
base = rcpsqrt331d(x)
mod = rcpsqrt331d_modified(x)
print("x        =", x.hex())
print("oracle   =", ref.hex())
print("base     =", base.hex(), " ulp", ulp_distance(base, ref))
print("modified =", mod.hex(), " ulp", ulp_distance(mod, ref))
print()

# the counterexample that defeats the plain Newton polish
x = 1.0 - 2.0**-52
print("x = 1 - 2u:")
print("  base     ", rcpsqrt331d(x).hex())
print("  modified ", rcpsqrt331d_modified(x).hex(), " (correctly rounded)")
print()

# ----------------------------------------------------------------------
# 3. Error rates (10^5 samples here, 10^7 in the test suite)
# ----------------------------------------------------------------------

for algo in ("rcpsqrt331d", "rcpsqrt331d_modified"):
    for lo, hi in ((0.5, 1.0), (1.0, 2.0)):
        cfg = TrialConfig(algorithm=algo,
                          distribution=Distribution("uniform", (lo, hi)),
                          n=100_000, seed=2)
        rep = run_trial(cfg)
        print(f"{algo:<22} on U({lo},{hi}): zero ulp"
              f" {rep.percentage('zero_ulp'):7.3f}%   max {rep.max_ulp}")
