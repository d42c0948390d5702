"""Walkthrough: Givens rotation generation.

A Givens rotation zeroes the second entry of a 2-vector: given (f, g)
it produces c = f/r and s = g/r with r = sqrt(f^2 + g^2).  LAPACK's
dlartg computes these with plain divisions; the compensated variant
corrects each channel with an FMA residual so both c and s round
correctly.  The rotation feeds long orthogonal accumulations, so a
half-ulp bias per application is worth removing.

Run:  python3 demos/04_givens.py
"""

import math

from rsqrtlib import (
    Distribution,
    DyadicRational,
    TrialConfig,
    dlartg_compensated,
    dlartg_naive,
    rn_givens_ref,
    run_trial,
    ulp_distance,
)

# ----------------------------------------------------------------------
# 1. The 3-4-5 triangle: naive is already exact here
# ----------------------------------------------------------------------

f, g = 4.0, 3.0
ref_c, ref_s = rn_givens_ref(f, g)
for name, fn in (("naive", dlartg_naive), ("compensated", dlartg_compensated)):
    rot = fn(f, g)
    print(f"dlartg_{name}(4, 3): c = {rot.c}  s = {rot.s}"
          f"   ulp ({ulp_distance(rot.c, ref_c)}, {ulp_distance(rot.s, ref_s)})")
print()

# ----------------------------------------------------------------------
# 2. A pair where naive misses one channel
# ----------------------------------------------------------------------

f, g = -0.6364636463709805, 0.5419522204102933
ref_c, ref_s = rn_givens_ref(f, g)
nv = dlartg_naive(f, g)
cv = dlartg_compensated(f, g)
print(f"pair ({f}, {g}):")
print(f"  oracle       c {ref_c.hex()}   s {ref_s.hex()}")
print(f"  naive        c {nv.c.hex()}   s {nv.s.hex()}"
      f"   ulp ({ulp_distance(nv.c, ref_c)}, {ulp_distance(nv.s, ref_s)})")
print(f"  compensated  c {cv.c.hex()}   s {cv.s.hex()}"
      f"   ulp ({ulp_distance(cv.c, ref_c)}, {ulp_distance(cv.s, ref_s)})")
print()

# ----------------------------------------------------------------------
# 3. Normalization drift, measured exactly
#
# c^2 + s^2 should be 1.  Working in dyadic rationals gives the true
# drift without any rounding in the measurement itself.
# ----------------------------------------------------------------------

one = DyadicRational.from_float(1.0)
for name, rot in (("naive", nv), ("compensated", cv)):
    dc = DyadicRational.from_float(rot.c)
    ds = DyadicRational.from_float(rot.s)
    drift = dc * dc + ds * ds - one
    print(f"{name:<12} c^2 + s^2 - 1 = {drift.round_float():+.3e}")
print()

# ----------------------------------------------------------------------
# 4. Scale invariance and extreme inputs
#
# Scaling (f, g) by a power of two leaves (c, s) unchanged.  The
# compensated kernel also rescues pairs whose squares leave the normal
# range, including fully subnormal inputs.
# ----------------------------------------------------------------------

base = dlartg_compensated(0.3, 0.4)
scaled = dlartg_compensated(math.ldexp(0.3, 300), math.ldexp(0.4, 300))
print("power-of-two invariance:", base == scaled)

tiny = dlartg_compensated(5e-324, 5e-324)
ref_c, ref_s = rn_givens_ref(5e-324, 5e-324)
print(f"dlartg_compensated(5e-324, 5e-324): c = {tiny.c}  s = {tiny.s}"
      f"   matches oracle: {(tiny.c, tiny.s) == (ref_c, ref_s)}")
try:
    dlartg_naive(5e-324, 5e-324)
except ArithmeticError as exc:
    print("dlartg_naive(5e-324, 5e-324) raises:", exc)
print()

# ----------------------------------------------------------------------
# 5. Error rates per channel on Gaussian pairs
#
# Naive reaches two ulps on rare pairs; compensated rounds correctly.
# ----------------------------------------------------------------------

for algo in ("dlartg_naive_cos", "dlartg_naive_sin",
             "dlartg_compensated_cos", "dlartg_compensated_sin"):
    cfg = TrialConfig(algorithm=algo,
                      distribution=Distribution("normal", (0.0, 1.0)),
                      n=100_000, seed=4)
    rep = run_trial(cfg)
    print(f"{algo:<24} zero ulp {rep.percentage('zero_ulp'):7.3f}%"
          f"   max {rep.max_ulp}")
