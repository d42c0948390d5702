"""Walkthrough: the correct-rounding oracle and its certificates.

Claiming that a kernel "rounds correctly" needs a reference that is
itself beyond doubt.  The oracle never evaluates a square root in
floating point: it brackets the true value between representable
neighbors by comparing exact integers, so every answer is the round
to nearest of the true real, by construction.

Each query can also return a certificate: a small replayable record
that a third party can re-check in exact dyadic arithmetic without
trusting the oracle's search at all.

Run:  python3 demos/05_oracle.py
"""

import math

from rsqrtlib import (
    DyadicRational,
    certificate_holds,
    rn_givens_cert,
    rn_rhypot_cert,
    rn_rsqrt_cert,
    rn_rsqrt_ref,
    ulp_of,
)

# ----------------------------------------------------------------------
# 1. A query and its certificate
# ----------------------------------------------------------------------

x = 2.0
cert = rn_rsqrt_cert(x)
print("rn_rsqrt_cert(2.0):")
print("  value =", cert.value.hex(), f"({cert.value})")
print("  kind  =", cert.kind, "  operands =", cert.operands)
print("  steps =", cert.steps, "  tie =", cert.tie)
print("  certificate_holds:", certificate_holds(cert))
print()

# ----------------------------------------------------------------------
# 2. What the check actually verifies
#
# The claimed value v rounds correctly iff the true 1/sqrt(x) lies
# inside (v - ulp/2, v + ulp/2].  Squaring the midpoint inequalities
# clears the square root: everything becomes a comparison between
# dyadic rationals, computed with integer arithmetic only.
# ----------------------------------------------------------------------

v = cert.value
half = DyadicRational.from_float(ulp_of(v)).halve()
lo = DyadicRational.from_float(v) - half
hi = DyadicRational.from_float(v) + half
dx = DyadicRational.from_float(x)
one = DyadicRational.from_float(1.0)
# 1/sqrt(x) > lo  <=>  1 > x * lo^2   (both sides positive)
print("midpoint bracket for 1/sqrt(2):")
print("  x * lo^2 < 1:", (dx * lo * lo).compare(one) < 0)
print("  x * hi^2 > 1:", (dx * hi * hi).compare(one) > 0)
print()

# ----------------------------------------------------------------------
# 3. Forgeries are rejected
#
# Nudge the claimed value by one ulp and the same inequalities fail.
# ----------------------------------------------------------------------

forged = cert._replace(value=math.nextafter(cert.value, math.inf))
print("forged certificate (value + 1 ulp) holds:", certificate_holds(forged))
print()

# ----------------------------------------------------------------------
# 4. Certificates for the two-input quantities
# ----------------------------------------------------------------------

rc = rn_rhypot_cert(3e200, 4e200)
print("rn_rhypot_cert(3e200, 4e200): value =", rc.value,
      " holds:", certificate_holds(rc))

cc, sc = rn_givens_cert(1.0, 1.0)
print("rn_givens_cert(1, 1):")
print("  c =", cc.value.hex(), " holds:", certificate_holds(cc))
print("  s =", sc.value.hex(), " holds:", certificate_holds(sc))
print("  (both equal RN(1/sqrt(2)):", cc.value == rn_rsqrt_ref(2.0), ")")
print()

# ----------------------------------------------------------------------
# 5. Why this beats a big-float reference
#
# A 200-bit comparison is persuasive but inherits the big-float
# library's own rounding at the final demotion to double; near the
# subnormal range that demotion double-rounds.  The certificate route
# has no such step: it is exact, and it is the adjudicator whenever
# the two routes disagree.
# ----------------------------------------------------------------------

tiny = rn_rsqrt_cert(2.0**-1074)
print("rn_rsqrt_cert(2^-1074): value = 2^537?",
      tiny.value == math.ldexp(1.0, 537), " holds:", certificate_holds(tiny))
