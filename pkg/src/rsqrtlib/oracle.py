"""Exact correct-rounding oracle for rsqrt, rhypot, and Givens outputs.

The reference values are found by midpoint bracketing in exact integer
arithmetic: a candidate float y is correct for a target t exactly when
m_lo < t < m_hi, where m_lo, m_hi are the midpoints between y and its
neighbors.  Every midpoint test reduces to comparing unbounded integers
(for t = 1/sqrt(S*2^E) against midpoint M*2^F, compare M^2*S*2^(E+2F)
with 1), so no extended-precision rounding ever enters; this sidesteps
the double rounding an extended-precision baseline is prone to.

Two independent routes exist on purpose.  The hot path works on raw
mantissa/exponent integers for speed, with a fully general bit-level walk
as fallback when candidates leave the normal range.  ``certificate_holds``
re-derives the bracketing from scratch with :class:`DyadicRational`
arithmetic, so a fast-path bug cannot vouch for itself.

An exact midpoint would be resolved ties-to-even; for reciprocal square
roots this provably cannot happen, and any occurrence is logged as an
anomaly and flagged on the certificate.
"""

from __future__ import annotations

import logging
import math
from typing import NamedTuple

import numpy as np

from .dyadic import DyadicRational
from .fp_core import DomainError, bits_to_float, float_to_bits

__all__ = [
    "DyadicRational",
    "OracleCertificate",
    "rn_rsqrt_ref",
    "rn_rsqrt_cert",
    "rn_rsqrt_ref_many",
    "rn_rhypot_ref",
    "rn_rhypot_cert",
    "rn_rhypot_ref_many",
    "rn_givens_ref",
    "rn_givens_cert",
    "rn_givens_ref_many",
    "certificate_holds",
]

logger = logging.getLogger(__name__)

_MASK52 = (1 << 52) - 1
_TWO52 = 1 << 52
_TWO53 = 1 << 53
_TWO53F = 9007199254740992.0
_MAX_STEPS = 4
# fast-walk guard: every candidate and midpoint stays normal within +-4 steps
_FAST_LO = 2.0**-1018
_FAST_HI = 2.0**1018
_MAX_FLOAT = (2.0 - 2.0**-52) * 2.0**1023
# overflow threshold (2**54 - 1) * 2**970: reals at or above it round to +inf
_OVF_NUM = (1 << 54) - 1
_OVF_NUM_SQ = _OVF_NUM * _OVF_NUM


class OracleCertificate(NamedTuple):
    """Replayable claim that ``value`` correctly rounds the target quantity.

    kind identifies the target: "rsqrt" (1/sqrt(x)), "rhypot"
    (1/sqrt(x^2+y^2)), "givens_c" (f/sqrt(f^2+g^2)) or "givens_s"
    (g/sqrt(f^2+g^2)); operands are the defining floats.  steps is the
    signed ulp displacement of the bracketing walk from its starting
    estimate; tie records a ties-to-even resolution (never expected).
    """

    kind: str
    operands: tuple
    value: float
    steps: int
    tie: bool


def _dec(x: float) -> tuple[int, int]:
    # positive finite float -> (m, e) with x = m * 2**e and m a 53-bit integer
    # (frexp renormalizes subnormals, so m always has its top bit set)
    mf, e = math.frexp(x)
    return int(mf * _TWO53F), e - 53


def _walk_error() -> RuntimeError:
    return RuntimeError(f"midpoint walk exceeded {_MAX_STEPS} ulp steps from start")


def _inv_sqrt_walk(s: int, e: int, y0: float) -> tuple[float, int, bool]:
    """Bracket 1/sqrt(s*2**e) at normal 53-bit candidates (m, ey).

    Upper midpoint of candidate m*2**ey is (2m+1)*2**(ey-1); the lower one
    is (2m-1)*2**(ey-1), except (4m-1)*2**(ey-2) at the bottom of a binade.
    target <> midpoint M*2**F reduces to 1 <> M^2*s*2**(e+2F).
    """
    my, ey = _dec(y0)
    net = 0
    while True:
        if net > _MAX_STEPS or net < -_MAX_STEPS:
            raise _walk_error()
        tp = 2 * my + 1
        vp = tp * tp * s
        sh = -(e + 2 * ey - 2)
        up = tie_up = False
        if sh >= 0:
            r = 1 << sh
            if vp < r:
                up = True
            elif vp == r:
                tie_up = True
        # sh < 0 implies vp > 2**sh, i.e. target below the upper midpoint
        if up:
            my += 1
            net += 1
            if my == _TWO53:
                my = _TWO52
                ey += 1
            continue
        if tie_up:
            if my % 2:
                my += 1
                if my == _TWO53:
                    my = _TWO52
                    ey += 1
            return math.ldexp(my, ey), net, True
        if my == _TWO52:
            tm = 4 * my - 1
            em = ey - 2
        else:
            tm = 2 * my - 1
            em = ey - 1
        vm = tm * tm * s
        sh = -(e + 2 * em)
        down = tie_lo = False
        if sh >= 0:
            r = 1 << sh
            if vm > r:
                down = True
            elif vm == r:
                tie_lo = True
        else:
            down = True
        if down:
            net -= 1
            if my == _TWO52:
                my = _TWO53 - 1
                ey -= 1
            else:
                my -= 1
            continue
        if tie_lo and my % 2:
            my -= 1  # my == 2**52 is even, so no binade edge here
        return math.ldexp(my, ey), net, tie_lo


def _ratio_walk(f2: int, fe2: int, s: int, e: int, z0: float) -> tuple[float, int, bool]:
    """Bracket sqrt(f2*2**fe2 / (s*2**e)) at normal candidates.

    Same stepping scheme as _inv_sqrt_walk; target <> midpoint M*2**F
    reduces to f2*2**fe2 <> M^2*s*2**(e+2F).
    """
    mz, ez = _dec(z0)
    net = 0
    while True:
        if net > _MAX_STEPS or net < -_MAX_STEPS:
            raise _walk_error()
        tp = 2 * mz + 1
        v = tp * tp * s
        d = fe2 - (e + 2 * ez - 2)
        if d >= 0:
            lhs, rhs = f2 << d, v
        else:
            lhs, rhs = f2, v << -d
        if lhs > rhs:
            mz += 1
            net += 1
            if mz == _TWO53:
                mz = _TWO52
                ez += 1
            continue
        if lhs == rhs:
            if mz % 2:
                mz += 1
                if mz == _TWO53:
                    mz = _TWO52
                    ez += 1
            return math.ldexp(mz, ez), net, True
        if mz == _TWO52:
            tm = 4 * mz - 1
            em = ez - 2
        else:
            tm = 2 * mz - 1
            em = ez - 1
        v = tm * tm * s
        d = fe2 - (e + 2 * em)
        if d >= 0:
            lhs, rhs = f2 << d, v
        else:
            lhs, rhs = f2, v << -d
        if lhs < rhs:
            net -= 1
            if mz == _TWO52:
                mz = _TWO53 - 1
                ez -= 1
            else:
                mz -= 1
            continue
        if lhs == rhs and mz % 2:
            mz -= 1
        return math.ldexp(mz, ez), net, lhs == rhs


# ---------------------------------------------------------------------------
# General bit-level walk (subnormal / extreme candidates; rarely taken)
# ---------------------------------------------------------------------------


def _bits_me(b: int) -> tuple[int, int]:
    # encoding of a nonnegative float -> (m, e) with value = m * 2**e
    ef = b >> 52
    fr = b & _MASK52
    if ef == 0:
        return fr, -1074
    return (1 << 52) | fr, ef - 1075


def _upper_midpoint(b: int) -> tuple[int, int]:
    # midpoint between the floats encoded b and b+1, as (M, F): M * 2**F
    m1, e1 = _bits_me(b)
    m2, e2 = _bits_me(b + 1)
    return m1 + (m2 << (e2 - e1)), e1 - 1


def _cmp_shifted(a: int, b: int, t: int) -> int:
    # sign of a*2**t - b for nonnegative a, b
    if t >= 0:
        a <<= t
    else:
        b <<= -t
    return (a > b) - (a < b)


def _bits_walk(b0: int, cmp_target) -> tuple[float, int, bool]:
    """Generic midpoint walk over the encoding integers, any range.

    cmp_target(M, F) returns the sign of (target - M*2**F); targets are
    nonnegative, and a candidate of 0 is accepted when the target sits
    below the very first midpoint.
    """
    b = b0
    while True:
        if abs(b - b0) > _MAX_STEPS:
            raise _walk_error()
        cu = cmp_target(*_upper_midpoint(b))
        if cu > 0:
            b += 1
            continue
        if cu == 0:
            r = b if b % 2 == 0 else b + 1
            return bits_to_float(r), r - b0, True
        if b == 0:
            return 0.0, -b0, False
        cl = cmp_target(*_upper_midpoint(b - 1))
        if cl < 0:
            b -= 1
            continue
        if cl == 0:
            r = b - 1 if (b - 1) % 2 == 0 else b
            return bits_to_float(r), r - b0, True
        return bits_to_float(b), b - b0, False


def _start_inv_sqrt(s: int, e: int) -> float:
    # float estimate of 1/sqrt(s * 2**e), within a couple of ulps; saturates
    # to inf (never raises) when the target exceeds the representable range
    bl = s.bit_length()
    h = bl - 1 + e
    if bl > 54:
        m0 = (s >> (bl - 54)) / float(1 << 53)
    else:
        m0 = (s << (54 - bl)) / float(1 << 53)
    if h % 2:
        m0 *= 2.0
        h -= 1
    try:
        return math.ldexp(1.0 / math.sqrt(m0), -(h // 2))
    except OverflowError:
        return math.inf


def _rn_inv_sqrt(s: int, e: int) -> tuple[float, int, bool]:
    # correctly rounded 1/sqrt(s * 2**e) for integer s > 0
    y0 = _start_inv_sqrt(s, e)
    if _FAST_LO < y0 < _FAST_HI:
        return _inv_sqrt_walk(s, e, y0)
    if y0 >= _FAST_HI:
        # 1/sqrt(s*2^e) >= threshold  <=>  threshold^2 * s * 2^(e+1940) <= 1
        c = _cmp_shifted(_OVF_NUM_SQ * s, 1, e + 1940)
        if c <= 0:
            if c == 0:
                return math.inf, 0, True  # exact threshold: ties-to-even is inf
            return math.inf, 0, False
        y0 = min(y0, _MAX_FLOAT)

    def cmp_target(mm: int, f: int) -> int:
        return -_cmp_shifted(mm * mm * s, 1, e + 2 * f)

    return _bits_walk(float_to_bits(y0), cmp_target)


def _ratio_prep(s: int, e: int) -> tuple[float, int]:
    # shared per-pair factors for ratio starts: returns (q, h) with
    # 1/sqrt(s*2**e) ~= q * 2**(-h/2), q in (0.35, 1], h even
    bl = s.bit_length()
    h = bl - 1 + e
    if bl > 54:
        m0 = (s >> (bl - 54)) / float(1 << 53)
    else:
        m0 = (s << (54 - bl)) / float(1 << 53)
    if h % 2:
        m0 *= 2.0
        h -= 1
    return 1.0 / math.sqrt(m0), h


def _rn_ratio(num: float, s: int, e: int, q: float, h: int) -> tuple[float, int, bool]:
    # correctly rounded num/sqrt(s*2**e) carrying num's sign; (q, h) from
    # _ratio_prep.  The start is assembled in exponent space because the
    # magnitudes of num and 1/sqrt(s) can separately leave the float range
    # even though their product, being at most 1, never does.
    if num == 0.0:
        return math.copysign(0.0, num), 0, False
    a = abs(num)
    fm, fe = _dec(a)
    f2 = fm * fm
    fe2 = 2 * fe
    z0 = math.ldexp((fm / 4503599627370496.0) * q, fe + 52 - h // 2)
    if _FAST_LO < z0 < _FAST_HI:
        v, steps, tie = _ratio_walk(f2, fe2, s, e, z0)
    else:

        def cmp_target(mm: int, f: int) -> int:
            return _cmp_shifted(f2, mm * mm * s, fe2 - e - 2 * f)

        v, steps, tie = _bits_walk(float_to_bits(z0), cmp_target)
    return math.copysign(v, num), steps, tie


def _sum_squares_int(x: float, y: float) -> tuple[int, int]:
    # exact x*x + y*y as (s, e): value = s * 2**e, for (x, y) != (0, 0)
    if x == 0.0:
        m, e = _dec(abs(y))
        return m * m, 2 * e
    if y == 0.0:
        m, e = _dec(abs(x))
        return m * m, 2 * e
    mx, ex = _dec(abs(x))
    my, ey = _dec(abs(y))
    ex, ey = 2 * ex, 2 * ey
    e = min(ex, ey)
    return (mx * mx << (ex - e)) + (my * my << (ey - e)), e


def _log_tie(kind: str, operands: tuple) -> None:
    logger.warning("exact midpoint tie (resolved to even) in %s%r", kind, operands)


def _check_rsqrt_domain(x: float) -> None:
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"oracle rsqrt requires finite x > 0, got {x!r}")


def _check_pair_domain(x: float, y: float, what: str) -> None:
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"oracle {what} requires finite inputs, got {x!r}, {y!r}")
    if x == 0.0 and y == 0.0:
        raise DomainError(f"oracle {what} is undefined at (0, 0)")


# ---------------------------------------------------------------------------
# Public reference functions
# ---------------------------------------------------------------------------


def rn_rsqrt_ref(x: float) -> float:
    """The unique correctly rounded 1/sqrt(x) for finite x > 0."""
    _check_rsqrt_domain(x)
    m, e = _dec(x)
    v, _, tie = _rn_inv_sqrt(m, e)
    if tie:
        _log_tie("rsqrt", (x,))
    return v


def rn_rsqrt_cert(x: float) -> OracleCertificate:
    """rn_rsqrt_ref plus its bracketing certificate."""
    _check_rsqrt_domain(x)
    m, e = _dec(x)
    v, steps, tie = _rn_inv_sqrt(m, e)
    if tie:
        _log_tie("rsqrt", (x,))
    return OracleCertificate("rsqrt", (x,), v, steps, tie)


def rn_rhypot_ref(x: float, y: float) -> float:
    """The unique correctly rounded 1/sqrt(x^2 + y^2), (x, y) != (0, 0)."""
    _check_pair_domain(x, y, "rhypot")
    s, e = _sum_squares_int(x, y)
    v, _, tie = _rn_inv_sqrt(s, e)
    if tie:
        _log_tie("rhypot", (x, y))
    return v


def rn_rhypot_cert(x: float, y: float) -> OracleCertificate:
    _check_pair_domain(x, y, "rhypot")
    s, e = _sum_squares_int(x, y)
    v, steps, tie = _rn_inv_sqrt(s, e)
    if tie:
        _log_tie("rhypot", (x, y))
    return OracleCertificate("rhypot", (x, y), v, steps, tie)


def rn_givens_ref(f: float, g: float) -> tuple[float, float]:
    """Correctly rounded (f/sqrt(f^2+g^2), g/sqrt(f^2+g^2))."""
    _check_pair_domain(f, g, "givens")
    s, e = _sum_squares_int(f, g)
    q, h = _ratio_prep(s, e)
    c, _, tie_c = _rn_ratio(f, s, e, q, h)
    sn, _, tie_s = _rn_ratio(g, s, e, q, h)
    if tie_c or tie_s:
        _log_tie("givens", (f, g))
    return c, sn


def rn_givens_cert(f: float, g: float) -> tuple[OracleCertificate, OracleCertificate]:
    _check_pair_domain(f, g, "givens")
    s, e = _sum_squares_int(f, g)
    q, h = _ratio_prep(s, e)
    c, steps_c, tie_c = _rn_ratio(f, s, e, q, h)
    sn, steps_s, tie_s = _rn_ratio(g, s, e, q, h)
    if tie_c or tie_s:
        _log_tie("givens", (f, g))
    return (
        OracleCertificate("givens_c", (f, g), c, steps_c, tie_c),
        OracleCertificate("givens_s", (f, g), sn, steps_s, tie_s),
    )


def rn_rsqrt_ref_many(xs: np.ndarray) -> np.ndarray:
    """Vector of rn_rsqrt_ref values (plain loop; the oracle is not fast)."""
    vals = np.asarray(xs, dtype=np.float64).tolist()
    out = np.empty(len(vals), dtype=np.float64)
    dec, inv = _dec, _rn_inv_sqrt
    for i, x in enumerate(vals):
        if not x > 0.0 or x == math.inf:
            raise DomainError(f"oracle rsqrt requires finite x > 0, got {x!r}")
        m, e = dec(x)
        out[i] = inv(m, e)[0]
    return out


def rn_rhypot_ref_many(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    a = np.asarray(xs, dtype=np.float64).tolist()
    b = np.asarray(ys, dtype=np.float64).tolist()
    if len(a) != len(b):
        raise DomainError("rhypot streams differ in length")
    out = np.empty(len(a), dtype=np.float64)
    ssq, inv, check = _sum_squares_int, _rn_inv_sqrt, _check_pair_domain
    for i in range(len(a)):
        check(a[i], b[i], "rhypot")
        s, e = ssq(a[i], b[i])
        out[i] = inv(s, e)[0]
    return out


def rn_givens_ref_many(fs: np.ndarray, gs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(fs, dtype=np.float64).tolist()
    b = np.asarray(gs, dtype=np.float64).tolist()
    if len(a) != len(b):
        raise DomainError("givens streams differ in length")
    out_c = np.empty(len(a), dtype=np.float64)
    out_s = np.empty(len(a), dtype=np.float64)
    ssq, ratio, prep, check = _sum_squares_int, _rn_ratio, _ratio_prep, _check_pair_domain
    for i in range(len(a)):
        f, g = a[i], b[i]
        check(f, g, "givens")
        s, e = ssq(f, g)
        q, h = prep(s, e)
        out_c[i] = ratio(f, s, e, q, h)[0]
        out_s[i] = ratio(g, s, e, q, h)[0]
    return out_c, out_s


# ---------------------------------------------------------------------------
# Certificate verification (independent DyadicRational route)
# ---------------------------------------------------------------------------


def _neighbor_midpoints(v: float) -> tuple[DyadicRational | None, DyadicRational]:
    """Exact midpoints around nonnegative v: (lower or None at v=0, upper)."""
    b = float_to_bits(v)
    dv = DyadicRational.from_float(v)
    upper = (dv + DyadicRational.from_float(bits_to_float(b + 1))).halve()
    if b == 0:
        return None, upper
    lower = (dv + DyadicRational.from_float(bits_to_float(b - 1))).halve()
    return lower, upper


def _target_vs_midpoint(cert: OracleCertificate, m: DyadicRational) -> int:
    """Sign of (|target| - m), m > 0, computed exactly."""
    if cert.kind == "rsqrt":
        (x,) = cert.operands
        s = DyadicRational.from_float(x)
        num = DyadicRational.from_int(1)
    elif cert.kind == "rhypot":
        x, y = cert.operands
        dx = DyadicRational.from_float(x)
        dy = DyadicRational.from_float(y)
        s = dx * dx + dy * dy
        num = DyadicRational.from_int(1)
    elif cert.kind in ("givens_c", "givens_s"):
        f, g = cert.operands
        df = DyadicRational.from_float(f)
        dg = DyadicRational.from_float(g)
        s = df * df + dg * dg
        t = df if cert.kind == "givens_c" else dg
        num = abs(t) * abs(t)
    else:
        raise ValueError(f"unknown certificate kind {cert.kind!r}")
    # |target| < m  <=>  num < m^2 * s   (all quantities positive)
    return num.compare(m * m * s)


def certificate_holds(cert: OracleCertificate) -> bool:
    """Exact re-verification that cert.value correctly rounds its target.

    Rebuilds the neighbor midpoints of the claimed value and replays the
    bracketing comparisons in DyadicRational arithmetic, sharing no code
    with the integer fast path.
    """
    v = cert.value
    if v == math.inf and cert.kind in ("rsqrt", "rhypot"):
        # rounded to infinity: target must sit at or above the threshold
        c = _target_vs_midpoint(cert, DyadicRational(_OVF_NUM, 970))
        return c > 0 or (c == 0 and cert.tie)
    if not math.isfinite(v):
        return False
    if cert.kind in ("givens_c", "givens_s"):
        t = cert.operands[0] if cert.kind == "givens_c" else cert.operands[1]
        if math.copysign(1.0, v) != math.copysign(1.0, t):
            return False
    elif v <= 0.0:
        return False
    mag = abs(v)
    lower, upper = _neighbor_midpoints(mag)
    even = float_to_bits(mag) % 2 == 0
    cu = _target_vs_midpoint(cert, upper)
    if cu > 0 or (cu == 0 and not (cert.tie and even)):
        return False
    if lower is None:
        return True
    cl = _target_vs_midpoint(cert, lower)
    if cl < 0 or (cl == 0 and not (cert.tie and even)):
        return False
    return True
