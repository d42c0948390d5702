"""Compiled binary64 kernels (numba) with a single-rounding fused multiply-add.

All algorithm arithmetic lives here, in one place, so the exact operation
sequences are compiled with LLVM's ``llvm.fma.f64`` (one rounding, required
for the error-free compensation terms) and strict IEEE semantics (fastmath
stays off).  Scalar entry points carry no input validation; the public
wrappers in the algorithm modules own the contracts.

Batch variants loop over arrays for the benchmark harness; they call the
scalar kernels so there is exactly one definition of each algorithm.
"""

from __future__ import annotations

import math

import numpy as np
import llvmlite.ir as llir
from numba import njit, types
from numba.core import cgutils
from numba.extending import intrinsic

# numpy error model: 1/0 yields inf instead of raising, so wrappers can
# detect out-of-range intermediates from the returned values and rescale
_JIT = {"cache": True, "fastmath": False, "error_model": "numpy"}


@intrinsic
def _fma(typingctx, a, b, c):
    """a*b + c with a single rounding (llvm.fma.f64)."""
    sig = types.float64(types.float64, types.float64, types.float64)

    def codegen(context, builder, signature, args):
        fnty = llir.FunctionType(llir.DoubleType(), [llir.DoubleType()] * 3)
        fn = cgutils.get_or_insert_function(builder.module, fnty, "llvm.fma.f64")
        return builder.call(fn, args)

    return sig, codegen


@intrinsic
def _float_bits(typingctx, x):
    """Bit pattern of a float64 as int64."""
    sig = types.int64(types.float64)

    def codegen(context, builder, signature, args):
        return builder.bitcast(args[0], llir.IntType(64))

    return sig, codegen


@intrinsic
def _bits_float(typingctx, i):
    """float64 with the given int64 bit pattern."""
    sig = types.float64(types.int64)

    def codegen(context, builder, signature, args):
        return builder.bitcast(args[0], llir.DoubleType())

    return sig, codegen


@njit(**_JIT)
def fma(a, b, c):
    return _fma(a, b, c)


@njit(**_JIT)
def float_bits(x):
    return _float_bits(x)


@njit(**_JIT)
def bits_float(i):
    return _bits_float(i)


def verify_fma_single_rounding(reference_fma) -> None:
    """Startup probe: refuse to run if the compiled FMA double-rounds.

    ``reference_fma`` must be an exact software implementation.  The probe
    uses discriminating triples whose fused result differs from any
    multiply-then-add evaluation, plus random residual-extraction checks.
    """
    cases = [
        # a*b + c representable only when the product is not pre-rounded
        (1.0 + 2.0**-30, 1.0 + 2.0**-30, -1.0),
        (-0.5 * (1.0 - 2.0**-52), 1.0 + 2.0**-52, 0.5),
        (1.0 + 2.0**-52, 1.0 - 2.0**-52, -1.0),
        # finite product added to an infinity must not overflow first
        (1.0e308, 1.0e308, -math.inf),
    ]
    rng = np.random.default_rng(0x5EED)
    for _ in range(64):
        a = float(rng.uniform(-2.0, 2.0))
        b = float(rng.uniform(-2.0, 2.0))
        cases.append((a, b, -a * b))          # exact multiplication residual
        cases.append((a, b, float(rng.uniform(-2.0, 2.0))))
    for a, b, c in cases:
        got = fma(a, b, c)
        want = reference_fma(a, b, c)
        if got != want and not (math.isnan(got) and math.isnan(want)):
            raise RuntimeError(
                "compiled FMA is not single-rounding: "
                f"fma({a!r}, {b!r}, {c!r}) = {got!r}, expected {want!r}"
            )


# ---------------------------------------------------------------------------
# Reciprocal square root
# ---------------------------------------------------------------------------


@njit(**_JIT)
def rsqrt_naive(x):
    r = 1.0 / x
    return math.sqrt(r)


@njit(**_JIT)
def compensation_terms(x, r, y):
    # Operand forms and ordering are load-bearing: sigma and tau are exact
    # only for these expressions, and nu_bar needs them in this sequence.
    mxhalf = -0.5 * x
    sigma = _fma(mxhalf, r, 0.5)
    tau = _fma(y, y, -r)
    nu_bar = _fma(mxhalf, tau, sigma)
    return sigma, tau, nu_bar


@njit(**_JIT)
def rsqrt_compensated(x):
    r = 1.0 / x
    y = math.sqrt(r)
    mxhalf = -0.5 * x
    sigma = _fma(mxhalf, r, 0.5)
    tau = _fma(y, y, -r)
    nu_bar = _fma(mxhalf, tau, sigma)
    return _fma(y, nu_bar, y)


@njit(**_JIT)
def rsqrt_modified(x):
    r = 1.0 / x
    y = math.sqrt(r)
    mxhalf = -0.5 * x
    sigma = _fma(mxhalf, r, 0.5)
    tau = _fma(y, y, -r)
    nu_bar = _fma(mxhalf, tau, sigma)
    nu = _fma(1.5 * nu_bar, nu_bar, nu_bar)
    return _fma(y, nu, y)


# ---------------------------------------------------------------------------
# Square-root-free reciprocal square root (magic-constant seed)
# ---------------------------------------------------------------------------

BRANCH_MASK = 0x0010000000000000
MAGIC_A = 0x5FDB3D14170034B6
COEFF_A1 = 2.33124735553421569
COEFF_A2 = 1.07497362654295614
MAGIC_B = 0x5FE33D18A2B9EF5F
COEFF_B1 = 0.82421942523718461
COEFF_B2 = 2.1499494964450325
SHARED_COEFF = 1.5000000034937999


@njit(**_JIT)
def _rcpsqrt331d_seed(x):
    """Bit-trick seed plus the two polynomial refinements (no final step)."""
    i = _float_bits(x)
    if i & BRANCH_MASK != 0:
        i = MAGIC_A - (i >> 1)
        y = _bits_float(i)
        y = COEFF_A1 * y * _fma(-x, y * y, COEFF_A2)
    else:
        i = MAGIC_B - (i >> 1)
        y = _bits_float(i)
        y = COEFF_B1 * y * _fma(-x, y * y, COEFF_B2)
    mxhalf = -0.5 * x
    return y * _fma(mxhalf, y * y, SHARED_COEFF)


@njit(**_JIT)
def rcpsqrt331d(x):
    y = _rcpsqrt331d_seed(x)
    mxhalf = -0.5 * x
    # one careful Newton step
    r = _fma(mxhalf, y * y, 0.5)
    return _fma(y, r, y)


@njit(**_JIT)
def rcpsqrt331d_modified(x):
    y = _rcpsqrt331d_seed(x)
    mxhalf = -0.5 * x
    # Newton step replaced by the exact-residual Halley compensation
    r = 1.0 / x
    sigma = _fma(r, mxhalf, 0.5)
    tau = _fma(y, y, -r)
    nu_bar = _fma(mxhalf, tau, sigma)
    nu = _fma(1.5 * nu_bar, nu_bar, nu_bar)
    return _fma(y, nu, y)


# ---------------------------------------------------------------------------
# Reciprocal hypotenuse
# ---------------------------------------------------------------------------


@njit(**_JIT)
def sum_squares_ee(x, y):
    """Rounded x*x + y*y plus a correction term, for x >= y > 0.

    s_e is evaluated strictly left to right: the Fast2Sum branch-free
    recovery of the addition error, then the two squaring errors.
    """
    x_sq = x * x
    y_sq = y * y
    s = x_sq + y_sq
    s_e = y_sq - (s - x_sq) + _fma(x, x, -x_sq) + _fma(y, y, -y_sq)
    return s, s_e


@njit(**_JIT)
def rhypot_naive_core(x, y):
    s = x * x + y * y
    r = 1.0 / s
    return math.sqrt(r), s, r


@njit(**_JIT)
def rhypot_compensated_core(x, y):
    x = abs(x)
    y = abs(y)
    if x < y:
        x, y = y, x
    x_sq = x * x
    y_sq = y * y
    s = x_sq + y_sq
    s_e = y_sq - (s - x_sq) + _fma(x, x, -x_sq) + _fma(y, y, -y_sq)
    r = 1.0 / s
    sigma_res = _fma(-r, s_e, _fma(-r, s, 1.0))
    rho = math.sqrt(r)
    tau = _fma(-rho, rho, r)
    nu = _fma(s, tau, sigma_res) * 0.5
    return _fma(rho, nu, rho), s, r


# ---------------------------------------------------------------------------
# Givens rotation generation
# ---------------------------------------------------------------------------


@njit(**_JIT)
def dlartg_naive_core(f, g):
    s = f * f + g * g
    h = math.sqrt(s)
    return f / h, g / h, s


@njit(**_JIT)
def dlartg_compensated_core(f, g):
    x = abs(f)
    y = abs(g)
    if x < y:
        x, y = y, x
    x_sq = x * x
    y_sq = y * y
    s = x_sq + y_sq
    s_e = y_sq - (s - x_sq) + _fma(x, x, -x_sq) + _fma(y, y, -y_sq)
    r = 1.0 / s
    sigma_res = _fma(-r, s_e, _fma(-r, s, 1.0))
    rho = math.sqrt(r)
    tau = _fma(-rho, rho, r)
    nu_bar = rho * _fma(s, tau, sigma_res) * 0.5
    c = _fma(f, rho, f * nu_bar)
    sn = _fma(g, rho, g * nu_bar)
    return c, sn, s, r


# ---------------------------------------------------------------------------
# Batch variants (harness hot path)
# ---------------------------------------------------------------------------


@njit(**_JIT)
def rsqrt_naive_batch(xs, out):
    for i in range(xs.size):
        out[i] = rsqrt_naive(xs[i])


@njit(**_JIT)
def rsqrt_compensated_batch(xs, out):
    for i in range(xs.size):
        out[i] = rsqrt_compensated(xs[i])


@njit(**_JIT)
def rsqrt_modified_batch(xs, out):
    for i in range(xs.size):
        out[i] = rsqrt_modified(xs[i])


@njit(**_JIT)
def rcpsqrt331d_batch(xs, out):
    for i in range(xs.size):
        out[i] = rcpsqrt331d(xs[i])


@njit(**_JIT)
def rcpsqrt331d_modified_batch(xs, out):
    for i in range(xs.size):
        out[i] = rcpsqrt331d_modified(xs[i])


@njit(**_JIT)
def rhypot_naive_batch(xs, ys, out):
    for i in range(xs.size):
        out[i] = rhypot_naive_core(xs[i], ys[i])[0]


@njit(**_JIT)
def rhypot_compensated_batch(xs, ys, out):
    for i in range(xs.size):
        out[i] = rhypot_compensated_core(xs[i], ys[i])[0]


@njit(**_JIT)
def dlartg_naive_batch(fs, gs, out_c, out_s):
    for i in range(fs.size):
        c, s, _ = dlartg_naive_core(fs[i], gs[i])
        out_c[i] = c
        out_s[i] = s


@njit(**_JIT)
def dlartg_compensated_batch(fs, gs, out_c, out_s):
    for i in range(fs.size):
        c, s, _, _ = dlartg_compensated_core(fs[i], gs[i])
        out_c[i] = c
        out_s[i] = s
