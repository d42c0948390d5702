"""FMA-based compensated kernels for 1/sqrt(x), 1/sqrt(x^2+y^2), and
Givens rotations, with an exact correct-rounding oracle and a seeded
accuracy harness.

The compensated variants append one cheap Newton (or modified Halley)
correction built from error-free FMA residuals to an ordinary
square-root evaluation; on their documented ranges they return the
correctly rounded result for every tested input.  The oracle computes
round-to-nearest reference values with unbounded integer arithmetic and
emits checkable certificates, so accuracy claims never rest on a float
computation of the same flavor as the thing under test.

Importing this package verifies at load time that the runtime's fused
multiply-add rounds once; it refuses to run on hardware or builds where
the FMA contract does not hold.
"""

from .fp_core import (
    DomainError,
    RangeError,
    ScaledValue,
    UNIT_ROUNDOFF,
    bits_to_float,
    float_to_bits,
    fma_exact,
    fma_rn,
    split_pow4,
    ulp_distance,
    ulp_of,
)
from .dyadic import DyadicRational
from .oracle import (
    OracleCertificate,
    certificate_holds,
    rn_givens_cert,
    rn_givens_ref,
    rn_givens_ref_many,
    rn_rhypot_cert,
    rn_rhypot_ref,
    rn_rhypot_ref_many,
    rn_rsqrt_cert,
    rn_rsqrt_ref,
    rn_rsqrt_ref_many,
)
from .rsqrt import (
    KERNEL_MAX,
    KERNEL_MIN,
    CompensationTriple,
    compensation_terms,
    rsqrt_compensated,
    rsqrt_full_range,
    rsqrt_modified,
    rsqrt_naive,
)
from .fast_rsqrt import MAGIC, MagicConstants, rcpsqrt331d, rcpsqrt331d_modified
from .rhypot import SumSquares, rhypot_compensated, rhypot_naive, sum_squares_ee
from .givens import GivensRotation, dlartg_compensated, dlartg_naive
from .harness import (
    ALGORITHMS,
    ConfigError,
    Distribution,
    ErrorRateReport,
    InspectionRecord,
    TrialConfig,
    generate_samples,
    inspect_pair,
    inspect_value,
    oracle_references,
    render_report,
    report_from_json,
    run_trial,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "RangeError",
    "ScaledValue",
    "UNIT_ROUNDOFF",
    "bits_to_float",
    "float_to_bits",
    "fma_exact",
    "fma_rn",
    "split_pow4",
    "ulp_distance",
    "ulp_of",
    "DyadicRational",
    "OracleCertificate",
    "certificate_holds",
    "rn_rsqrt_ref",
    "rn_rsqrt_cert",
    "rn_rsqrt_ref_many",
    "rn_rhypot_ref",
    "rn_rhypot_cert",
    "rn_rhypot_ref_many",
    "rn_givens_ref",
    "rn_givens_cert",
    "rn_givens_ref_many",
    "KERNEL_MIN",
    "KERNEL_MAX",
    "CompensationTriple",
    "compensation_terms",
    "rsqrt_naive",
    "rsqrt_compensated",
    "rsqrt_modified",
    "rsqrt_full_range",
    "MAGIC",
    "MagicConstants",
    "rcpsqrt331d",
    "rcpsqrt331d_modified",
    "SumSquares",
    "sum_squares_ee",
    "rhypot_naive",
    "rhypot_compensated",
    "GivensRotation",
    "dlartg_naive",
    "dlartg_compensated",
    "ALGORITHMS",
    "ConfigError",
    "Distribution",
    "TrialConfig",
    "ErrorRateReport",
    "InspectionRecord",
    "generate_samples",
    "oracle_references",
    "run_trial",
    "render_report",
    "report_from_json",
    "inspect_value",
    "inspect_pair",
    "__version__",
]
