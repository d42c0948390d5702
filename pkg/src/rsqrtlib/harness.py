"""Seeded experiment harness: ulp-accuracy trials of every kernel vs the oracle.

A trial draws a deterministic sample stream, runs one algorithm over it
in compiled batches, computes the correctly rounded reference for every
sample (never a spot check: the 100%-exact claims need all of them), and
buckets the ulp distances into {0, 1, 2, >=3}.  Reports render as CSV,
JSON, or a markdown table of percentages.

Determinism contract: a report is a pure function of its TrialConfig.
Sampling uses PCG64 keyed by the seed; uniform variates are
integers(0, 2^53) * 2^-53 mapped affinely onto [lo, hi), and normal
variates apply the inverse normal CDF to (2*integers(0, 2^52) + 1) *
2^-53, which can never hit 0, 1/2, or 1.  Pair streams are one stream
reshaped to rows of two.  Chunked execution partitions samples by index
and merges bucket counts associatively, so chunk size and worker count
cannot change a report.

Samples outside an algorithm's domain or safe range (possible under the
loguniform stress distribution) are tallied as rejected, not scored and
not silently dropped.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.special

from . import _kernels, oracle
from .fp_core import DomainError, RangeError, ulp_distance
from .givens import dlartg_compensated, dlartg_naive
from .rhypot import rhypot_compensated, rhypot_naive
from .rsqrt import KERNEL_MAX, KERNEL_MIN, rsqrt_full_range
from .fast_rsqrt import rcpsqrt331d, rcpsqrt331d_modified

__all__ = [
    "ConfigError",
    "Distribution",
    "TrialConfig",
    "ErrorRateReport",
    "InspectionEntry",
    "InspectionRecord",
    "ALGORITHMS",
    "generate_samples",
    "oracle_references",
    "run_trial",
    "render_report",
    "report_from_json",
    "inspect_value",
    "inspect_pair",
]

_RNG_NAME = "pcg64"
_SMALLEST_NORMAL = 2.0**-1022
_LARGEST_SAFE_SUM = 2.0**1022


class ConfigError(ValueError):
    """Invalid trial configuration (unknown algorithm, bad parameters)."""


def _fmt(v: float) -> str:
    return repr(float(v))


@dataclass(frozen=True)
class Distribution:
    """Sampling law: uniform(lo, hi), normal(mean, stddev), or the
    loguniform stress law 2**uniform(lo, hi) with uniformly distributed
    exponent."""

    kind: str
    params: tuple[float, float]

    def __post_init__(self):
        if self.kind not in ("uniform", "normal", "loguniform"):
            raise ConfigError(f"unknown distribution kind {self.kind!r}")
        ok = all(math.isfinite(p) for p in self.params)
        a, b = self.params
        if self.kind == "normal":
            ok = ok and b > 0.0
        else:
            ok = ok and a < b
        if not ok:
            raise ConfigError(f"bad parameters {self.params!r} for {self.kind}")
        object.__setattr__(self, "params", (float(a), float(b)))

    @property
    def spec(self) -> str:
        a, b = self.params
        return f"{self.kind}:{_fmt(a)}:{_fmt(b)}"

    @classmethod
    def from_spec(cls, text: str) -> "Distribution":
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(
                f"distribution spec must be kind:a:b, got {text!r}"
            )
        try:
            return cls(parts[0], (float(parts[1]), float(parts[2])))
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"unparseable distribution numbers in {text!r}") from None


@dataclass(frozen=True)
class TrialConfig:
    """Everything that determines a trial's outcome."""

    algorithm: str
    distribution: Distribution
    n: int
    seed: int
    rng_name: str = _RNG_NAME

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(
                f"unknown algorithm {self.algorithm!r}; known: {sorted(ALGORITHMS)}"
            )
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit integer, got {self.seed!r}")
        if self.rng_name != _RNG_NAME:
            raise ConfigError(f"only rng {_RNG_NAME!r} is implemented")


@dataclass(frozen=True)
class ErrorRateReport:
    """Bucketed ulp distances of one algorithm against the oracle."""

    algo: str
    dist: str
    n: int
    seed: int
    rng: str
    zero_ulp: int
    one_ulp: int
    two_ulp: int
    three_plus_ulp: int
    max_ulp: int
    rejected: int

    def __post_init__(self):
        total = (self.zero_ulp + self.one_ulp + self.two_ulp
                 + self.three_plus_ulp + self.rejected)
        if total != self.n:
            raise ValueError(f"bucket counts sum to {total}, expected n = {self.n}")

    @property
    def scored(self) -> int:
        return self.n - self.rejected

    def percentage(self, bucket: str) -> float:
        """Bucket share of scored samples, in percent."""
        if self.scored == 0:
            return math.nan
        return 100.0 * getattr(self, bucket) / self.scored

    def to_dict(self) -> dict:
        return {
            "algo": self.algo, "dist": self.dist, "n": self.n,
            "seed": self.seed, "rng": self.rng,
            "zero_ulp": self.zero_ulp, "one_ulp": self.one_ulp,
            "two_ulp": self.two_ulp, "three_plus_ulp": self.three_plus_ulp,
            "max_ulp": self.max_ulp, "rejected": self.rejected,
        }


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _uniform_stream(rng, lo: float, hi: float, count: int) -> np.ndarray:
    u = rng.integers(0, 1 << 53, size=count, dtype=np.uint64) * 2.0**-53
    x = lo + (hi - lo) * u
    x = np.minimum(x, np.nextafter(hi, lo))  # keep the interval half-open
    if lo == 0.0:
        # an exact zero at the endpoint is pathological for every kernel
        x[x == 0.0] = math.ldexp(hi - lo, -54)
    return x


def generate_samples(dist: Distribution, n: int, seed: int, arity: int = 1) -> np.ndarray:
    """Deterministic sample array: shape (n,) or (n, arity) for pairs."""
    if not isinstance(n, int) or n < 1:
        raise ConfigError(f"n must be a positive integer, got {n!r}")
    if arity not in (1, 2):
        raise ConfigError(f"arity must be 1 or 2, got {arity!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    count = n * arity
    a, b = dist.params
    if dist.kind == "uniform":
        x = _uniform_stream(rng, a, b, count)
    elif dist.kind == "loguniform":
        x = np.exp2(_uniform_stream(rng, a, b, count))
    else:
        raw = rng.integers(0, 1 << 52, size=count, dtype=np.uint64)
        u = (2.0 * raw + 1.0) * 2.0**-53  # in (0, 1), never exactly 1/2
        x = a + b * scipy.special.ndtri(u)
    return x if arity == 1 else x.reshape(n, arity)


# ---------------------------------------------------------------------------
# Algorithm registry
# ---------------------------------------------------------------------------


def _batch1(kernel) -> Callable[[np.ndarray], np.ndarray]:
    def run(xs: np.ndarray) -> np.ndarray:
        out = np.empty(xs.shape[0], dtype=np.float64)
        kernel(xs, out)
        return out

    return run


def _batch2(kernel) -> Callable[[np.ndarray], np.ndarray]:
    def run(pairs: np.ndarray) -> np.ndarray:
        out = np.empty(pairs.shape[0], dtype=np.float64)
        kernel(np.ascontiguousarray(pairs[:, 0]), np.ascontiguousarray(pairs[:, 1]), out)
        return out

    return run


def _batch_givens(kernel, channel: int) -> Callable[[np.ndarray], np.ndarray]:
    def run(pairs: np.ndarray) -> np.ndarray:
        out_c = np.empty(pairs.shape[0], dtype=np.float64)
        out_s = np.empty(pairs.shape[0], dtype=np.float64)
        kernel(np.ascontiguousarray(pairs[:, 0]), np.ascontiguousarray(pairs[:, 1]),
               out_c, out_s)
        return out_c if channel == 0 else out_s

    return run


def _mask_rsqrt(xs: np.ndarray) -> np.ndarray:
    return (xs >= KERNEL_MIN) & (xs <= KERNEL_MAX)


def _mask_pair(pairs: np.ndarray) -> np.ndarray:
    x, y = pairs[:, 0], pairs[:, 1]
    with np.errstate(over="ignore"):
        s = x * x + y * y
    return (
        np.isfinite(x) & np.isfinite(y)
        & (s >= _SMALLEST_NORMAL) & (s <= _LARGEST_SAFE_SUM)
    )


def _oracle_rsqrt(xs: np.ndarray) -> np.ndarray:
    return oracle.rn_rsqrt_ref_many(xs)


def _oracle_rhypot(pairs: np.ndarray) -> np.ndarray:
    return oracle.rn_rhypot_ref_many(pairs[:, 0], pairs[:, 1])


def _oracle_givens(channel: int):
    def run(pairs: np.ndarray) -> np.ndarray:
        c, s = oracle.rn_givens_ref_many(pairs[:, 0], pairs[:, 1])
        return c if channel == 0 else s

    return run


@dataclass(frozen=True)
class AlgorithmSpec:
    name: str
    arity: int
    batch: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    reference: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    mask: Callable[[np.ndarray], np.ndarray] = field(repr=False)


ALGORITHMS: dict[str, AlgorithmSpec] = {
    spec.name: spec
    for spec in [
        AlgorithmSpec("rsqrt_naive", 1, _batch1(_kernels.rsqrt_naive_batch),
                      _oracle_rsqrt, _mask_rsqrt),
        AlgorithmSpec("rsqrt_compensated", 1, _batch1(_kernels.rsqrt_compensated_batch),
                      _oracle_rsqrt, _mask_rsqrt),
        AlgorithmSpec("rsqrt_modified", 1, _batch1(_kernels.rsqrt_modified_batch),
                      _oracle_rsqrt, _mask_rsqrt),
        AlgorithmSpec("rcpsqrt331d", 1, _batch1(_kernels.rcpsqrt331d_batch),
                      _oracle_rsqrt, _mask_rsqrt),
        AlgorithmSpec("rcpsqrt331d_modified", 1,
                      _batch1(_kernels.rcpsqrt331d_modified_batch),
                      _oracle_rsqrt, _mask_rsqrt),
        AlgorithmSpec("rhypot_naive", 2, _batch2(_kernels.rhypot_naive_batch),
                      _oracle_rhypot, _mask_pair),
        AlgorithmSpec("rhypot_compensated", 2,
                      _batch2(_kernels.rhypot_compensated_batch),
                      _oracle_rhypot, _mask_pair),
        AlgorithmSpec("dlartg_naive_cos", 2,
                      _batch_givens(_kernels.dlartg_naive_batch, 0),
                      _oracle_givens(0), _mask_pair),
        AlgorithmSpec("dlartg_naive_sin", 2,
                      _batch_givens(_kernels.dlartg_naive_batch, 1),
                      _oracle_givens(1), _mask_pair),
        AlgorithmSpec("dlartg_compensated_cos", 2,
                      _batch_givens(_kernels.dlartg_compensated_batch, 0),
                      _oracle_givens(0), _mask_pair),
        AlgorithmSpec("dlartg_compensated_sin", 2,
                      _batch_givens(_kernels.dlartg_compensated_batch, 1),
                      _oracle_givens(1), _mask_pair),
    ]
}


def oracle_references(algorithm: str, samples: np.ndarray) -> np.ndarray:
    """Correctly rounded references for a full sample array.

    Precompute these once per (distribution, n, seed) and hand them to
    run_trial via ``reference=`` when several algorithms share a stream.
    """
    return ALGORITHMS[algorithm].reference(samples)


# ---------------------------------------------------------------------------
# Trials
# ---------------------------------------------------------------------------


def _ulp_distance_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # normalize -0.0 to +0.0, then same-sign distances are |bit differences|
    a = a + 0.0
    b = b + 0.0
    if np.any((a < 0.0) & (b > 0.0) | (a > 0.0) & (b < 0.0)):
        raise RuntimeError("ulp distance across a sign change in trial outputs")
    return np.abs(a.view(np.int64) - b.view(np.int64))


def _score_chunk(spec: AlgorithmSpec, chunk: np.ndarray,
                 refs: np.ndarray | None) -> tuple[int, int, int, int, int, int]:
    mask = spec.mask(chunk)
    rejected = int(chunk.shape[0] - np.count_nonzero(mask))
    if rejected:
        chunk = chunk[mask]
    if chunk.shape[0] == 0:
        return 0, 0, 0, 0, 0, rejected
    outs = spec.batch(chunk)
    if refs is None:
        ref = spec.reference(chunk)
    else:
        ref = refs[mask] if rejected else refs
    d = _ulp_distance_array(outs, ref)
    counts = np.bincount(np.minimum(d, 3), minlength=4)
    return (int(counts[0]), int(counts[1]), int(counts[2]), int(counts[3]),
            int(d.max(initial=0)), rejected)


def run_trial(config: TrialConfig, *, reference: np.ndarray | None = None,
              chunk_size: int = 1_000_000, workers: int = 1) -> ErrorRateReport:
    """Execute a trial and bucket every sample's ulp distance to the oracle.

    ``reference`` may carry precomputed oracle values aligned with the
    sample stream.  chunk_size and workers only affect scheduling; the
    report is bit-identical for any chunking because the merge is a sum
    per bucket and a max.
    """
    spec = ALGORITHMS[config.algorithm]
    if chunk_size < 1:
        raise ConfigError(f"chunk_size must be positive, got {chunk_size!r}")
    if workers < 1:
        raise ConfigError(f"workers must be positive, got {workers!r}")
    samples = generate_samples(config.distribution, config.n, config.seed, spec.arity)
    if reference is not None and len(reference) != config.n:
        raise ConfigError(
            f"reference has {len(reference)} entries for n = {config.n}"
        )
    spans = [(i, min(i + chunk_size, config.n))
             for i in range(0, config.n, chunk_size)]

    def work(span: tuple[int, int]):
        i0, i1 = span
        refs = None if reference is None else reference[i0:i1]
        return _score_chunk(spec, samples[i0:i1], refs)

    if workers == 1 or len(spans) == 1:
        parts = [work(s) for s in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, spans))
    zero = one = two = three = rejected = 0
    max_ulp = 0
    for c0, c1, c2, c3, mx, rej in parts:
        zero += c0
        one += c1
        two += c2
        three += c3
        rejected += rej
        max_ulp = max(max_ulp, mx)
    return ErrorRateReport(
        algo=config.algorithm, dist=config.distribution.spec, n=config.n,
        seed=config.seed, rng=config.rng_name, zero_ulp=zero, one_ulp=one,
        two_ulp=two, three_plus_ulp=three, max_ulp=max_ulp, rejected=rejected,
    )


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

_CSV_COLUMNS = ("algo", "dist", "n", "seed", "zero_ulp", "one_ulp", "two_ulp",
                "three_plus_ulp", "max_ulp", "rejected")
_BUCKET_LABELS = (("zero_ulp", "Zero ulp"), ("one_ulp", "One ulp"),
                  ("two_ulp", "Two ulp"), ("three_plus_ulp", "Three+ ulp"))


def render_report(report: ErrorRateReport, fmt: str) -> str:
    """Render as "csv", "json", or "md" (markdown percentage table)."""
    if fmt == "csv":
        d = report.to_dict()
        header = ",".join(_CSV_COLUMNS)
        row = ",".join(str(d[c]) for c in _CSV_COLUMNS)
        return f"{header}\n{row}\n"
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt in ("md", "markdown"):
        lines = [
            f"### {report.algo} vs exact oracle",
            "",
            f"dist `{report.dist}`, n = {report.n}, seed = {report.seed}, "
            f"rng = {report.rng}",
            "",
            "| Error | Percentage |",
            "| --- | --- |",
        ]
        for bucket, label in _BUCKET_LABELS:
            count = getattr(report, bucket)
            if count or bucket in ("zero_ulp", "one_ulp"):
                lines.append(f"| {label} | {report.percentage(bucket):.3f} |")
        lines.append("")
        lines.append(f"max ulp distance {report.max_ulp}, rejected {report.rejected}")
        return "\n".join(lines) + "\n"
    raise ConfigError(f"unknown report format {fmt!r}")


def report_from_json(text: str) -> ErrorRateReport:
    """Inverse of render_report(..., "json")."""
    try:
        d = json.loads(text)
        return ErrorRateReport(**d)
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(f"not a report JSON document: {exc}") from None


# ---------------------------------------------------------------------------
# Single-value inspection
# ---------------------------------------------------------------------------


def _hexfmt(v: float) -> str:
    return v.hex() if math.isfinite(v) else repr(v)


@dataclass(frozen=True)
class InspectionEntry:
    algorithm: str
    value: float
    ulp_distance: int | None
    note: str = ""


@dataclass(frozen=True)
class InspectionRecord:
    """All algorithm outputs and oracle values for one input (or pair)."""

    inputs: tuple[tuple[str, float], ...]
    references: tuple[tuple[str, float], ...]
    entries: tuple[InspectionEntry, ...]

    def render(self) -> str:
        lines = []
        for name, v in self.inputs:
            lines.append(f"{name} = {_fmt(v)} ({_hexfmt(v)})")
        for name, v in self.references:
            lines.append(f"oracle {name} = {_fmt(v)} ({_hexfmt(v)})")
        lines.append("")
        w = max(len(e.algorithm) for e in self.entries)
        for e in self.entries:
            if e.note:
                lines.append(f"{e.algorithm:<{w}}  {e.note}")
                continue
            d = "-" if e.ulp_distance is None else str(e.ulp_distance)
            lines.append(
                f"{e.algorithm:<{w}}  {_fmt(e.value):<24} {_hexfmt(e.value):<26} "
                f"ulp {d}"
            )
        return "\n".join(lines) + "\n"

    @property
    def had_domain_error(self) -> bool:
        return any(e.note for e in self.entries)


def _entry(name: str, fn, ref: float) -> InspectionEntry:
    try:
        v = float(fn())
    except (DomainError, RangeError) as exc:
        return InspectionEntry(name, math.nan, None, note=f"rejected: {exc}")
    try:
        d = ulp_distance(v, ref)
    except DomainError:
        d = None
    return InspectionEntry(name, v, d)


def inspect_value(x: float) -> InspectionRecord:
    """Run every single-input algorithm and the oracle on x."""
    ref = oracle.rn_rsqrt_ref(x)  # domain errors propagate: nothing applies
    entries = (
        _entry("rsqrt_naive", lambda: rsqrt_full_range(x, "naive"), ref),
        _entry("rsqrt_compensated", lambda: rsqrt_full_range(x, "compensated"), ref),
        _entry("rsqrt_modified", lambda: rsqrt_full_range(x, "modified"), ref),
        _entry("rcpsqrt331d", lambda: rcpsqrt331d(x), ref),
        _entry("rcpsqrt331d_modified", lambda: rcpsqrt331d_modified(x), ref),
    )
    return InspectionRecord((("x", x),), (("rsqrt", ref),), entries)


def inspect_pair(f: float, g: float) -> InspectionRecord:
    """Run every pair-input algorithm and the oracles on (f, g)."""
    rref = oracle.rn_rhypot_ref(f, g)
    cref, sref = oracle.rn_givens_ref(f, g)
    entries = (
        _entry("rhypot_naive", lambda: rhypot_naive(f, g), rref),
        _entry("rhypot_compensated", lambda: rhypot_compensated(f, g), rref),
        _entry("dlartg_naive_cos", lambda: dlartg_naive(f, g).c, cref),
        _entry("dlartg_naive_sin", lambda: dlartg_naive(f, g).s, sref),
        _entry("dlartg_compensated_cos", lambda: dlartg_compensated(f, g).c, cref),
        _entry("dlartg_compensated_sin", lambda: dlartg_compensated(f, g).s, sref),
    )
    return InspectionRecord(
        (("f", f), ("g", g)),
        (("rhypot", rref), ("givens_c", cref), ("givens_s", sref)),
        entries,
    )
