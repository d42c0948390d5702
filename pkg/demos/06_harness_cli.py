"""Walkthrough: the experiment harness and the command-line front end.

The harness turns "how often does this kernel round correctly?" into a
reproducible measurement: a seeded distribution, a kernel from the
registry, oracle references, and a report of ulp-distance buckets.
Reports are deterministic down to the byte for a given (algorithm,
distribution, n, seed), regardless of chunking or worker count.

Run:  python3 demos/06_harness_cli.py
"""

import subprocess
import sys

from rsqrtlib import (
    ALGORITHMS,
    Distribution,
    TrialConfig,
    generate_samples,
    inspect_value,
    oracle_references,
    render_report,
    run_trial,
)

# ----------------------------------------------------------------------
# 1. The registry
# ----------------------------------------------------------------------

print("registered algorithms:")
for name, spec in sorted(ALGORITHMS.items()):
    print(f"  {name:<24} arity {spec.arity}")
print()

# ----------------------------------------------------------------------
# 2. One trial, three renderings
# ----------------------------------------------------------------------

cfg = TrialConfig(algorithm="rsqrt_compensated",
                  distribution=Distribution("uniform", (0.5, 1.0)),
                  n=50_000, seed=11)
report = run_trial(cfg)
print("csv:")
print(render_report(report, "csv"))
print("markdown:")
print(render_report(report, "md"))

# ----------------------------------------------------------------------
# 3. Determinism and reference reuse
#
# Chunked parallel scoring merges per-chunk tallies with associative
# operations only, so worker count cannot change a single byte.  When
# several kernels share a distribution and seed, compute the oracle
# references once and pass them in; the expensive part is the oracle,
# not the kernels.
# ----------------------------------------------------------------------

serial = run_trial(cfg, chunk_size=50_000, workers=1)
chunked = run_trial(cfg, chunk_size=7_001, workers=4)
print("serial == chunked (byte level):",
      render_report(serial, "json") == render_report(chunked, "json"))

samples = generate_samples(cfg.distribution, cfg.n, cfg.seed)
refs = oracle_references("rsqrt_naive", samples)
for algo in ("rsqrt_naive", "rsqrt_compensated", "rsqrt_modified"):
    shared = TrialConfig(algorithm=algo, distribution=cfg.distribution,
                         n=cfg.n, seed=cfg.seed)
    rep = run_trial(shared, reference=refs)
    print(f"  {algo:<20} zero ulp {rep.percentage('zero_ulp'):7.3f}%")
print()

# ----------------------------------------------------------------------
# 4. Point inspection
# ----------------------------------------------------------------------

record = inspect_value(0.7)
print(record.render())
print()

# ----------------------------------------------------------------------
# 5. The same operations from the shell
#
# The installed `rsqrtlib` script exposes bench and inspect; exit code
# 0 means clean, 2 a configuration error, 3 a domain rejection.
# ----------------------------------------------------------------------

for argv in (
    [sys.executable, "-m", "rsqrtlib.cli", "bench", "--algo", "rsqrt_naive",
     "--dist", "uniform:0.5:1.0", "--n", "20000", "--seed", "7"],
    [sys.executable, "-m", "rsqrtlib.cli", "inspect", "--f", "3.0", "--g", "4.0"],
):
    print("$", " ".join(argv[2:]))
    proc = subprocess.run(argv, capture_output=True, text=True)
    print(proc.stdout, end="")
    print(f"(exit {proc.returncode})")
    print()
