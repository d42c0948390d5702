"""Walkthrough: what correct rounding costs at runtime.

The compensated kernels add a handful of FMAs to each evaluation.  On
hardware with a fused multiply-add unit that is a few percent of the
total, not a multiple: the square root's latency dominates either way.
This script measures the compiled batch kernels side by side.

Numbers below are indicative only.  They depend on the machine, the
load, and the container; nothing in the test suite asserts on timing.

Run:  python3 demos/07_timing.py
"""

import time

import numpy as np

from rsqrtlib import ALGORITHMS, Distribution, generate_samples


def best_rate(batch, data, repeats=7):
    """Best-of-N throughput in nanoseconds per element."""
    batch(data)  # warm up (first call may trigger compilation)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        batch(data)
        best = min(best, time.perf_counter() - t0)
    return best * 1e9 / data.shape[0]


N = 1_000_000
xs = generate_samples(Distribution("uniform", (0.5, 1.0)), N, seed=42)
pairs = generate_samples(Distribution("normal", (0.0, 1.0)), N, seed=42, arity=2)

groups = [
    ("reciprocal square root", xs,
     [("rsqrt_naive", "naive"),
      ("rsqrt_compensated", "compensated"),
      ("rsqrt_modified", "modified")]),
    ("square-root-free rsqrt", xs,
     [("rcpsqrt331d", "naive"),
      ("rcpsqrt331d_modified", "modified")]),
    ("reciprocal hypotenuse", pairs,
     [("rhypot_naive", "naive"),
      ("rhypot_compensated", "compensated")]),
    ("Givens rotation (both channels)", pairs,
     [("dlartg_naive_cos", "naive"),
      ("dlartg_compensated_cos", "compensated")]),
]

for title, data, members in groups:
    print(title)
    baseline = None
    for algo, label in members:
        rate = best_rate(ALGORITHMS[algo].batch, data)
        if baseline is None:
            baseline = rate
            print(f"  {label:<12} {rate:7.2f} ns/elem")
        else:
            print(f"  {label:<12} {rate:7.2f} ns/elem"
                  f"   ({100.0 * (rate - baseline) / baseline:+5.1f}% vs naive)")
    print()

print("(overheads of a few percent are expected; large swings usually mean")
print(" the machine was busy, so rerun before reading much into them)")
