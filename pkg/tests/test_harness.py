"""Tests for the experiment harness: deterministic sampling, trial
execution, report invariants, rendering, and inspection records.
"""

import json
import math

import numpy as np
import pytest

from rsqrtlib import _kernels
from rsqrtlib.harness import (
    ALGORITHMS,
    ConfigError,
    Distribution,
    ErrorRateReport,
    TrialConfig,
    generate_samples,
    inspect_pair,
    inspect_value,
    oracle_references,
    render_report,
    report_from_json,
    run_trial,
)
from rsqrtlib.oracle import rn_rsqrt_ref
from rsqrtlib.rsqrt import rsqrt_naive


class TestDistribution:
    """Validation and round-trippable spec strings."""

    def test_kinds(self):
        Distribution("uniform", (0.5, 1.0))
        Distribution("normal", (0.0, 1.0))
        Distribution("loguniform", (-40.0, 40.0))

    def test_invalid(self):
        with pytest.raises(ConfigError):
            Distribution("poisson", (1.0, 2.0))
        with pytest.raises(ConfigError):
            Distribution("uniform", (2.0, 2.0))
        with pytest.raises(ConfigError):
            Distribution("uniform", (3.0, 1.0))
        with pytest.raises(ConfigError):
            Distribution("normal", (0.0, 0.0))
        with pytest.raises(ConfigError):
            Distribution("normal", (0.0, -1.0))
        with pytest.raises(ConfigError):
            Distribution("uniform", (0.0, math.inf))

    def test_spec_round_trip(self):
        for d in (Distribution("uniform", (0.5, 1.0)),
                  Distribution("normal", (0.0, 1.0)),
                  Distribution("loguniform", (-900.0, 900.0))):
            assert Distribution.from_spec(d.spec) == d

    def test_from_spec_errors(self):
        for bad in ("uniform", "uniform:1", "uniform:1:2:3", "uniform:a:b",
                    "banana:1:2"):
            with pytest.raises(ConfigError):
                Distribution.from_spec(bad)


class TestTrialConfig:
    """Config validation happens at construction."""

    def test_valid(self):
        cfg = TrialConfig("rsqrt_naive", Distribution("uniform", (0.5, 1.0)), 10, 1)
        assert cfg.rng_name == "pcg64"

    def test_invalid(self):
        dist = Distribution("uniform", (0.5, 1.0))
        with pytest.raises(ConfigError):
            TrialConfig("nope", dist, 10, 1)
        with pytest.raises(ConfigError):
            TrialConfig("rsqrt_naive", dist, 0, 1)
        with pytest.raises(ConfigError):
            TrialConfig("rsqrt_naive", dist, 10, -1)
        with pytest.raises(ConfigError):
            TrialConfig("rsqrt_naive", dist, 10, 2**64)
        with pytest.raises(ConfigError):
            TrialConfig("rsqrt_naive", dist, 10, 1, rng_name="mersenne")


class TestSampling:
    """Streams are deterministic, respect bounds, and avoid pathological
    endpoint values."""

    def test_deterministic(self):
        d = Distribution("uniform", (0.5, 1.0))
        a = generate_samples(d, 1000, 7)
        b = generate_samples(d, 1000, 7)
        np.testing.assert_array_equal(a, b)
        c = generate_samples(d, 1000, 8)
        assert not np.array_equal(a, c)

    def test_uniform_bounds_half_open(self):
        d = Distribution("uniform", (0.5, 1.0))
        x = generate_samples(d, 20000, 3)
        assert x.min() >= 0.5 and x.max() < 1.0

    def test_uniform_zero_lo_never_yields_zero(self):
        d = Distribution("uniform", (0.0, 1.0))
        x = generate_samples(d, 20000, 4)
        assert x.min() > 0.0

    def test_normal_params(self):
        d = Distribution("normal", (10.0, 2.0))
        x = generate_samples(d, 50000, 5)
        assert abs(x.mean() - 10.0) < 0.05
        assert abs(x.std() - 2.0) < 0.05

    def test_loguniform_exponent_spread(self):
        d = Distribution("loguniform", (-40.0, 40.0))
        x = generate_samples(d, 5000, 6)
        e = np.log2(x)
        assert e.min() >= -40.0 and e.max() < 40.0
        assert e.max() - e.min() > 60.0

    def test_pair_arity(self):
        d = Distribution("normal", (0.0, 1.0))
        x = generate_samples(d, 100, 9, arity=2)
        assert x.shape == (100, 2)
        # rows come from one stream, so arity-1 prefix matches column order
        flat = generate_samples(d, 200, 9)
        np.testing.assert_array_equal(x.reshape(-1), flat)


class TestRegistry:
    """Eleven scored algorithms, each with a working batch kernel that
    matches its scalar wrapper bit for bit."""

    def test_expected_names(self):
        assert sorted(ALGORITHMS) == [
            "dlartg_compensated_cos", "dlartg_compensated_sin",
            "dlartg_naive_cos", "dlartg_naive_sin",
            "rcpsqrt331d", "rcpsqrt331d_modified",
            "rhypot_compensated", "rhypot_naive",
            "rsqrt_compensated", "rsqrt_modified", "rsqrt_naive",
        ]

    def test_batch_matches_scalar(self):
        rng = np.random.default_rng(61)
        xs = rng.uniform(0.5, 2.0, size=500)
        spec = ALGORITHMS["rsqrt_naive"]
        out = spec.batch(xs)
        for x, v in zip(xs, out):
            assert v == rsqrt_naive(float(x))

    def test_oracle_references_helper(self):
        rng = np.random.default_rng(62)
        xs = rng.uniform(0.5, 1.0, size=50)
        refs = oracle_references("rsqrt_naive", xs)
        for x, v in zip(xs, refs):
            assert v == rn_rsqrt_ref(float(x))


class TestRunTrial:
    """Reports are pure functions of the config."""

    def _cfg(self, **kw):
        base = dict(algorithm="rsqrt_naive",
                    distribution=Distribution("uniform", (0.5, 1.0)),
                    n=20000, seed=11)
        base.update(kw)
        return TrialConfig(**base)

    def test_bucket_invariant(self):
        rep = run_trial(self._cfg())
        assert rep.zero_ulp + rep.one_ulp + rep.two_ulp \
            + rep.three_plus_ulp + rep.rejected == rep.n

    def test_serial_parallel_identical(self):
        cfg = self._cfg(algorithm="rhypot_compensated",
                        distribution=Distribution("normal", (0.0, 1.0)),
                        n=10000)
        a = run_trial(cfg)
        b = run_trial(cfg, chunk_size=777, workers=3)
        c = run_trial(cfg, chunk_size=10, workers=1)
        assert a == b == c

    def test_rerun_identical_bytes(self):
        cfg = self._cfg()
        r1 = render_report(run_trial(cfg), "csv")
        r2 = render_report(run_trial(cfg), "csv")
        assert r1.encode() == r2.encode()

    def test_precomputed_reference(self):
        cfg = self._cfg(n=2000)
        samples = generate_samples(cfg.distribution, cfg.n, cfg.seed)
        refs = oracle_references(cfg.algorithm, samples)
        assert run_trial(cfg, reference=refs) == run_trial(cfg)
        with pytest.raises(ConfigError):
            run_trial(cfg, reference=refs[:-1])

    def test_rejection_tally(self):
        """loguniform spans exceed the rsqrt kernel domain; out-of-range
        samples are counted as rejected, not scored."""
        cfg = TrialConfig("rsqrt_modified",
                          Distribution("loguniform", (-700.0, 700.0)),
                          5000, 13)
        rep = run_trial(cfg)
        assert rep.rejected > 0
        assert rep.zero_ulp + rep.rejected == rep.n  # scored part is exact
        assert rep.scored == rep.n - rep.rejected

    def test_compensated_exact_on_gaussian(self):
        cfg = self._cfg(algorithm="dlartg_compensated_sin",
                        distribution=Distribution("normal", (0.0, 1.0)),
                        n=5000)
        rep = run_trial(cfg)
        assert rep.zero_ulp == rep.n and rep.max_ulp == 0


class TestRendering:
    """Exact CSV column contract, JSON round trip, markdown table."""

    _REPORT = ErrorRateReport(
        algo="rsqrt_naive", dist="uniform:0.5:1.0", n=100, seed=9,
        rng="pcg64", zero_ulp=100, one_ulp=0, two_ulp=0,
        three_plus_ulp=0, max_ulp=0, rejected=0,
    )

    def test_csv_exact(self):
        text = render_report(self._REPORT, "csv")
        lines = text.splitlines()
        assert lines[0] == ("algo,dist,n,seed,zero_ulp,one_ulp,two_ulp,"
                            "three_plus_ulp,max_ulp,rejected")
        assert lines[1] == "rsqrt_naive,uniform:0.5:1.0,100,9,100,0,0,0,0,0"
        assert lines[1].endswith(",100,0,0,0,0,0")

    def test_json_round_trip(self):
        text = render_report(self._REPORT, "json")
        assert report_from_json(text) == self._REPORT
        d = json.loads(text)
        assert d["rng"] == "pcg64"

    def test_markdown_rows(self):
        text = render_report(self._REPORT, "md")
        assert "| Zero ulp | 100.000 |" in text
        assert "| One ulp | 0.000 |" in text
        assert "| Two ulp" not in text  # empty buckets beyond one are omitted

    def test_markdown_includes_nonzero_two_bucket(self):
        rep = ErrorRateReport(algo="a", dist="normal:0.0:1.0", n=4, seed=1,
                              rng="pcg64", zero_ulp=1, one_ulp=1, two_ulp=1,
                              three_plus_ulp=1, max_ulp=5, rejected=0)
        text = render_report(rep, "md")
        assert "| Two ulp | 25.000 |" in text
        assert "| Three+ ulp | 25.000 |" in text

    def test_unknown_format(self):
        with pytest.raises(ConfigError):
            render_report(self._REPORT, "yaml")

    def test_report_invariant_enforced(self):
        with pytest.raises(ValueError):
            ErrorRateReport(algo="a", dist="d", n=10, seed=1, rng="pcg64",
                            zero_ulp=5, one_ulp=0, two_ulp=0,
                            three_plus_ulp=0, max_ulp=0, rejected=0)


class TestInspection:
    """Inspection records carry every algorithm, the oracle values, and
    per-entry ulp distances."""

    def test_single_value(self):
        rec = inspect_value(0.75)
        names = [e.algorithm for e in rec.entries]
        assert names == ["rsqrt_naive", "rsqrt_compensated", "rsqrt_modified",
                         "rcpsqrt331d", "rcpsqrt331d_modified"]
        assert rec.references[0][1] == rn_rsqrt_ref(0.75)
        assert all(e.ulp_distance is not None and e.ulp_distance <= 1
                   for e in rec.entries)
        assert not rec.had_domain_error

    def test_pair(self):
        rec = inspect_pair(3.0, 4.0)
        assert len(rec.entries) == 6
        assert ("rhypot", 0.2) in rec.references
        assert all(e.ulp_distance is not None for e in rec.entries)

    def test_out_of_kernel_range_marks_entries(self):
        rec = inspect_value(2.0**600)
        noted = {e.algorithm for e in rec.entries if e.note}
        assert noted == {"rcpsqrt331d", "rcpsqrt331d_modified"}
        assert rec.had_domain_error

    def test_render_shows_hex_and_decimal(self):
        text = inspect_value(0.75).render()
        assert "0x1.8000000000000p-1" in text
        assert "0.75" in text
