"""Command-line front end for the accuracy harness.

Two subcommands:

* ``bench``: run one seeded trial of one algorithm against the exact
  oracle and emit the report as csv, json, or markdown.
* ``inspect``: show every algorithm's output, the correctly rounded
  reference, and the ulp distances for a single input (or an f, g pair).

Floats are accepted in decimal ("0.75", "1e-3") or C99 hex ("0x1.8p-1")
notation and are echoed back in both.  Exit status: 0 on success, 2 on a
configuration error, 3 when an inspected value is rejected by a kernel's
domain checks.
"""

from __future__ import annotations

import argparse
import sys

from .fp_core import DomainError
from .harness import (
    ALGORITHMS,
    ConfigError,
    Distribution,
    TrialConfig,
    inspect_pair,
    inspect_value,
    render_report,
    run_trial,
)

_EXIT_CONFIG = 2
_EXIT_DOMAIN = 3


def parse_float(text: str) -> float:
    """Accept decimal or hexadecimal floating-point literals."""
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return float.fromhex(text)
    except ValueError:
        raise ConfigError(f"not a float literal: {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsqrtlib",
        description="accuracy harness for compensated reciprocal square root,"
                    " reciprocal hypotenuse, and Givens rotation kernels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run a seeded accuracy trial")
    bench.add_argument("--algo", required=True, choices=sorted(ALGORITHMS),
                       help="algorithm to score")
    bench.add_argument("--dist", required=True, metavar="KIND:A:B",
                       help="sampling law, e.g. uniform:0.5:1, normal:0:1,"
                            " loguniform:-20:20")
    bench.add_argument("--n", required=True, type=int, help="sample count")
    bench.add_argument("--seed", required=True, type=int, help="rng seed")
    bench.add_argument("--format", default="csv", choices=("csv", "json", "md"),
                       help="report format (default csv)")
    bench.add_argument("--out", metavar="PATH",
                       help="write the report here instead of stdout")

    inspect = sub.add_parser("inspect", help="inspect one input value or pair")
    inspect.add_argument("--x", metavar="X",
                         help="single input for the rsqrt family")
    inspect.add_argument("--f", metavar="F", help="first pair component")
    inspect.add_argument("--g", metavar="G", help="second pair component")
    return parser


def _cmd_bench(args: argparse.Namespace) -> int:
    config = TrialConfig(
        algorithm=args.algo,
        distribution=Distribution.from_spec(args.dist),
        n=args.n,
        seed=args.seed,
    )
    text = render_report(run_trial(config), args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_inspect(args: argparse.Namespace) -> int:
    single = args.x is not None
    paired = args.f is not None or args.g is not None
    if single == paired or (paired and (args.f is None or args.g is None)):
        raise ConfigError("inspect needs either --x or both --f and --g")
    try:
        if single:
            record = inspect_value(parse_float(args.x))
        else:
            record = inspect_pair(parse_float(args.f), parse_float(args.g))
    except DomainError as exc:
        print(f"rsqrtlib inspect: domain error: {exc}", file=sys.stderr)
        return _EXIT_DOMAIN
    sys.stdout.write(record.render())
    return _EXIT_DOMAIN if record.had_domain_error else 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_inspect(args)
    except ConfigError as exc:
        print(f"rsqrtlib {args.command}: {exc}", file=sys.stderr)
        return _EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
