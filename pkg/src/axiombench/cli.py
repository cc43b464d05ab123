"""Command-line driver.

Exit codes: 0 all axioms passed, 1 at least one failed (or was skipped),
2 usage error, 3 the model does not fit the harness contract.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .axioms import TestConfig, run_all
from .errors import HarnessIncompatibility, UsageError
from .model_api import registered_models, resolve_model
from .report import summary_lines

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INCOMPATIBLE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser():
    p = _Parser(prog="axiombench", description="Run the twelve axiom tests against a model.")
    p.add_argument("--model", help="registered model name or package.module:attribute")
    p.add_argument("--seed", type=_seed, default=0, help="master seed (default 0)")
    p.add_argument("--mode", choices=("full", "smoke"), default="full")
    p.add_argument("--trials", type=_positive, help="trial count for every test")
    p.add_argument("--input-bits", type=_positive, default=10, dest="input_bits")
    p.add_argument("--period", type=_positive, default=7)
    p.add_argument("--rho", type=_positive, default=10)
    p.add_argument("--report", type=Path, help="write the JSON report here")
    p.add_argument("--early-exit", choices=("on", "off"), default="off", dest="early_exit")
    p.add_argument("--list-models", action="store_true", dest="list_models")
    p.add_argument("--skip-timing", action="store_true", dest="skip_timing",
                   help="do not run the liveness test (the run then cannot pass)")
    return p


def config_from_args(args) -> TestConfig:
    kwargs = dict(input_size=args.input_bits, pattern_period=args.period, rho=args.rho,
                  master_seed=args.seed)
    if args.trials is not None:
        kwargs["simulated_infinity"] = args.trials
    if args.mode == "smoke":
        return TestConfig.smoke(**kwargs)
    return TestConfig(**kwargs)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.list_models:
            print("\n".join(registered_models()))
            return EXIT_PASSED
        if not args.model:
            raise UsageError("--model is required")
        config = config_from_args(args)
        factory = resolve_model(args.model, config.input_size)
    except UsageError as exc:
        print(f"axiombench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HarnessIncompatibility as exc:
        print(f"axiombench: incompatible model: {exc}", file=sys.stderr)
        return EXIT_INCOMPATIBLE

    report = run_all(factory, config, early_exit=args.early_exit == "on",
                     skip_timing=args.skip_timing)
    report.mode = args.mode
    for line in summary_lines(report):
        print(line)
    if args.report is not None:
        args.report.write_text(report.to_json())
    if report.status != "completed":
        return EXIT_INCOMPATIBLE
    return EXIT_PASSED if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
