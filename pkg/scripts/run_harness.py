#!/usr/bin/env python3
"""
Command-line interface for the choicenet experiment harness.

Usage:
    python scripts/run_harness.py run CONFIG [--output DIR] [--workers N]
    python scripts/run_harness.py verify REPORT
    python scripts/run_harness.py build-spike --center 0.5,0.5 --residual 1 --n 4
    python scripts/run_harness.py sample --nu fixed:5 --d 2 --seed 7
    python scripts/run_harness.py approx --base sin2pi --budget 0.01 [--d 1]
    python scripts/run_harness.py history [--output DIR]

Exit codes:
    0   every assertion passed
    1   at least one assertion failed
    2   the config, report or arguments could not be used
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add the project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from choicenet.exceptions import ChoiceNetError, ConfigError, VerificationError
from choicenet.fields.label_field import LabelField, available_bases, base_is_integrable, make_base
from choicenet.harness.config_loader import load_config
from choicenet.harness.runner import run_experiment
from choicenet.harness.verifier import verify
from choicenet.models.experiment_config import default_output_dir
from choicenet.models.quadrature import QuadratureSettings
from choicenet.models.report import ExperimentReport
from choicenet.models.size_distribution import SizeDistribution
from choicenet.networks.relu_net import serialize
from choicenet.networks.spike_builder import SpikeSpec, build_spike
from choicenet.numerics.base_approximator import approximate
from choicenet.numerics.sampler import sample_finite_set
from choicenet.utils import get_version
from scripts.config import (
    EXIT_ASSERTION_FAILURES,
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    HARNESS_CONFIG,
)
from scripts.history_logger import ExperimentHistoryLogger
from scripts.view_history import view_run_history

logger = logging.getLogger("choicenet.cli")


def configure_logging(verbose: bool, log_dir: str) -> None:
    """Log to harness.log in log_dir and to stderr."""
    Path(log_dir).mkdir(parents=True, exist_ok=True)
    log_file_path = Path(log_dir) / HARNESS_CONFIG["log_filename"]
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.FileHandler(log_file_path), logging.StreamHandler()],
    )


def parse_coordinates(raw: str) -> List[float]:
    try:
        return [float(part) for part in raw.split(",")]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated coordinates, got '{raw}'") from e


def parse_size_distribution(raw: str) -> SizeDistribution:
    try:
        return SizeDistribution.from_token(raw)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def parse_params(raw: str) -> Dict[str, Any]:
    try:
        params = json.loads(raw)
    except json.JSONDecodeError as e:
        raise argparse.ArgumentTypeError(f"--params must be a JSON object: {e.msg}") from e
    if not isinstance(params, dict):
        raise argparse.ArgumentTypeError("--params must be a JSON object")
    return params


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser.

    Returns:
        Parser with one subcommand per harness entry point
    """
    parser = argparse.ArgumentParser(
        description="Run, verify and inspect choicenet prediction experiments",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("--verbose", action="store_true", help="Enable verbose logging")
    parser.add_argument(
        "--log-dir",
        type=str,
        default=HARNESS_CONFIG["logs_directory"],
        help=f"Directory of {HARNESS_CONFIG['log_filename']} (default: {HARNESS_CONFIG['logs_directory']})",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run every trial of a TOML config")
    run.add_argument("config", type=str, help="Path to the experiment config")
    run.add_argument("--output", type=str, default=None, help="Override the output directory")
    run.add_argument("--workers", type=int, default=None, help="Override the number of workers")

    check = commands.add_parser("verify", help="Re-check a written report")
    check.add_argument("report", type=str, help="report.json or its directory")

    spike = commands.add_parser("build-spike", help="Emit one spike network as JSON")
    spike.add_argument("--center", type=parse_coordinates, required=True, help="e.g. 0.5,0.5")
    spike.add_argument("--residual", type=float, required=True)
    spike.add_argument(
        "--n",
        type=int,
        default=HARNESS_CONFIG["spike_resolution"],
        help=f"Resolution (default: {HARNESS_CONFIG['spike_resolution']})",
    )

    sample = commands.add_parser("sample", help="Draw one finite set as JSON")
    sample.add_argument("--nu", type=parse_size_distribution, required=True, help="fixed:K, poisson:MEAN or geometric:P")
    sample.add_argument("--d", type=int, required=True)
    sample.add_argument("--seed", type=int, default=HARNESS_CONFIG["sample_seed"])
    sample.add_argument("--index", type=int, default=0, help="Trial index of the draw")

    approx = commands.add_parser("approx", help="Certify a base approximation and emit its certificate")
    approx.add_argument("--base", type=str, required=True, help=f"One of: {', '.join(available_bases())}")
    approx.add_argument("--budget", type=float, required=True)
    approx.add_argument("--d", type=int, default=HARNESS_CONFIG["approx_dimension"])
    approx.add_argument("--params", type=parse_params, default={}, help="Base parameters as a JSON object")
    approx.add_argument("--samples", type=int, default=None, help="Quadrature samples per refinement")
    approx.add_argument("--seed", type=int, default=0, help="Quadrature seed")

    history = commands.add_parser("history", help="Summarize the run ledger")
    history.add_argument("--output", type=str, default=None, help="Directory holding history.csv")
    return parser


def run_passed(report: ExperimentReport) -> bool:
    """
    Outcome of a run for the exit code.

    Failed trials and L1 failures always fail. Under an adversarial oracle the
    trials failing exactness must be exactly the trials that hit the
    disagreement set.
    """
    stats = report.aggregate
    if stats.failed_trials or stats.l1_failures:
        return False
    if report.config.is_adversarial:
        return set(stats.exactness_failures) == set(stats.hit_trials)
    return not stats.exactness_failures


def command_run(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    history = None
    try:
        config = load_config(args.config)
        updates = {}
        if args.output:
            updates["output_dir"] = args.output
        if args.workers:
            updates["workers"] = args.workers
        if updates:
            config = config.model_copy(update=updates)
        history = ExperimentHistoryLogger(config.resolved_output_dir())

        print("choicenet experiment")
        print("=" * 50)
        print(f"Config: {args.config}")
        print(f"d={config.d}, epsilon={config.epsilon}, trials={config.trials}, seed={config.seed}")
        print(f"Base: {config.field.base}, oracle: {config.oracle.tag.value}")
        print("-" * 50)

        report = run_experiment(config)
    except ConfigError as e:
        print(f"❌ Config error: {e}")
        history = history or ExperimentHistoryLogger(args.output or default_output_dir())
        history.log_execution("run", time.perf_counter() - start, 0, 0, "ERROR", args.config, str(e))
        return EXIT_CONFIG_ERROR

    passed = run_passed(report)
    stats = report.aggregate
    print("\n" + "=" * 50)
    print("RUN PASSED" if passed else "RUN FAILED")
    print("=" * 50)
    print(f"Trials: {stats.trials} ({len(stats.failed_trials)} failed)")
    print(f"Max test-point error: {stats.max_test_point_error}")
    print(f"Max L1 upper confidence: {stats.max_l1_upper_confidence}")
    print(f"Exactness failures: {stats.exactness_failures}")
    print(f"L1 budget failures: {stats.l1_failures}")
    if report.config.is_adversarial:
        print(f"Trials hitting the disagreement set: {stats.hit_trials}")
    print(f"Report: {Path(config.resolved_output_dir()) / 'report.json'}")

    history.log_execution(
        "run",
        time.perf_counter() - start,
        stats.trials,
        len(stats.failed_trials),
        "PASS" if passed else "FAIL",
        args.config,
    )
    return EXIT_OK if passed else EXIT_ASSERTION_FAILURES


def command_verify(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    report_path = Path(args.report)
    history = ExperimentHistoryLogger(str(report_path if report_path.is_dir() else report_path.parent))
    try:
        summary = verify(report_path)
    except VerificationError as e:
        print(f"❌ Verification error: {e}")
        history.log_execution("verify", time.perf_counter() - start, 0, 0, "ERROR", args.report, str(e))
        return EXIT_CONFIG_ERROR

    print("choicenet verification")
    print("=" * 50)
    for assertion in summary.assertions:
        mark = "✅" if assertion.passed else ("⚠️ " if assertion.adversarial else "❌")
        trial = f" trial {assertion.trial}" if assertion.trial is not None else ""
        print(f"{mark} {assertion.name}{trial}: {assertion.detail}")
    print("=" * 50)
    print("VERIFICATION PASSED" if summary.passed else "VERIFICATION FAILED")

    failed_trials = {a.trial for a in summary.failures if not a.adversarial and a.trial is not None}
    history.log_execution(
        "verify",
        time.perf_counter() - start,
        summary.checked_trials,
        len(failed_trials),
        "PASS" if summary.passed else "FAIL",
        args.report,
    )
    return EXIT_OK if summary.passed else EXIT_ASSERTION_FAILURES


def command_build_spike(args: argparse.Namespace) -> int:
    net = build_spike(SpikeSpec(tuple(args.center), args.residual, args.n))
    print(serialize(net).decode("utf-8"))
    return EXIT_OK


def command_sample(args: argparse.Namespace) -> int:
    X = sample_finite_set(args.nu, args.d, args.seed, index=args.index)
    print(json.dumps({"d": args.d, "seed": args.seed, "size": len(X), "points": X.to_list()}))
    return EXIT_OK


def command_approx(args: argparse.Namespace) -> int:
    settings = {"seed": args.seed}
    if args.samples is not None:
        settings["samples"] = args.samples
    base = make_base(args.base, args.d, args.params)
    field = LabelField(base, {}, integrable=base_is_integrable(args.base))
    net, certificate = approximate(field, args.budget, QuadratureSettings(**settings))
    document = certificate.model_dump(mode="json", by_alias=True)
    document["widths"] = list(net.widths)
    document["parameters"] = net.parameter_count
    print(json.dumps(document))
    return EXIT_OK


def command_history(args: argparse.Namespace) -> int:
    view_run_history(args.output or default_output_dir())
    return EXIT_OK


COMMANDS = {
    "run": command_run,
    "verify": command_verify,
    "build-spike": command_build_spike,
    "sample": command_sample,
    "approx": command_approx,
    "history": command_history,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main function for the CLI; returns the exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.log_dir)
    logger.debug(f"Command {args.command} with arguments {vars(args)}")

    try:
        return COMMANDS[args.command](args)
    except KeyboardInterrupt:
        print("\n❌ Interrupted by user.")
        return EXIT_ASSERTION_FAILURES
    except ValueError as e:
        # ContractViolation and pydantic validation errors of the single-module drivers
        print(f"❌ Invalid input: {e}")
        return EXIT_CONFIG_ERROR
    except ChoiceNetError as e:
        print(f"❌ {args.command} failed: {e}")
        return EXIT_ASSERTION_FAILURES


if __name__ == "__main__":
    sys.exit(main())
