"""Experiment runner, report writer and verifier."""

from .config_loader import build_truth, load_config, parse_config_text
from .figures import write_trial_figure
from .report_writer import comparable_bytes, load_report, report_bytes, write_outputs
from .runner import aggregate, check_l1_budget, run_experiment, run_trial, summarize_network
from .verifier import verify

__all__ = [
    "aggregate",
    "build_truth",
    "check_l1_budget",
    "comparable_bytes",
    "load_config",
    "load_report",
    "parse_config_text",
    "report_bytes",
    "run_experiment",
    "run_trial",
    "summarize_network",
    "verify",
    "write_outputs",
    "write_trial_figure",
]
