"""
Configuration module for the choicenet harness scripts.

This module contains defaults and constants used by the command-line tools.
"""

from typing import Any, Dict

# Harness configuration
HARNESS_CONFIG: Dict[str, Any] = {
    "output_directory": "reports",
    "logs_directory": "logs",
    "log_filename": "harness.log",
    "history_log_filename": "history.csv",
    "spike_resolution": 4,
    "sample_seed": 0,
    "approx_dimension": 1,
}

# Exit codes of run_harness.py
EXIT_OK = 0
EXIT_ASSERTION_FAILURES = 1
EXIT_CONFIG_ERROR = 2

# History log CSV headers
HISTORY_LOG_HEADERS = [
    "timestamp",
    "command",  # "run" or "verify"
    "duration_seconds",
    "trials",
    "failed_trials",
    "status",  # "PASS", "FAIL", "ERROR"
    "config_path",
    "error_message",
]
