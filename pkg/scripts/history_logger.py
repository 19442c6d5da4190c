#!/usr/bin/env python3
"""
Run History Logger Module

This module appends one row per `run`/`verify` invocation to a CSV ledger
in the output directory and summarizes it for the `history` subcommand.
"""

import csv
import os
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from scripts.config import HARNESS_CONFIG, HISTORY_LOG_HEADERS


class ExperimentHistoryLogger:
    """
    Ledger of harness invocations.

    Records timing, trial counts and outcome of every run and verification
    so that repeated experiments can be audited later.
    """

    def __init__(self, output_dir: Optional[str] = None) -> None:
        """
        Initialize the history logger.

        Args:
            output_dir: Directory where the history file will be stored
        """
        self.output_dir = output_dir or HARNESS_CONFIG["output_directory"]
        self.history_file = os.path.join(self.output_dir, HARNESS_CONFIG["history_log_filename"])
        self._ensure_output_directory()
        self._initialize_history_file()

    def _ensure_output_directory(self) -> None:
        Path(self.output_dir).mkdir(parents=True, exist_ok=True)

    def _initialize_history_file(self) -> None:
        """Write the header row if the file does not exist yet."""
        if not os.path.exists(self.history_file):
            try:
                with open(self.history_file, "w", newline="", encoding="utf-8") as csvfile:
                    writer = csv.DictWriter(csvfile, fieldnames=HISTORY_LOG_HEADERS)
                    writer.writeheader()
            except OSError as e:
                print(f"Warning: Could not initialize history file: {e}")

    def log_execution(
        self,
        command: str,
        duration_seconds: float,
        trials: int,
        failed_trials: int,
        status: str,
        config_path: str = "",
        error_message: Optional[str] = None,
    ) -> None:
        """
        Append one invocation to the history file.

        Args:
            command: Subcommand name ("run" or "verify")
            duration_seconds: Wall-clock time of the invocation
            trials: Number of trials run or checked
            failed_trials: Trials that failed or had failing assertions
            status: "PASS", "FAIL" or "ERROR"
            config_path: Config or report path the command was given
            error_message: Error message if any (optional)
        """
        log_entry = {
            "timestamp": datetime.now().isoformat(),
            "command": command,
            "duration_seconds": f"{duration_seconds:.2f}",
            "trials": str(trials),
            "failed_trials": str(failed_trials),
            "status": status,
            "config_path": config_path,
            "error_message": error_message or "",
        }

        try:
            with open(self.history_file, "a", newline="", encoding="utf-8") as csvfile:
                writer = csv.DictWriter(csvfile, fieldnames=HISTORY_LOG_HEADERS)
                writer.writerow(log_entry)
        except OSError as e:
            print(f"Warning: Could not write to history file: {e}")

    def get_history_summary(self) -> Dict[str, Any]:
        """
        Get a summary of the recorded invocations.

        Returns:
            Dictionary with history statistics
        """
        if not os.path.exists(self.history_file):
            return {"total_executions": 0, "message": "No history file found"}

        try:
            with open(self.history_file, "r", encoding="utf-8") as csvfile:
                rows = list(csv.DictReader(csvfile))
        except OSError as e:
            return {"error": f"Could not read history file: {e}"}

        if not rows:
            return {"total_executions": 0, "message": "No executions recorded"}

        return {
            "total_executions": len(rows),
            "runs": sum(1 for row in rows if row["command"] == "run"),
            "verifications": sum(1 for row in rows if row["command"] == "verify"),
            "passed_executions": sum(1 for row in rows if row["status"] == "PASS"),
            "failed_executions": sum(1 for row in rows if row["status"] == "FAIL"),
            "errored_executions": sum(1 for row in rows if row["status"] == "ERROR"),
            "total_trials": sum(int(row["trials"]) for row in rows if row["trials"].isdigit()),
            "latest_execution": rows[-1],
            "history_file": self.history_file,
        }
