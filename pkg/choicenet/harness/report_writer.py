"""Report emission: JSON document plus per-point and per-trial CSV tables."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import pandas as pd
from pydantic import ValidationError

from ..exceptions import VerificationError
from ..models.report import ExperimentReport

logger = logging.getLogger(__name__)

REPORT_FILENAME = "report.json"
POINTS_FILENAME = "per_point.csv"
TRIALS_FILENAME = "trials.csv"


def report_document(report: ExperimentReport, include_timing: bool = True) -> Dict[str, Any]:
    exclude = None if include_timing else {"timing"}
    return report.model_dump(mode="json", by_alias=True, exclude=exclude)


def report_bytes(report: ExperimentReport) -> bytes:
    """Deterministic JSON encoding of a report."""
    return (json.dumps(report_document(report), indent=2, allow_nan=False) + "\n").encode("utf-8")


def comparable_bytes(report: ExperimentReport) -> bytes:
    """Encoding without wall-clock data; equal for reruns of the same config."""
    return json.dumps(report_document(report, include_timing=False), sort_keys=True).encode("utf-8")


def points_frame(report: ExperimentReport) -> pd.DataFrame:
    """One row per hidden point of every trial."""
    d = report.config.d
    columns = ["trial"] + [f"x{i}" for i in range(d)] + ["predicted", "hidden_truth", "abs_error", "passed"]
    rows = [
        [record.trial, *record.point, record.predicted, record.hidden_truth, record.abs_error, record.passed]
        for trial in report.trials
        for record in trial.points
    ]
    return pd.DataFrame(rows, columns=columns)


def trials_frame(report: ExperimentReport) -> pd.DataFrame:
    """One row per trial with the test-point error and the L1 error side by side."""
    rows = []
    for trial in report.trials:
        rows.append(
            {
                "trial": trial.trial,
                "status": trial.status,
                "set_size": trial.set_size,
                "n_star": trial.n_star,
                "active_spikes": trial.active_spikes,
                "max_test_point_error": trial.exactness_max_error,
                "l1_value": trial.l1_estimate.value if trial.l1_estimate else None,
                "l1_upper_confidence": trial.l1_estimate.upper_confidence if trial.l1_estimate else None,
                "probe_agreement": trial.probe_agreement,
                "depth": trial.network_summary.depth if trial.network_summary else None,
                "parameters": trial.network_summary.parameters if trial.network_summary else None,
                "hits": len(trial.hits),
                "error": trial.error or "",
            }
        )
    return pd.DataFrame(rows)


def write_outputs(report: ExperimentReport, output_dir: Union[str, Path]) -> Path:
    """Write report.json, per_point.csv and trials.csv; returns the report path."""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    report_path = output_dir / REPORT_FILENAME
    report_path.write_bytes(report_bytes(report))
    points_frame(report).to_csv(output_dir / POINTS_FILENAME, index=False)
    trials_frame(report).to_csv(output_dir / TRIALS_FILENAME, index=False)

    logger.info(f"Report written to {report_path}")
    return report_path


def load_report(path: Union[str, Path]) -> ExperimentReport:
    """
    Read a report written by write_outputs.

    Raises:
        VerificationError: If the file is missing, is not JSON or does not
            match the report schema
    """
    path = Path(path)
    if path.is_dir():
        path = path / REPORT_FILENAME
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise VerificationError(f"cannot read report {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise VerificationError(f"report {path} is not valid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from e
    try:
        return ExperimentReport.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise VerificationError(f"report {path} is malformed at {location}: {first['msg']}") from e
