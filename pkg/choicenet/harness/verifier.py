"""
Re-verification of written reports.

Nothing recorded in a report is trusted: networks are rebuilt from their
serialized documents, hidden labels are recomputed from the config and the
L1 check is re-run on the trial's own sample stream.
"""

import logging
from pathlib import Path
from typing import List, Set, Union

from ..exceptions import ChoiceNetError, VerificationError
from ..fields.choice_oracle import disagreement_points
from ..fields.label_field import FiniteSet, LabelField, value_at
from ..models.report import AssertionResult, ExperimentReport, TrialSummary, VerificationSummary
from ..networks.relu_net import evaluate, from_document
from ..predictor.predictor import exactness_tolerance
from ..utils import as_point, format_point
from .config_loader import build_truth
from .report_writer import REPORT_FILENAME, load_report
from .runner import check_l1_budget

logger = logging.getLogger(__name__)


def _check_trial(
    report: ExperimentReport, trial: TrialSummary, truth: LabelField, disagreement: FiniteSet
) -> List[AssertionResult]:
    config = report.config
    if trial.network is None:
        raise VerificationError(f"trial {trial.trial} has no serialized network")
    try:
        network = from_document(trial.network)
    except ChoiceNetError as e:
        raise VerificationError(f"trial {trial.trial}: network cannot be rebuilt: {e}") from e

    worst = 0.0
    failing = []
    for record in trial.points:
        point = as_point(record.point, config.d)
        hidden = value_at(truth, point)
        error = abs(evaluate(network, point) - hidden)
        worst = max(worst, error)
        if not error <= exactness_tolerance(hidden):
            failing.append(point)
    detail = f"max error {worst:.3g} over {len(trial.points)} points"
    if failing:
        detail += "; failing at " + ", ".join(format_point(p) for p in failing)
    results = [
        AssertionResult(
            name="exactness",
            trial=trial.trial,
            passed=not failing,
            adversarial=config.is_adversarial,
            detail=detail,
        )
    ]

    if truth.integrable:
        estimate = check_l1_budget(network, truth, config, trial.trial)
        results.append(
            AssertionResult(
                name="l1_budget",
                trial=trial.trial,
                passed=estimate.upper_confidence < config.epsilon,
                detail=f"upper confidence {estimate.upper_confidence:.6g} vs epsilon {config.epsilon}",
            )
        )

    hits = [as_point(r.point, config.d) for r in trial.points if as_point(r.point, config.d) in disagreement]
    recorded = [as_point(p, config.d) for p in trial.hits]
    if hits != recorded:
        results.append(
            AssertionResult(
                name="hit_log",
                trial=trial.trial,
                passed=False,
                detail=f"recorded hits {len(recorded)} but recomputed {len(hits)}",
            )
        )
    return results


def _cross_check(assertions: List[AssertionResult], hit_trials: Set[int]) -> AssertionResult:
    """Trials failing exactness and trials with a logged disagreement hit must be the same set."""
    failed = {a.trial for a in assertions if a.name == "exactness" and not a.passed}
    unexplained = sorted(failed - hit_trials)
    silent = sorted(hit_trials - failed)
    detail = f"{len(failed)} exactness failures, {len(hit_trials)} hit trials"
    if unexplained:
        detail += f"; failures without a hit in trials {unexplained}"
    if silent:
        detail += f"; hits without a failure in trials {silent}"
    return AssertionResult(name="adversarial_cross_check", passed=failed == hit_trials, detail=detail)


def verify(report_path: Union[str, Path]) -> VerificationSummary:
    """
    Re-check every assertion recorded in a report.

    Args:
        report_path: report.json or the directory holding it

    Returns:
        VerificationSummary with one AssertionResult per check. Under an
        adversarial oracle the exactness results are flagged adversarial and
        the cross-check against the hit log decides the outcome.

    Raises:
        VerificationError: If the report cannot be read or a completed trial
            lacks its serialized network
    """
    path = Path(report_path)
    if path.is_dir():
        path = path / REPORT_FILENAME
    report = load_report(path)

    try:
        truth = build_truth(report.config)
    except ChoiceNetError as e:
        raise VerificationError(f"config embedded in {path} is invalid: {e}") from e
    disagreement = disagreement_points(report.config.oracle, truth)

    assertions: List[AssertionResult] = []
    checked = 0
    for trial in report.trials:
        if trial.status == "failed":
            assertions.append(
                AssertionResult(name="completed", trial=trial.trial, passed=False, detail=trial.error or "")
            )
            continue
        assertions.extend(_check_trial(report, trial, truth, disagreement))
        checked += 1

    if report.config.is_adversarial:
        assertions.append(_cross_check(assertions, {t.trial for t in report.trials if t.hits}))

    summary = VerificationSummary(report_path=str(path), checked_trials=checked, assertions=assertions)
    logger.info(
        f"Verified {path}: {checked} trials, {len(assertions)} assertions, "
        f"{len(summary.failures)} failed, overall {'PASS' if summary.passed else 'FAIL'}"
    )
    for failure in summary.failures:
        log = logger.info if failure.adversarial else logger.warning
        log(f"  {failure.name} trial={failure.trial}: {failure.detail}")
    return summary
