"""
Experiment runner.

Every trial samples X, masks the true field, fits the network and checks both
guarantees: exact reproduction of the hidden labels on X and an L1 distance to
the base function below epsilon. Failing trials are recorded, never raised.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

import numpy as np

from ..exceptions import ChoiceNetError
from ..fields.choice_oracle import disagreement_points
from ..fields.label_field import FiniteSet, LabelField, mask, value_at, values
from ..models.experiment_config import ExperimentConfig
from ..models.quadrature import QuadratureEstimate, QuadratureMethod
from ..models.report import (
    AggregateStats,
    ExperimentReport,
    HitRecord,
    NetworkSummary,
    PointRecord,
    RunTiming,
    TrialSummary,
)
from ..networks.relu_net import ReluNetwork, evaluate_batch, to_document
from ..numerics.quadrature import l1_distance
from ..numerics.sampler import PROBE_STREAM, VERIFY_STREAM, sample_finite_set, stream
from ..predictor.predictor import PredictedLabels, exactness_tolerance, fit
from ..utils import get_version
from .config_loader import build_truth
from .figures import write_trial_figure
from .report_writer import write_outputs

logger = logging.getLogger(__name__)


def summarize_network(net: ReluNetwork) -> NetworkSummary:
    return NetworkSummary(depth=net.depth, widths=list(net.widths), parameters=net.parameter_count)


def check_l1_budget(
    network: ReluNetwork, truth: LabelField, config: ExperimentConfig, trial: int
) -> QuadratureEstimate:
    """Monte Carlo L1 distance between network and truth on the trial's own stream."""
    return l1_distance(
        lambda x: evaluate_batch(network, x),
        lambda x: values(truth, x),
        config.d,
        method=QuadratureMethod.MONTE_CARLO,
        samples=config.quadrature.verify_samples,
        seed=config.quadrature.seed,
        index=trial,
        namespace=VERIFY_STREAM,
    )


def _probe_agreement(
    config: ExperimentConfig, trial: int, X: FiniteSet, truth: LabelField, labels: PredictedLabels
) -> Optional[float]:
    if config.probes == 0:
        return None
    probes = stream(config.seed, PROBE_STREAM, trial).random((config.probes, config.d))
    agree = [labels(p) == value_at(truth, p) for p in probes if tuple(p) not in X]
    return float(np.mean(agree)) if agree else None


def run_trial(
    config: ExperimentConfig,
    truth: LabelField,
    disagreement: FiniteSet,
    trial: int,
    output_dir: Optional[Path] = None,
) -> TrialSummary:
    """Run one trial; module errors mark the trial failed instead of propagating."""
    summary = TrialSummary(trial=trial)
    try:
        X = sample_finite_set(config.nu, config.d, config.seed, index=trial)
        summary.set_size = len(X)
        masked = mask(truth, X)
        outcome = fit(X, masked, config.predictor_config(), truth=truth)

        summary.n_star = outcome.n_star
        summary.active_spikes = len(outcome.spikes)
        summary.certificate = outcome.certificate
        summary.network_summary = summarize_network(outcome.network)
        summary.network = to_document(outcome.network)

        for p in outcome.per_point:
            summary.points.append(
                PointRecord(
                    trial=trial,
                    point=list(p.point),
                    predicted=p.predicted,
                    hidden_truth=p.hidden_truth,
                    abs_error=p.abs_error,
                    passed=p.abs_error <= exactness_tolerance(p.hidden_truth),
                )
            )
        summary.exactness_max_error = outcome.max_abs_error
        summary.exactness_passed = all(record.passed for record in summary.points)

        summary.hits = [list(p) for p in X if p in disagreement]
        if summary.hits:
            logger.warning(f"Trial {trial}: X hit the disagreement set at {summary.hits}")
        if not summary.exactness_passed:
            logger.warning(f"Trial {trial}: hidden labels not reproduced (max error {summary.exactness_max_error})")

        if truth.integrable:
            summary.l1_estimate = check_l1_budget(outcome.network, truth, config, trial)
            summary.l1_passed = summary.l1_estimate.upper_confidence < config.epsilon
            if not summary.l1_passed:
                logger.warning(
                    f"Trial {trial}: L1 upper confidence {summary.l1_estimate.upper_confidence:.6g} "
                    f">= epsilon {config.epsilon}"
                )

        labels = PredictedLabels(X, masked, outcome)
        summary.probe_count = config.probes
        summary.probe_agreement = _probe_agreement(config, trial, X, truth, labels)

        if output_dir is not None and trial < config.max_figures:
            write_trial_figure(output_dir, trial, truth, X, outcome)
    except ChoiceNetError as e:
        logger.error(f"Trial {trial} failed: {e}")
        summary.status = "failed"
        summary.error = str(e)
        summary.exactness_passed = False

    logger.info(
        f"Trial {trial} {summary.status}: |X|={summary.set_size}, n_star={summary.n_star}, "
        f"max error={summary.exactness_max_error}"
    )
    return summary


def aggregate(trials: List[TrialSummary]) -> AggregateStats:
    errors = [t.exactness_max_error for t in trials if t.exactness_max_error is not None]
    uppers = [t.l1_estimate.upper_confidence for t in trials if t.l1_estimate is not None]
    return AggregateStats(
        trials=len(trials),
        failed_trials=[t.trial for t in trials if t.status == "failed"],
        max_test_point_error=max(errors) if errors else None,
        max_l1_upper_confidence=max(uppers) if uppers else None,
        exactness_failures=[t.trial for t in trials if t.status == "ok" and not t.exactness_passed],
        l1_failures=[t.trial for t in trials if t.l1_passed is False],
        hit_trials=[t.trial for t in trials if t.hits],
        hit_log=[HitRecord(trial=t.trial, point=p) for t in trials for p in t.hits],
    )


def run_experiment(config: ExperimentConfig, write: bool = True) -> ExperimentReport:
    """
    Run every trial of config and assemble the report.

    Trials run on ``config.workers`` threads; results are collected in trial
    order so the report does not depend on scheduling.

    Args:
        config: Validated experiment config
        write: Write report.json, CSV tables and figures to the output directory

    Returns:
        ExperimentReport
    """
    started_at = datetime.now(timezone.utc).isoformat()
    clock = time.perf_counter()

    truth = build_truth(config)
    disagreement = disagreement_points(config.oracle, truth)
    output_dir = Path(config.resolved_output_dir()) if write else None

    logger.info(
        f"Running {config.trials} trials (d={config.d}, epsilon={config.epsilon}, "
        f"base={truth.base.identifier}, oracle={config.oracle.tag.value}, workers={config.workers})"
    )
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        trials = list(
            pool.map(
                lambda t: run_trial(config, truth, disagreement, t, output_dir),
                range(config.trials),
            )
        )

    report = ExperimentReport(
        tool_version=get_version(),
        config=config,
        trials=trials,
        aggregate=aggregate(trials),
        timing=RunTiming(started_at=started_at, wall_clock_seconds=time.perf_counter() - clock),
    )
    logger.info(
        f"Finished {config.trials} trials in {report.timing.wall_clock_seconds:.2f}s: "
        f"{len(report.aggregate.failed_trials)} failed, "
        f"{len(report.aggregate.exactness_failures)} exactness failures, "
        f"{len(report.aggregate.l1_failures)} L1 budget failures"
    )

    if write:
        write_outputs(report, output_dir)
    return report
