"""
Prediction of hidden labels from masked ones.

``fit`` builds one network as the sum of a certified approximation of the
oracle representative g and one spike per point k of X carrying the residual
g(k) minus the approximation at k. ``predict_labels`` wraps it into the
label map that answers with the network on X and with the masked labels
everywhere else.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..exceptions import ContractViolation
from ..fields.choice_oracle import representative
from ..fields.label_field import INFINITE_SET, FiniteSet, IndexSet, LabelField, value_at
from ..models.approximation import ApproxCertificate, ApproxStrategy
from ..models.predictor_config import PredictorConfig
from ..networks.relu_net import ReluNetwork, evaluate, evaluate_batch, sum_networks, zero_network
from ..networks.spike_builder import build_spikes, select_resolution
from ..numerics.base_approximator import approximate
from ..utils import Point, as_point

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointPrediction:
    point: Point
    predicted: float
    hidden_truth: Optional[float]
    abs_error: Optional[float]


@dataclass(frozen=True)
class PredictionOutcome:
    """Result of fit: the network plus everything needed to audit it."""

    network: ReluNetwork
    residuals: Dict[Point, float]
    n_star: Optional[int]
    certificate: ApproxCertificate
    per_point: List[PointPrediction] = field(default_factory=list)
    base_network: Optional[ReluNetwork] = None
    spikes: List[ReluNetwork] = field(default_factory=list)

    @property
    def max_abs_error(self) -> Optional[float]:
        errors = [p.abs_error for p in self.per_point if p.abs_error is not None]
        return max(errors) if errors else None


def fit(
    X: IndexSet,
    masked: LabelField,
    cfg: PredictorConfig,
    truth: Optional[LabelField] = None,
) -> PredictionOutcome:
    """
    Build the network for masked labels on X.

    Args:
        X: Finite set of hidden points, or INFINITE_SET
        masked: Field with the labels on X replaced by 0
        cfg: Predictor settings
        truth: Unmasked field; when given, per-point hidden truths and errors
            are filled in

    Returns:
        PredictionOutcome; its network evaluates to g(k) at every k in X up to
        round-off, where g is the oracle representative of masked

    Raises:
        ApproximationBudgetError: When the base network cannot be certified
    """
    if X is INFINITE_SET:
        logger.info("X is infinite; returning the zero network")
        return PredictionOutcome(
            network=zero_network(masked.dim),
            residuals={},
            n_star=None,
            certificate=ApproxCertificate(
                budget=cfg.base_budget, estimate=None, grid_resolution=0, strategy=ApproxStrategy.ZERO
            ),
        )
    if not isinstance(X, FiniteSet):
        raise ContractViolation(f"X must be a FiniteSet or INFINITE_SET, got {type(X).__name__}")
    if X.dim != masked.dim:
        raise ContractViolation(f"set dimension {X.dim} does not match field dimension {masked.dim}")

    g = representative(cfg.oracle, masked)
    base_network, certificate = approximate(
        LabelField(g.base, {}, g.integrable),
        cfg.base_budget,
        cfg.quadrature,
        max_refinements=cfg.max_refinements,
        max_grid_nodes=cfg.max_grid_nodes,
    )

    if not len(X):
        logger.info("X is empty; the network is the base approximation alone")
        return PredictionOutcome(
            network=base_network,
            residuals={},
            n_star=None,
            certificate=certificate,
            base_network=base_network,
        )

    base_at_x = evaluate_batch(base_network, X.as_array())
    residuals = {
        k: value_at(g, k) - float(approx) for k, approx in zip(X.points, base_at_x)
    }

    n_star: Optional[int] = None
    spikes: List[ReluNetwork] = []
    if any(r != 0.0 for r in residuals.values()):
        n_star = select_resolution(X, residuals, 2.0 * cfg.spike_budget, X.dim)
        spikes = build_spikes(residuals, n_star)

    network = sum_networks([base_network] + spikes)
    logger.info(
        f"Fitted |X|={len(X)} with {len(spikes)} spikes, n_star={n_star}, widths {network.widths}"
    )

    predicted = evaluate_batch(network, X.as_array())
    per_point = []
    for k, value in zip(X.points, predicted):
        hidden = value_at(truth, k) if truth is not None else None
        error = abs(float(value) - hidden) if hidden is not None else None
        per_point.append(PointPrediction(k, float(value), hidden, error))

    return PredictionOutcome(
        network=network,
        residuals=residuals,
        n_star=n_star,
        certificate=certificate,
        per_point=per_point,
        base_network=base_network,
        spikes=spikes,
    )


class PredictedLabels:
    """
    Label map j -> network(j) clamped to [0,1] for j in X, masked label otherwise.

    Membership in X uses exact floating equality.
    """

    def __init__(self, X: FiniteSet, masked: LabelField, outcome: PredictionOutcome) -> None:
        self.X = X
        self.masked = masked
        self.outcome = outcome

    @property
    def network(self) -> ReluNetwork:
        return self.outcome.network

    def __call__(self, j) -> float:
        point = as_point(j, self.masked.dim)
        if point in self.X:
            return min(1.0, max(0.0, evaluate(self.outcome.network, point)))
        return value_at(self.masked, point)

    def many(self, points: np.ndarray) -> np.ndarray:
        return np.array([self(p) for p in np.asarray(points, dtype=np.float64)])


def predict_labels(
    X: FiniteSet, masked: LabelField, cfg: PredictorConfig, truth: Optional[LabelField] = None
) -> PredictedLabels:
    """Fit and wrap the network into the queryable label map."""
    if not isinstance(X, FiniteSet):
        raise ContractViolation("predict_labels needs a finite set X")
    return PredictedLabels(X, masked, fit(X, masked, cfg, truth))


def exactness_tolerance(label: float) -> float:
    """Round-off allowance for exact reproduction of a hidden label."""
    return 1e-9 * max(1.0, abs(label))


def exactness_passed(outcome: PredictionOutcome) -> bool:
    """True iff every point with a known hidden label is reproduced within tolerance."""
    return all(
        p.abs_error <= exactness_tolerance(p.hidden_truth)
        for p in outcome.per_point
        if p.hidden_truth is not None
    )
