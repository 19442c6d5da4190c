"""Tests for fit and predict_labels."""

import numpy as np
import pytest

from choicenet.exceptions import ContractViolation
from choicenet.fields.label_field import INFINITE_SET, FiniteSet, LabelField, make_base, mask, value_at, values
from choicenet.models.approximation import ApproxStrategy
from choicenet.models.oracle import OracleKind
from choicenet.models.predictor_config import BudgetSplit, PredictorConfig
from choicenet.models.quadrature import QuadratureSettings
from choicenet.networks.relu_net import evaluate, evaluate_batch
from choicenet.numerics.quadrature import l1_distance
from choicenet.predictor.predictor import (
    exactness_passed,
    exactness_tolerance,
    fit,
    predict_labels,
)

CONFIG = PredictorConfig(epsilon=0.1, quadrature=QuadratureSettings(samples=4000, seed=5))


def random_set(rng, size: int, d: int) -> FiniteSet:
    return FiniteSet.from_draws(rng.random((size, d)), d)


class TestPredictorConfig:
    """Test cases for budget bookkeeping."""

    def test_default_split(self):
        assert CONFIG.base_budget == pytest.approx(0.04)
        assert CONFIG.spike_budget == pytest.approx(0.04)

    def test_split_must_sum_to_one(self):
        with pytest.raises(ValueError):
            BudgetSplit(base_fraction=0.5, spike_fraction=0.5, slack=0.2)


class TestFit:
    """Test cases for the assembled network."""

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_hidden_labels_reproduced(self, rng, d):
        truth = LabelField(make_base("identity", d), {})
        X = random_set(rng, 12, d)

        outcome = fit(X, mask(truth, X), CONFIG, truth=truth)

        assert len(outcome.per_point) == len(X)
        for p in outcome.per_point:
            assert abs(evaluate(outcome.network, p.point) - value_at(truth, p.point)) <= exactness_tolerance(p.hidden_truth)
        assert exactness_passed(outcome)
        assert outcome.max_abs_error <= 1e-9

    def test_network_is_base_plus_spikes(self, rng, sin2_field):
        X = random_set(rng, 6, 1)
        outcome = fit(X, mask(sin2_field, X), CONFIG, truth=sin2_field)
        points = rng.random((10_000, 1))

        expected = evaluate_batch(outcome.base_network, points) + sum(
            evaluate_batch(spike, points) for spike in outcome.spikes
        )
        np.testing.assert_allclose(evaluate_batch(outcome.network, points), expected, rtol=0, atol=1e-10)
        assert outcome.network.depth >= 3

    def test_residuals_follow_representative(self, rng, sin2_field):
        X = random_set(rng, 4, 1)
        outcome = fit(X, mask(sin2_field, X), CONFIG)

        for k, residual in outcome.residuals.items():
            assert residual == pytest.approx(value_at(sin2_field, k) - evaluate(outcome.base_network, k), abs=1e-12)
        assert outcome.per_point[0].hidden_truth is None
        assert outcome.n_star is not None and outcome.n_star & (outcome.n_star - 1) == 0

    def test_l1_budget_met(self, rng, sin2_field):
        X = random_set(rng, 10, 1)
        outcome = fit(X, mask(sin2_field, X), CONFIG)

        estimate = l1_distance(
            lambda x: evaluate_batch(outcome.network, x),
            lambda x: values(sin2_field, x),
            1,
            samples=200_000,
            seed=17,
        )
        assert estimate.upper_confidence < CONFIG.epsilon

    def test_rough_base_reproduced_with_small_l1_error(self, rng):
        # test-point error ~0 while the network underfits the step in L1
        truth = LabelField(make_base("step", 1, {"threshold": 0.37}), {})
        X = random_set(rng, 8, 1)
        outcome = fit(X, mask(truth, X), CONFIG, truth=truth)

        estimate = l1_distance(
            lambda x: evaluate_batch(outcome.network, x), truth.base, 1, samples=200_000, seed=8
        )
        assert outcome.max_abs_error <= 1e-9
        assert estimate.upper_confidence < CONFIG.epsilon
        assert estimate.value > 0.0

    def test_empty_set_gives_base_network(self, sin2_field):
        outcome = fit(FiniteSet.empty(1), sin2_field, CONFIG)

        assert outcome.network is outcome.base_network
        assert outcome.n_star is None
        assert outcome.per_point == []
        assert outcome.max_abs_error is None
        assert outcome.certificate.strategy is ApproxStrategy.HAT_INTERP_1D

    def test_infinite_set_gives_zero_network(self, sin2_field):
        outcome = fit(INFINITE_SET, sin2_field, CONFIG)

        assert outcome.certificate.strategy is ApproxStrategy.ZERO
        assert outcome.network.depth == 1
        assert evaluate(outcome.network, [0.4]) == 0.0

    def test_residuals_already_zero_need_no_spikes(self, identity_field):
        X = FiniteSet(((0.25,), (0.5,)), 1)
        outcome = fit(X, mask(identity_field, X), CONFIG)

        assert outcome.spikes == []
        assert outcome.n_star is None
        assert evaluate(outcome.network, [0.25]) == 0.25

    def test_non_integrable_base(self, rng):
        truth = LabelField(make_base("non_integrable", 1), {}, integrable=False)
        X = random_set(rng, 5, 1)
        outcome = fit(X, mask(truth, X), CONFIG, truth=truth)

        assert outcome.certificate.strategy is ApproxStrategy.ZERO
        assert outcome.max_abs_error <= 1e-9

    def test_adversarial_oracle_fails_on_corrupted_points(self, identity_field):
        X = FiniteSet(((0.25,), (0.6,)), 1)
        cfg = CONFIG.model_copy(
            update={"oracle": OracleKind(oracle="adversarial", corruption=[{"point": [0.25], "value": 1.0}])}
        )
        outcome = fit(X, mask(identity_field, X), cfg, truth=identity_field)

        by_point = {p.point: p for p in outcome.per_point}
        assert by_point[(0.25,)].predicted == pytest.approx(1.0, abs=1e-9)
        assert by_point[(0.25,)].abs_error == pytest.approx(0.75, abs=1e-9)
        assert by_point[(0.6,)].abs_error <= 1e-9
        assert not exactness_passed(outcome)

    def test_dimension_mismatch(self, identity_field):
        with pytest.raises(ContractViolation, match="dimension"):
            fit(FiniteSet(((0.1, 0.1),), 2), identity_field, CONFIG)


class TestPredictLabels:
    """Test cases for the queryable label map."""

    def test_network_on_x_masked_labels_elsewhere(self, rng, sin2_field):
        X = random_set(rng, 5, 1)
        labels = predict_labels(X, mask(sin2_field, X), CONFIG)

        for k in X:
            assert labels(k) == pytest.approx(value_at(sin2_field, k), abs=1e-9)
        assert labels([0.123]) == value_at(sin2_field, [0.123])
        assert labels.network is labels.outcome.network

    def test_outputs_clamped_to_unit_interval(self, identity_field):
        X = FiniteSet(((0.0,), (1.0,)), 1)
        labels = predict_labels(X, mask(identity_field, X), CONFIG)

        assert 0.0 <= labels([0.0]) <= 1.0
        assert 0.0 <= labels([1.0]) <= 1.0
        assert labels([1.0]) == pytest.approx(1.0, abs=1e-9)

    def test_many(self, rng, sin2_field):
        X = random_set(rng, 3, 1)
        labels = predict_labels(X, mask(sin2_field, X), CONFIG)
        probes = np.vstack([X.as_array(), rng.random((4, 1))])

        np.testing.assert_allclose(labels.many(probes), values(sin2_field, probes), atol=1e-9)

    def test_requires_finite_set(self, sin2_field):
        with pytest.raises(ContractViolation, match="finite"):
            predict_labels(INFINITE_SET, sin2_field, CONFIG)
