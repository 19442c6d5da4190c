"""Tests for spike networks and resolution selection."""

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from choicenet.exceptions import ContractViolation
from choicenet.fields.label_field import FiniteSet
from choicenet.models.quadrature import QuadratureMethod
from choicenet.networks.relu_net import evaluate, evaluate_batch
from choicenet.networks.spike_builder import (
    SpikeSpec,
    build_spike,
    build_spikes,
    min_linf_distance,
    select_resolution,
    spike_l1_bound,
)
from choicenet.numerics.quadrature import l1_distance

unit_floats = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)


def far_side_tolerance(residual: float, n: int) -> float:
    # round-off of n * x cancels only up to a few ulps of n
    return 16 * n * 2.0**-52 * max(1.0, abs(residual))


class TestSpikeSpec:
    """Test cases for spike parameter validation."""

    def test_valid_spec(self):
        spec = SpikeSpec([0.25, 0.5], -0.3, 8)
        assert spec.center == (0.25, 0.5)
        assert spec.dim == 2

    @pytest.mark.parametrize(
        "center, residual, resolution",
        [
            ((1.5,), 1.0, 4),
            ((0.5,), math.inf, 4),
            ((0.5,), 1.0, 0),
            ((0.5,), 1.0, 2.5),
            ((0.5,), 1.0, True),
        ],
    )
    def test_invalid_spec_rejected(self, center, residual, resolution):
        with pytest.raises(ContractViolation):
            SpikeSpec(center, residual, resolution)


class TestBuildSpike:
    """Test cases for the spike network itself."""

    def test_layer_widths(self):
        net = build_spike(SpikeSpec((0.1, 0.2, 0.3), 1.0, 4))
        assert net.widths == (3, 9, 1, 1)
        assert net.depth == 3

    def test_one_dimensional_profile(self):
        net = build_spike(SpikeSpec((0.5,), 2.0, 4))

        assert evaluate(net, [0.5]) == 2.0
        assert evaluate(net, [0.375]) == 1.0
        assert evaluate(net, [0.75]) == 0.0
        assert evaluate(net, [0.0]) == 0.0

    @given(
        center=st.lists(unit_floats, min_size=1, max_size=3),
        residual=st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
        exponent=st.integers(min_value=0, max_value=12),
    )
    @settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    def test_peak_equals_residual(self, center, residual, exponent):
        net = build_spike(SpikeSpec(center, residual, 2**exponent))
        assert abs(evaluate(net, center) - residual) <= 1e-9 * max(1.0, abs(residual))

    @given(
        center=st.lists(unit_floats, min_size=2, max_size=2),
        residual=st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
        exponent=st.integers(min_value=1, max_value=12),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    def test_vanishes_outside_support(self, center, residual, exponent, seed):
        n = 2**exponent
        net = build_spike(SpikeSpec(center, residual, n))
        points = np.random.default_rng(seed).random((500, 2))
        outside = points[np.max(np.abs(points - np.asarray(center)), axis=1) >= 1.0 / n]

        if outside.size:
            assert np.all(np.abs(evaluate_batch(net, outside)) <= far_side_tolerance(residual, n))

    def test_first_layer_subtracts_center(self):
        net = build_spike(SpikeSpec((0.3, 0.7), 1.5, 16))
        hats, combine, scale = net.layers

        np.testing.assert_array_equal(hats.weights, np.repeat(np.eye(2), 3, axis=0))
        np.testing.assert_array_equal(
            hats.bias, [1 / 16 - 0.3, -0.3, -1 / 16 - 0.3, 1 / 16 - 0.7, -0.7, -1 / 16 - 0.7]
        )
        np.testing.assert_array_equal(combine.weights, [[16.0, -32.0, 16.0, 16.0, -32.0, 16.0]])
        assert combine.bias[0] == -1.0
        assert scale.weights[0, 0] == 1.5

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_dyadic_points_outside_support_are_exactly_zero(self, d, rng):
        n = 64
        center = rng.integers(0, 2**10, size=d) / 2**10
        net = build_spike(SpikeSpec(center, -0.8, n))
        points = rng.integers(0, 2**20 + 1, size=(20_000, d)) / 2**20
        outside = points[np.max(np.abs(points - center), axis=1) >= 1.0 / n]

        assert np.all(evaluate_batch(net, outside) == 0.0)

    def test_values_bounded_by_residual(self, rng):
        net = build_spike(SpikeSpec((0.4, 0.6), -0.7, 2))
        values = evaluate_batch(net, rng.random((5000, 2)))
        assert np.all(values <= 1e-12)
        assert np.all(values >= -0.7 - 1e-12)


class TestL1Bound:
    """Test cases for the closed-form integral."""

    def test_one_dimensional_triangle(self):
        # triangle of height 1 and half-width 1/4
        assert spike_l1_bound(SpikeSpec((0.5,), 1.0, 4)) == pytest.approx(0.25)

    def test_formula(self):
        spec = SpikeSpec((0.5, 0.5, 0.5), -3.0, 8)
        assert spike_l1_bound(spec) == pytest.approx(3.0 * 8 / (8**3 * 24))

    def test_matches_quadrature_for_interior_center(self):
        net = build_spike(SpikeSpec((0.5, 0.5), 1.0, 2))
        estimate = l1_distance(
            lambda x: evaluate_batch(net, x),
            lambda x: np.zeros(len(x)),
            2,
            method=QuadratureMethod.GRID,
            samples=1000,
        )
        assert estimate.value == pytest.approx(spike_l1_bound(SpikeSpec((0.5, 0.5), 1.0, 2)), abs=1e-4)

    def test_boundary_center_is_upper_bound(self):
        spec = SpikeSpec((0.0,), 1.0, 4)
        net = build_spike(spec)
        estimate = l1_distance(
            lambda x: evaluate_batch(net, x),
            lambda x: np.zeros(len(x)),
            1,
            method=QuadratureMethod.GRID,
            samples=100_000,
        )
        assert estimate.value == pytest.approx(spike_l1_bound(spec) / 2, abs=1e-6)

    def test_monte_carlo_unit_triangle(self):
        net = build_spike(SpikeSpec((0.5,), 1.0, 4))
        estimate = l1_distance(
            lambda x: evaluate_batch(net, x), lambda x: np.zeros(len(x)), 1, samples=10**6, seed=5
        )

        assert abs(estimate.value - 0.25) <= 4 * estimate.standard_error

    @pytest.mark.slow
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_monte_carlo_matches_closed_form(self, d):
        rng = np.random.default_rng(1000 + d)
        for index in range(50):
            n = 2 ** int(rng.integers(1, 4))
            center = rng.uniform(1.0 / n, 1.0 - 1.0 / n, size=d)
            spec = SpikeSpec(center, rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 1.0), n)
            net = build_spike(spec)

            estimate = l1_distance(
                lambda x: evaluate_batch(net, x),
                lambda x: np.zeros(len(x)),
                d,
                samples=10**6,
                seed=d,
                index=index,
            )

            assert abs(estimate.value - spike_l1_bound(spec)) <= 4 * estimate.standard_error, spec

    def test_zero_residual(self):
        assert spike_l1_bound(SpikeSpec((0.5,), 0.0, 1)) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ContractViolation):
            spike_l1_bound(SpikeSpec((0.5,), 1.0, 4), d=2)


class TestSelectResolution:
    """Test cases for the shared spike resolution."""

    def test_budget_drives_single_point(self):
        X = FiniteSet(((0.5,),), 1)
        # |r| / n < 0.1 / 2 needs n > 20
        assert select_resolution(X, {(0.5,): 1.0}, 0.1, 1) == 32

    def test_separation_drives_zero_residuals(self):
        X = FiniteSet(((0.1,), (0.2,)), 1)
        # 2 / n < 0.1 needs n > 20
        assert select_resolution(X, {(0.1,): 0.0, (0.2,): 0.0}, 0.1, 1) == 32

    def test_single_zero_residual_needs_nothing(self):
        X = FiniteSet(((0.3, 0.3),), 2)
        assert select_resolution(X, {(0.3, 0.3): 0.0}, 0.1, 2) == 1

    def test_result_is_minimal_power_of_two(self, rng):
        X = FiniteSet.from_draws(rng.random((6, 2)), 2)
        residuals = {p: float(r) for p, r in zip(X, rng.uniform(-1, 1, len(X)))}
        epsilon = 0.05

        n = select_resolution(X, residuals, epsilon, 2)
        per_spike = epsilon / (2 * len(X))

        def acceptable(m: int) -> bool:
            within = all(spike_l1_bound(SpikeSpec(p, r, m)) < per_spike for p, r in residuals.items())
            return within and 2.0 / m < min_linf_distance(X)

        assert n & (n - 1) == 0
        assert acceptable(n)
        assert n == 1 or not acceptable(n // 2)

    def test_supports_are_disjoint(self, rng):
        X = FiniteSet.from_draws(rng.random((12, 1)), 1)
        residuals = {p: float(r) for p, r in zip(X, rng.uniform(-1, 1, len(X)))}
        n = select_resolution(X, residuals, 0.1, 1)
        spikes = build_spikes(residuals, n)

        for point, residual in residuals.items():
            total = sum(evaluate(spike, point) for spike in spikes)
            assert total == pytest.approx(residual, abs=1e-9)

    def test_no_dyadic_point_in_two_supports(self, rng):
        # dyadic centers and points keep every network operation exact
        for trial in range(12):
            d = 1 + trial % 3
            X = FiniteSet.from_draws(rng.integers(0, 2**12, size=(int(rng.integers(2, 21)), d)) / 2**12, d)
            residuals = {p: float(r) for p, r in zip(X, rng.uniform(-1, 1, len(X)))}
            spikes = build_spikes(residuals, select_resolution(X, residuals, 0.1, d))
            points = rng.integers(0, 2**24 + 1, size=(10_000, d)) / 2**24

            values = np.array([evaluate_batch(spike, points) for spike in spikes])

            assert np.all(np.count_nonzero(values, axis=0) <= 1)

    def test_no_point_in_two_supports(self, rng):
        for trial in range(12):
            d = 1 + trial % 3
            X = FiniteSet.from_draws(rng.random((int(rng.integers(2, 21)), d)), d)
            residuals = {p: float(r) for p, r in zip(X, rng.uniform(-1, 1, len(X)))}
            n = select_resolution(X, residuals, 0.1, d)
            spikes = build_spikes(residuals, n)
            points = rng.random((10_000, d))

            values = np.array([evaluate_batch(spike, points) for spike in spikes])
            active = np.abs(values) > far_side_tolerance(1.0, n)

            assert np.all(np.count_nonzero(active, axis=0) <= 1)

    def test_accepts_plain_sequences(self):
        assert select_resolution([[0.5]], {(0.5,): 1.0}, 0.1, 1) == 32

    def test_errors(self):
        X = FiniteSet(((0.5,),), 1)
        with pytest.raises(ContractViolation, match="non-empty"):
            select_resolution(FiniteSet.empty(1), {}, 0.1, 1)
        with pytest.raises(ContractViolation, match="keyed exactly"):
            select_resolution(X, {(0.25,): 1.0}, 0.1, 1)
        with pytest.raises(ContractViolation, match="positive"):
            select_resolution(X, {(0.5,): 1.0}, 0.0, 1)
        with pytest.raises(ContractViolation, match="does not match"):
            select_resolution(X, {(0.5,): 1.0}, 0.1, 2)
        with pytest.raises(ContractViolation, match="no resolution"):
            select_resolution(X, {(0.5,): 1e300}, 0.1, 1)


class TestHelpers:
    """Test cases for distances and batch construction."""

    def test_min_linf_distance(self):
        X = FiniteSet(((0.0, 0.0), (0.5, 0.1), (0.9, 0.9)), 2)
        assert min_linf_distance(X) == 0.5
        assert min_linf_distance(FiniteSet(((0.2,),), 1)) == math.inf

    def test_build_spikes_skips_zero_residuals(self):
        spikes = build_spikes({(0.25,): 0.0, (0.75,): 0.5}, 8)

        assert len(spikes) == 1
        assert evaluate(spikes[0], [0.75]) == 0.5
