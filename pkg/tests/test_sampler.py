"""Tests for the finite-set sampler and its random streams."""

import logging

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import stats

from choicenet.exceptions import ContractViolation
from choicenet.fields.label_field import FiniteSet
from choicenet.models.size_distribution import SizeDistribution, SizeKind
from choicenet.numerics.sampler import (
    PROBE_STREAM,
    SAMPLER_STREAM,
    intersection_trials,
    sample_finite_set,
    stream,
)


class TestSizeDistribution:
    """Test cases for size distribution parsing and validation."""

    @pytest.mark.parametrize(
        "token, kind, attribute, value",
        [
            ("fixed:5", SizeKind.FIXED, "k", 5),
            ("poisson:3", SizeKind.POISSON, "mean", 3.0),
            ("geometric:0.25", SizeKind.GEOMETRIC, "p", 0.25),
        ],
    )
    def test_from_token(self, token, kind, attribute, value):
        dist = SizeDistribution.from_token(token)
        assert dist.kind is kind
        assert getattr(dist, attribute) == value

    @pytest.mark.parametrize("token", ["fixed", "uniform:3", "geometric:1.5", "poisson:-1"])
    def test_invalid_tokens(self, token):
        with pytest.raises(ValueError):
            SizeDistribution.from_token(token)

    def test_parameters_must_match_kind(self):
        with pytest.raises(ValidationError, match="requires 'mean'"):
            SizeDistribution(kind="poisson")
        with pytest.raises(ValidationError, match="not a parameter"):
            SizeDistribution(kind="fixed", k=3, p=0.5)


class TestStreams:
    """Test cases for keyed random streams."""

    def test_same_keys_same_numbers(self):
        assert np.array_equal(stream(7, SAMPLER_STREAM, 3).random(10), stream(7, SAMPLER_STREAM, 3).random(10))

    def test_keys_separate_streams(self):
        first = stream(7, SAMPLER_STREAM, 3).random(10)
        assert not np.array_equal(first, stream(7, PROBE_STREAM, 3).random(10))
        assert not np.array_equal(first, stream(7, SAMPLER_STREAM, 4).random(10))
        assert not np.array_equal(first, stream(8, SAMPLER_STREAM, 3).random(10))


class TestSampleFiniteSet:
    """Test cases for sample_finite_set."""

    def test_fixed_size_and_reproducible(self):
        dist = SizeDistribution.from_token("fixed:5")
        X = sample_finite_set(dist, 2, seed=7)

        assert len(X) == 5
        assert X.dim == 2
        assert X == sample_finite_set(dist, 2, seed=7)
        assert X != sample_finite_set(dist, 2, seed=7, index=1)

    def test_points_lie_in_half_open_cube(self):
        X = sample_finite_set(SizeDistribution.from_token("fixed:200"), 3, seed=1)
        points = X.as_array()
        assert np.all(points >= 0.0) and np.all(points < 1.0)

    def test_empty_set_from_zero_draws(self):
        X = sample_finite_set(SizeDistribution.from_token("fixed:0"), 4, seed=0)
        assert len(X) == 0

    def test_coordinates_are_uniform(self):
        X = sample_finite_set(SizeDistribution.from_token("fixed:4000"), 2, seed=11)
        for axis in range(2):
            assert stats.kstest(X.as_array()[:, axis], "uniform").pvalue > 1e-4

    @pytest.mark.parametrize("token, mean, variance", [("poisson:3", 3.0, 3.0), ("geometric:0.5", 1.0, 2.0)])
    def test_size_law(self, token, mean, variance):
        dist = SizeDistribution.from_token(token)
        sizes = np.array([len(sample_finite_set(dist, 1, seed=5, index=t)) for t in range(4000)])
        assert abs(sizes.mean() - mean) < 5 * np.sqrt(variance / sizes.size)
        assert sizes.min() == 0

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "token, law, bins",
        [("poisson:3", stats.poisson(3.0), 11), ("geometric:0.5", stats.geom(0.5, loc=-1), 14)],
    )
    def test_size_law_chisquare(self, token, law, bins):
        dist = SizeDistribution.from_token(token)
        sizes = np.array([len(sample_finite_set(dist, 1, seed=9, index=t)) for t in range(100_000)])

        # sizes of at least `bins` share the last cell
        observed = np.bincount(np.minimum(sizes, bins), minlength=bins + 1)
        probabilities = np.append(law.pmf(np.arange(bins)), law.sf(bins - 1))

        assert stats.chisquare(observed, probabilities * sizes.size).pvalue > 0.01

    def test_invalid_dimension(self):
        with pytest.raises(ContractViolation):
            sample_finite_set(SizeDistribution.from_token("fixed:1"), 0, seed=0)


class TestIntersectionTrials:
    """Test cases for counting sampled sets that hit a target."""

    def test_hits_are_counted_and_logged(self, caplog):
        dist = SizeDistribution.from_token("fixed:3")
        hit = sample_finite_set(dist, 1, seed=9, index=2)
        target = FiniteSet((hit.points[1], (0.123456789,)), 1)

        with caplog.at_level(logging.WARNING, logger="choicenet.numerics.sampler"):
            hits = intersection_trials(dist, 1, target, trials=5, seed=9)

        assert hits == 1
        assert "Trial 2" in caplog.text
        assert "target point #0" in caplog.text

    def test_disjoint_target_never_hit(self):
        target = FiniteSet(((0.5, 0.5), (0.25, 0.75)), 2)
        assert intersection_trials(SizeDistribution.from_token("poisson:5"), 2, target, trials=500, seed=3) == 0

    def test_empty_target(self):
        assert intersection_trials(SizeDistribution.from_token("fixed:2"), 1, FiniteSet.empty(1), 10, 0) == 0

    def test_contract(self):
        dist = SizeDistribution.from_token("fixed:2")
        with pytest.raises(ContractViolation):
            intersection_trials(dist, 1, FiniteSet.empty(1), trials=0, seed=0)
        with pytest.raises(ContractViolation):
            intersection_trials(dist, 2, FiniteSet.empty(1), trials=1, seed=0)
