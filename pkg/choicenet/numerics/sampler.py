"""
Random finite sets of [0,1]^d.

Draw k from a discrete size distribution, then k i.i.d. uniform points;
repeated draws collapse, so |X| <= k. Every random stream is a counter-based
Philox generator keyed by (seed, namespace, index), which makes trial t
reproducible on its own and independent of worker scheduling.
"""

import logging

import numpy as np

from ..exceptions import ContractViolation
from ..fields.label_field import FiniteSet
from ..models.size_distribution import SizeDistribution, SizeKind
from ..utils import format_point

logger = logging.getLogger(__name__)

SAMPLER_STREAM = 0
QUADRATURE_STREAM = 1
PROBE_STREAM = 2
VERIFY_STREAM = 3


def stream(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for (seed, *keys)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed % 2**64, *keys])))


def draw_size(dist: SizeDistribution, rng: np.random.Generator) -> int:
    """Number of draws k; geometric counts failures, so k ranges over 0, 1, 2, ..."""
    if dist.kind is SizeKind.FIXED:
        return int(dist.k)
    if dist.kind is SizeKind.POISSON:
        return int(rng.poisson(dist.mean))
    return int(rng.geometric(dist.p)) - 1


def sample_finite_set(dist: SizeDistribution, d: int, seed: int, index: int = 0) -> FiniteSet:
    """
    Sample X for trial ``index`` of a run seeded with ``seed``.

    Coordinates are 53-bit dyadic rationals in [0,1).
    """
    if d < 1:
        raise ContractViolation(f"dimension must be positive, got {d}")
    rng = stream(seed, SAMPLER_STREAM, index)
    k = draw_size(dist, rng)
    draws = rng.random((k, d))
    X = FiniteSet.from_draws(draws, d)
    if len(X) < k:
        logger.warning(f"Collapsed {k - len(X)} repeated draws in trial {index}")
    return X


def intersection_trials(
    dist: SizeDistribution, d: int, target: FiniteSet, trials: int, seed: int
) -> int:
    """
    Count sampled sets that share at least one point with target.

    Every hit is logged with the sampled point and the target point it matched.
    """
    if trials < 1:
        raise ContractViolation(f"trials must be at least 1, got {trials}")
    if target.dim != d:
        raise ContractViolation(f"target dimension {target.dim} does not match d={d}")
    if not len(target):
        return 0

    hits = 0
    for t in range(trials):
        X = sample_finite_set(dist, d, seed, index=t)
        matched = [p for p in X if p in target]
        if matched:
            hits += 1
            for p in matched:
                position = target.points.index(p)
                logger.warning(
                    f"Trial {t}: sampled point {format_point(p)} equals "
                    f"target point #{position} {format_point(target.points[position])}"
                )
    logger.info(f"{hits} of {trials} sampled sets intersected a {len(target)}-point target")
    return hits
