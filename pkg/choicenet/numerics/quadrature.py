"""L1 distances between functions on [0,1]^d with statistical error bars."""

import logging
import math
from typing import Callable, Union

import numpy as np

from ..exceptions import ContractViolation, QuadratureError
from ..models.quadrature import QuadratureEstimate, QuadratureMethod, QuadratureSettings
from .sampler import QUADRATURE_STREAM, stream

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

MIN_SAMPLES = 100
MAX_GRID_DIM = 3
MAX_GRID_POINTS = 4_000_000
CONFIDENCE_SIGMAS = 4.0


def _absolute_difference(a: Integrand, b: Integrand, points: np.ndarray) -> np.ndarray:
    diff = np.abs(np.asarray(a(points), dtype=np.float64) - np.asarray(b(points), dtype=np.float64))
    finite = np.isfinite(diff)
    if not np.all(finite):
        raise QuadratureError("integrand is not finite", points[int(np.argmin(finite))])
    return diff


def l1_distance(
    a: Integrand,
    b: Integrand,
    d: int,
    method: Union[QuadratureMethod, str] = QuadratureMethod.MONTE_CARLO,
    samples: int = 20000,
    seed: int = 0,
    index: int = 0,
    grid_bound_factor: float = 0.05,
    chunk_size: int = 8192,
    namespace: int = QUADRATURE_STREAM,
) -> QuadratureEstimate:
    """
    Estimate the integral of |a - b| over [0,1]^d.

    Args:
        a, b: Vectorized functions mapping (N, d) arrays to (N,) arrays
        d: Dimension
        method: monte_carlo (i.i.d. uniform points) or grid (midpoint rule,
            ``samples`` points per axis, d <= 3)
        samples: Number of Monte Carlo points or grid points per axis
        seed: Seed of the quadrature stream
        index: Stream index, so separate estimates in one run use fresh points
        grid_bound_factor: Relative safety margin of the grid rule
        chunk_size: Points evaluated per batch; does not change the result
        namespace: Stream namespace; acceptance checks use their own

    Returns:
        QuadratureEstimate with value, standard error and upper confidence

    Raises:
        ContractViolation: For samples < 100 or an unsupported grid size
        QuadratureError: When a or b is not finite at a sample point
    """
    method = QuadratureMethod(method)
    if d < 1:
        raise ContractViolation(f"dimension must be positive, got {d}")
    if samples < MIN_SAMPLES:
        raise ContractViolation(f"quadrature needs at least {MIN_SAMPLES} samples, got {samples}")

    if method is QuadratureMethod.GRID:
        return _grid_rule(a, b, d, samples, grid_bound_factor, chunk_size)

    rng = stream(seed, namespace, index)
    diffs = np.empty(samples)
    for start in range(0, samples, chunk_size):
        stop = min(start + chunk_size, samples)
        diffs[start:stop] = _absolute_difference(a, b, rng.random((stop - start, d)))

    value = float(np.mean(diffs))
    standard_error = float(np.std(diffs, ddof=1) / math.sqrt(samples))
    estimate = QuadratureEstimate(
        value=value,
        standard_error=standard_error,
        samples=samples,
        method=method,
        upper_confidence=value + CONFIDENCE_SIGMAS * standard_error,
    )
    logger.debug(
        f"Monte Carlo L1 estimate {value:.6g} +- {standard_error:.3g} "
        f"({samples} samples, stream {index})"
    )
    return estimate


def _grid_rule(
    a: Integrand, b: Integrand, d: int, per_axis: int, bound_factor: float, chunk_size: int
) -> QuadratureEstimate:
    if d > MAX_GRID_DIM:
        raise ContractViolation(f"grid quadrature supports d <= {MAX_GRID_DIM}, got d={d}")
    total = per_axis**d
    if total > MAX_GRID_POINTS:
        raise ContractViolation(
            f"grid of {per_axis}^{d} = {total} points exceeds {MAX_GRID_POINTS}"
        )

    axis = (np.arange(per_axis) + 0.5) / per_axis
    points = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
    diffs = np.concatenate(
        [
            _absolute_difference(a, b, points[start : start + chunk_size])
            for start in range(0, total, chunk_size)
        ]
    )
    value = float(np.mean(diffs))
    logger.debug(f"Midpoint-rule L1 estimate {value:.6g} on {per_axis}^{d} points")
    return QuadratureEstimate(
        value=value,
        standard_error=0.0,
        samples=total,
        method=QuadratureMethod.GRID,
        upper_confidence=value * (1.0 + bound_factor),
    )


def estimate_with(
    a: Integrand, b: Integrand, d: int, settings: QuadratureSettings, index: int = 0, samples: int = 0
) -> QuadratureEstimate:
    """l1_distance with the method, seed and sample count taken from settings."""
    return l1_distance(
        a,
        b,
        d,
        method=settings.method,
        samples=samples or settings.samples,
        seed=settings.seed,
        index=index,
        grid_bound_factor=settings.grid_bound_factor,
    )
