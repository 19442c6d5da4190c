"""
Compactly supported spike networks.

A spike centered at k with residual r and resolution n is

    r * relu( sum_l [relu(n(x_l - k_l) + 1) - 2 relu(n(x_l - k_l)) + relu(n(x_l - k_l) - 1)] - (d - 1) )

It equals r at k and vanishes wherever |x - k|_inf >= 1/n.

The first layer subtracts the center before anything is scaled: its
pre-activations are x_l - k_l + {1/n, 0, -1/n}, and the power-of-two factor n
is applied by the combining layer. For a power of two that scaling adds no
rounding of its own.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Union

import numpy as np
from scipy.spatial.distance import pdist

from ..exceptions import ContractViolation
from ..fields.label_field import FiniteSet
from ..utils import Point, as_point, format_point
from .relu_net import AffineLayer, ReluNetwork

logger = logging.getLogger(__name__)

# Doubling stops here; past it the 1/n offsets drop below the float spacing of coordinates in [0, 1].
MAX_RESOLUTION = 2**52


@dataclass(frozen=True)
class SpikeSpec:
    center: Point
    residual: float
    resolution: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_point(self.center))
        residual = float(self.residual)
        if not math.isfinite(residual):
            raise ContractViolation(f"spike residual must be finite, got {residual}")
        object.__setattr__(self, "residual", residual)
        if isinstance(self.resolution, bool) or int(self.resolution) != self.resolution:
            raise ContractViolation(f"resolution must be an integer, got {self.resolution!r}")
        if self.resolution < 1:
            raise ContractViolation(f"resolution must be at least 1, got {self.resolution}")
        object.__setattr__(self, "resolution", int(self.resolution))

    @property
    def dim(self) -> int:
        return len(self.center)


def build_spike(spec: SpikeSpec) -> ReluNetwork:
    """
    Build the spike network for spec with layer widths (d, 3d, 1, 1).

    Examples:
        >>> from choicenet.networks.relu_net import evaluate
        >>> net = build_spike(SpikeSpec(center=(0.5,), residual=1.0, resolution=4))
        >>> evaluate(net, [0.375])
        0.5
    """
    d = spec.dim
    n = float(spec.resolution)
    k = np.asarray(spec.center, dtype=np.float64)

    # relu(n t) = n relu(t), so the hats are built on x - k and scaled afterwards
    hats = AffineLayer(
        np.repeat(np.eye(d), 3, axis=0),
        np.column_stack([1.0 / n - k, -k, -1.0 / n - k]).reshape(-1),
    )
    combine = AffineLayer(n * np.tile([1.0, -2.0, 1.0], d)[None, :], np.array([-(d - 1.0)]))
    scale = AffineLayer(np.array([[spec.residual]]), np.zeros(1))
    return ReluNetwork(d, (hats, combine, scale))


def spike_l1_bound(spec: SpikeSpec, d: Optional[int] = None) -> float:
    """
    Integral of |spike| over R^d: |r| 2^d / (n^d (d+1)!).

    It upper-bounds the integral over [0,1]^d and equals it when the center is
    at least 1/n away from the boundary.
    """
    if d is None:
        d = spec.dim
    elif d != spec.dim:
        raise ContractViolation(f"spike center has dimension {spec.dim}, expected {d}")
    if spec.residual == 0.0:
        return 0.0
    return abs(spec.residual) * 2.0**d / (float(spec.resolution) ** d * math.factorial(d + 1))


def min_linf_distance(X: FiniteSet) -> float:
    """Smallest pairwise l-infinity distance of X (inf when |X| < 2)."""
    if len(X) < 2:
        return math.inf
    return float(np.min(pdist(X.as_array(), metric="chebyshev")))


def select_resolution(
    X: Union[FiniteSet, Sequence[Sequence[float]]],
    residuals: Mapping[Point, float],
    epsilon: float,
    d: int,
) -> int:
    """
    Smallest power of two meeting the spike budget and support separation.

    Args:
        X: Spike centers
        residuals: Residual for every point of X (and nothing else)
        epsilon: Total budget; each active spike must stay below epsilon / (2|X|)
        d: Dimension

    Returns:
        Resolution n such that every nonzero-residual spike has L1 bound < epsilon/(2|X|)
        and, when |X| >= 2, 2/n is below the minimum pairwise l-infinity
        distance so that spike supports are disjoint

    Raises:
        ContractViolation: For an empty or duplicated X, mismatched residual
            keys, a non-positive epsilon, or when no n up to 2^52 works
    """
    if not isinstance(X, FiniteSet):
        X = FiniteSet(tuple(tuple(p) for p in X), d)
    if X.dim != d:
        raise ContractViolation(f"set dimension {X.dim} does not match d={d}")
    if not len(X):
        raise ContractViolation("select_resolution needs a non-empty set")
    if not epsilon > 0:
        raise ContractViolation(f"epsilon must be positive, got {epsilon}")
    keys = {as_point(p, d) for p in residuals}
    if keys != set(X.points):
        raise ContractViolation("residuals must be keyed exactly by the points of X")

    per_spike = epsilon / (2.0 * len(X))
    largest = max(abs(float(r)) for r in residuals.values())
    separation = min_linf_distance(X)
    bound_factor = 2.0**d / math.factorial(d + 1)

    n = 1
    while True:
        within_budget = largest == 0.0 or largest * bound_factor / float(n) ** d < per_spike
        separated = len(X) < 2 or 2.0 / n < separation
        if within_budget and separated:
            logger.info(
                f"Selected resolution n_star={n} for |X|={len(X)} "
                f"(max |r|={largest:.3g}, min distance={separation:.3g})"
            )
            return n
        n *= 2
        if n > MAX_RESOLUTION:
            raise ContractViolation(
                f"no resolution up to 2^52 satisfies the spike budget {per_spike:.3g} "
                f"and separation {separation:.3g}"
            )


def build_spikes(residuals: Mapping[Point, float], resolution: int) -> List[ReluNetwork]:
    """Spike networks for every nonzero residual, in key order."""
    spikes = []
    for center, residual in residuals.items():
        if residual == 0.0:
            logger.debug(f"Skipping zero-residual spike at {format_point(center)}")
            continue
        spikes.append(build_spike(SpikeSpec(center, residual, resolution)))
    return spikes
