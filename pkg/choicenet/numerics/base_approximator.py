"""
Certified ReLU approximation of an integrable base function.

The base is interpolated on a uniform grid with m cells per axis, split into
Kuhn simplices (within a cell, the simplex is chosen by sorting the fractional
coordinates). The grid doubles until a quadrature estimate certifies the L1
budget; the interpolant is then compiled exactly into a ReLU network and the
compiled network is certified on the same sample points.
"""

from __future__ import annotations

import itertools
import logging
from threading import RLock
from typing import Any, Dict, Hashable, Optional, Tuple

import numpy as np

from ..exceptions import ApproximationBudgetError, ContractViolation
from ..fields.label_field import BaseFunction, LabelField
from ..models.approximation import ApproxCertificate, ApproxStrategy
from ..models.quadrature import QuadratureEstimate, QuadratureSettings
from ..networks.circuit import ReluCircuit
from ..networks.relu_net import AffineLayer, ReluNetwork, evaluate_batch, zero_network
from .quadrature import estimate_with

logger = logging.getLogger(__name__)

DEFAULT_MAX_REFINEMENTS = 12
DEFAULT_MAX_GRID_NODES = 2500


def grid_nodes(m: int, d: int) -> np.ndarray:
    """Grid nodes v/m in C order, shape ((m+1)^d, d)."""
    axis = np.arange(m + 1, dtype=np.float64) / m
    return np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)


def node_values(base: BaseFunction, m: int) -> np.ndarray:
    """Base values on the grid, shaped (m+1,) * d."""
    d = base.dim
    return base(grid_nodes(m, d)).reshape((m + 1,) * d)


def interpolate_kuhn(values: np.ndarray, m: int, points: np.ndarray) -> np.ndarray:
    """
    Evaluate the piecewise-linear Kuhn interpolant of grid values at points.

    Inside the cell c with fractional offsets u, coordinates are visited in
    decreasing order of u; the simplex vertices are c, c + e_s1, c + e_s1 + e_s2,
    ... with barycentric weights 1 - u_s1, u_s1 - u_s2, ..., u_sd.
    """
    points = np.asarray(points, dtype=np.float64)
    n_points, d = points.shape
    scaled = points * m
    cell = np.clip(np.floor(scaled), 0, m - 1).astype(np.int64)
    frac = scaled - cell
    order = np.argsort(-frac, axis=1, kind="stable")
    ordered = np.take_along_axis(frac, order, axis=1)

    rows = np.arange(n_points)
    vertex = cell.copy()
    result = (1.0 - ordered[:, 0]) * values[tuple(vertex.T)]
    for step in range(d):
        vertex[rows, order[:, step]] += 1
        upper = ordered[:, step + 1] if step + 1 < d else np.zeros(n_points)
        result += (ordered[:, step] - upper) * values[tuple(vertex.T)]
    return result


def compile_hat_1d(values: np.ndarray, m: int) -> ReluNetwork:
    """
    Depth-2 network equal to the linear interpolant of values on [0,1].

    f(x) = g_0 + sum_i (D_i - D_{i-1}) relu(m x - i), with D_i = g_{i+1} - g_i.
    """
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    increments = np.diff(values)
    coefficients = np.diff(increments, prepend=0.0)
    kinks = np.flatnonzero(coefficients)
    if kinks.size == 0:
        kinks = np.array([0])

    hidden = AffineLayer(np.full((kinks.size, 1), float(m)), -kinks.astype(np.float64))
    output = AffineLayer(coefficients[kinks][None, :], np.array([values[0]]))
    return ReluNetwork(1, (hidden, output))


def _running_max(
    circuit: ReluCircuit, sign: int, node: Tuple[int, ...], edges: Dict[Tuple[int, int, int], int]
) -> Dict[int, float]:
    """
    Stage-d combination equal to max_i relu(sign * (m x_i - v_i)).

    Folds left over the coordinates with max(a, b) = relu(a) + relu(b - a),
    valid because every partial maximum is nonnegative. Units are keyed by the
    node prefix they depend on, so nodes sharing a prefix share units.
    """
    d = len(node)
    combo: Dict[int, float] = {edges[(sign, 0, node[0])]: 1.0}
    for i in range(1, d):
        stage = i + 1
        prefix = node[: i + 1]
        edge = circuit.carry(i, 1, edges[(sign, i, node[i])], ("edge", sign, i, node[i]))
        keep = circuit.unit(stage, ("keep", sign, prefix[:-1]), combo)
        rise_terms = {edge: 1.0}
        for j, c in combo.items():
            rise_terms[j] = rise_terms.get(j, 0.0) - c
        rise = circuit.unit(stage, ("rise", sign, prefix), rise_terms)
        combo = {keep: 1.0, rise: 1.0}
    return combo


def compile_kuhn(values: np.ndarray, m: int) -> ReluNetwork:
    """
    Network equal to the Kuhn interpolant of values for d >= 2.

    Each node v contributes g(v) * relu(1 - max_i relu(t_i) - max_i relu(-t_i))
    with t = m x - v, which is the nodal hat of the triangulation. Nodes with
    g(v) = 0 are skipped. The result has depth d + 2.
    """
    d = values.ndim
    if d < 2:
        raise ContractViolation("compile_kuhn handles d >= 2; use compile_hat_1d for d = 1")
    circuit = ReluCircuit(d)
    fm = float(m)

    edges: Dict[Tuple[int, int, int], int] = {}
    for i in range(d):
        for v in range(m + 1):
            edges[(1, i, v)] = circuit.unit(1, ("pos", i, v), {i: fm}, -float(v))
            edges[(-1, i, v)] = circuit.unit(1, ("neg", i, v), {i: -fm}, float(v))

    output: Dict[int, float] = {}
    for node in itertools.product(range(m + 1), repeat=d):
        weight = float(values[node])
        if weight == 0.0:
            continue
        above = _running_max(circuit, 1, node, edges)
        below = _running_max(circuit, -1, node, edges)
        terms: Dict[int, float] = {}
        for j, c in itertools.chain(above.items(), below.items()):
            terms[j] = terms.get(j, 0.0) - c
        hat = circuit.unit(d + 1, ("hat", node), terms, 1.0)
        output[hat] = weight

    if not output:
        return zero_network(d)
    return circuit.compile(output)


def compile_interpolant(values: np.ndarray, m: int) -> ReluNetwork:
    if values.ndim == 1:
        return compile_hat_1d(values, m)
    return compile_kuhn(values, m)


class CertificateCache:
    """
    Thread-safe memo of certified approximations.

    Keys are the base identifier together with every setting that influences
    the result, so a cached entry is exactly what a fresh computation returns.
    """

    def __init__(self) -> None:
        self._lock = RLock()
        self._entries: Dict[Hashable, Tuple[ReluNetwork, ApproxCertificate]] = {}
        self._hits = 0
        self._misses = 0

    def get(self, key: Hashable) -> Optional[Tuple[ReluNetwork, ApproxCertificate]]:
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                self._misses += 1
            else:
                self._hits += 1
            return entry

    def put(self, key: Hashable, entry: Tuple[ReluNetwork, ApproxCertificate]) -> None:
        with self._lock:
            self._entries[key] = entry

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self._hits = 0
            self._misses = 0
            logger.info("Certificate cache cleared")

    def get_statistics(self) -> Dict[str, Any]:
        with self._lock:
            return {
                "entries": len(self._entries),
                "cache_hits": self._hits,
                "cache_misses": self._misses,
            }


certificate_cache = CertificateCache()


def approximate(
    field: LabelField,
    budget: float,
    quadrature: Optional[QuadratureSettings] = None,
    max_refinements: int = DEFAULT_MAX_REFINEMENTS,
    max_grid_nodes: int = DEFAULT_MAX_GRID_NODES,
    use_cache: bool = True,
) -> Tuple[ReluNetwork, ApproxCertificate]:
    """
    Certified network with integral of |base - network| below budget.

    Args:
        field: Exception-free field (the oracle representative)
        budget: L1 budget, > 0
        quadrature: Settings of the certifying quadrature
        max_refinements: Maximum number of grid doublings, starting at m = 1
        max_grid_nodes: Cap on (m+1)^d for d >= 2
        use_cache: Reuse earlier results for the same base and settings

    Returns:
        (network, certificate); the zero network when field is not integrable

    Raises:
        ContractViolation: For a non-positive budget or a field with exceptions
        ApproximationBudgetError: When no resolution certifies the budget
    """
    if not budget > 0:
        raise ContractViolation(f"budget must be positive, got {budget}")
    if field.exceptions:
        raise ContractViolation("approximate expects an exception-free field")
    quadrature = quadrature or QuadratureSettings()

    if not field.integrable:
        logger.info(f"Base {field.base.identifier} is not integrable; using the zero network")
        return zero_network(field.dim), ApproxCertificate(
            budget=budget, estimate=None, grid_resolution=0, strategy=ApproxStrategy.ZERO
        )

    key = (field.base.identifier, float(budget), quadrature, max_refinements, max_grid_nodes)
    if use_cache:
        cached = certificate_cache.get(key)
        if cached is not None:
            return cached

    result = _refine(field.base, budget, quadrature, max_refinements, max_grid_nodes)
    if use_cache:
        certificate_cache.put(key, result)
    return result


def _refine(
    base: BaseFunction,
    budget: float,
    quadrature: QuadratureSettings,
    max_refinements: int,
    max_grid_nodes: int,
) -> Tuple[ReluNetwork, ApproxCertificate]:
    d = base.dim
    strategy = ApproxStrategy.HAT_INTERP_1D if d == 1 else ApproxStrategy.SIMPLICIAL_MINMAX
    best: Optional[QuadratureEstimate] = None

    m = 1
    for step in range(max_refinements + 1):
        if d >= 2 and (m + 1) ** d > max_grid_nodes:
            raise ApproximationBudgetError(
                f"grid with m={m} needs {(m + 1) ** d} nodes, above the cap of {max_grid_nodes}; "
                f"best upper confidence {best.upper_confidence if best else None} "
                f"for budget {budget}",
                budget=budget,
                achieved=best.upper_confidence if best else None,
            )

        values = node_values(base, m)
        estimate = estimate_with(
            lambda x: interpolate_kuhn(values, m, x), base, d, quadrature, index=step
        )
        if best is None or estimate.upper_confidence < best.upper_confidence:
            best = estimate
        logger.info(
            f"Refinement {step}: m={m}, L1 estimate {estimate.value:.6g} "
            f"(upper {estimate.upper_confidence:.6g}, budget {budget:.6g})"
        )

        if estimate.upper_confidence < budget:
            net = compile_interpolant(values, m)
            certified = estimate_with(
                lambda x: evaluate_batch(net, x), base, d, quadrature, index=step
            )
            if certified.upper_confidence < budget:
                logger.info(
                    f"Certified {base.identifier} at m={m} with network widths {net.widths}"
                )
                return net, ApproxCertificate(
                    budget=budget,
                    estimate=certified,
                    grid_resolution=m,
                    strategy=strategy,
                )
            logger.warning(
                f"Compiled network at m={m} missed the budget "
                f"({certified.upper_confidence:.6g} >= {budget:.6g}); refining"
            )
        m *= 2

    raise ApproximationBudgetError(
        f"budget {budget} not certified after {max_refinements} refinements; "
        f"best upper confidence {best.upper_confidence if best else None}",
        budget=budget,
        achieved=best.upper_confidence if best else None,
    )
