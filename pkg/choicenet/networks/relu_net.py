"""Feed-forward ReLU networks: representation, evaluation, assembly, serialization."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError
from scipy.linalg import block_diag

from ..exceptions import ContractViolation, NetworkFormatError
from ..models.network_document import LayerDocument, NetworkDocument
from ..utils import as_point

logger = logging.getLogger(__name__)


def _frozen_array(values, ndim: int, name: str) -> np.ndarray:
    try:
        array = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise ContractViolation(f"{name} must be a rectangular array of reals: {e}") from e
    if array.ndim != ndim:
        raise ContractViolation(f"{name} must be {ndim}-dimensional, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ContractViolation(f"{name} contains non-finite entries")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class AffineLayer:
    """
    Affine map x -> W x + b.

    Both arrays are copied on construction and made read-only, so a layer can
    be shared between threads without further care.
    """

    weights: np.ndarray
    bias: np.ndarray

    def __post_init__(self) -> None:
        weights = _frozen_array(self.weights, 2, "weights")
        bias = _frozen_array(self.bias, 1, "bias")
        if weights.shape[0] < 1 or weights.shape[1] < 1:
            raise ContractViolation(f"weights must be non-empty, got shape {weights.shape}")
        if weights.shape[0] != bias.shape[0]:
            raise ContractViolation(
                f"weights have {weights.shape[0]} rows but bias has length {bias.shape[0]}"
            )
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "bias", bias)

    @property
    def in_features(self) -> int:
        return int(self.weights.shape[1])

    @property
    def out_features(self) -> int:
        return int(self.weights.shape[0])

    def apply(self, inputs: np.ndarray) -> np.ndarray:
        """Apply the map to a batch of row vectors with shape (N, in_features)."""
        return inputs @ self.weights.T + self.bias

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffineLayer):
            return NotImplemented
        return np.array_equal(self.weights, other.weights) and np.array_equal(
            self.bias, other.bias
        )

    def __hash__(self) -> int:
        return hash((self.weights.shape, self.weights.tobytes(), self.bias.tobytes()))


@dataclass(frozen=True)
class ReluNetwork:
    """
    Network x -> A_L(relu(A_{L-1}(... relu(A_1(x))))) of affine layers A_i.

    The activation is fixed to max{0, x} and is applied after every layer
    except the last one.
    """

    input_dim: int
    layers: Tuple[AffineLayer, ...]

    def __post_init__(self) -> None:
        layers = tuple(self.layers)
        object.__setattr__(self, "layers", layers)

        if isinstance(self.input_dim, bool) or not isinstance(self.input_dim, (int, np.integer)):
            raise ContractViolation(f"input_dim must be an integer, got {self.input_dim!r}")
        object.__setattr__(self, "input_dim", int(self.input_dim))
        if self.input_dim < 1:
            raise ContractViolation(f"input_dim must be positive, got {self.input_dim}")
        if not layers:
            raise ContractViolation("a network needs at least one layer")
        if not all(isinstance(layer, AffineLayer) for layer in layers):
            raise ContractViolation("layers must be AffineLayer instances")

        if layers[0].in_features != self.input_dim:
            raise ContractViolation(
                f"first layer expects {layers[0].in_features} inputs, "
                f"network input_dim is {self.input_dim}"
            )
        for index, (previous, current) in enumerate(zip(layers, layers[1:]), start=2):
            if current.in_features != previous.out_features:
                raise ContractViolation(
                    f"layer {index} expects {current.in_features} inputs "
                    f"but layer {index - 1} produces {previous.out_features}"
                )
        if layers[-1].out_features != 1:
            raise ContractViolation(
                f"last layer must have a single output, got {layers[-1].out_features}"
            )

    @property
    def depth(self) -> int:
        """Number of affine layers L."""
        return len(self.layers)

    @property
    def widths(self) -> Tuple[int, ...]:
        """Input dimension followed by the output width of every layer."""
        return (self.input_dim,) + tuple(layer.out_features for layer in self.layers)

    @property
    def parameter_count(self) -> int:
        return sum(layer.weights.size + layer.bias.size for layer in self.layers)


def _forward(net: ReluNetwork, points: np.ndarray) -> np.ndarray:
    hidden = points
    for layer in net.layers[:-1]:
        hidden = np.maximum(layer.apply(hidden), 0.0)
    return net.layers[-1].apply(hidden)[:, 0]


def evaluate(net: ReluNetwork, x: Sequence[float]) -> float:
    """
    Evaluate a network at a single point of [0,1]^d.

    Args:
        net: Network to evaluate
        x: Point with net.input_dim coordinates in [0, 1]

    Returns:
        The network output as a Python float

    Raises:
        ContractViolation: On a dimension mismatch or a point outside [0,1]^d
    """
    point = as_point(x, net.input_dim)
    return float(_forward(net, np.asarray([point], dtype=np.float64))[0])


def evaluate_batch(net: ReluNetwork, points: Union[np.ndarray, Sequence[Sequence[float]]]) -> np.ndarray:
    """Evaluate a network at many points at once; points has shape (N, d)."""
    array = np.asarray(points, dtype=np.float64)
    if array.ndim != 2 or array.shape[1] != net.input_dim:
        raise ContractViolation(
            f"expected points with shape (N, {net.input_dim}), got {array.shape}"
        )
    if array.size and not (np.all(array >= 0.0) and np.all(array <= 1.0)):
        raise ContractViolation(f"points must lie in [0,1]^{net.input_dim}")
    return _forward(net, array)


def zero_network(d: int) -> ReluNetwork:
    """Single-layer network that is identically zero on [0,1]^d."""
    return ReluNetwork(d, (AffineLayer(np.zeros((1, d)), np.zeros(1)),))


def pad_to_depth(net: ReluNetwork, depth: int) -> ReluNetwork:
    """
    Deepen a network without changing its values.

    The output layer is split into the rails (v, -v); identity layers carry
    relu(v) and relu(-v) forward and the final layer recombines them as
    relu(v) - relu(-v) = v.
    """
    if depth < net.depth:
        raise ContractViolation(f"cannot pad a depth-{net.depth} network to depth {depth}")
    if depth == net.depth:
        return net

    last = net.layers[-1]
    rails = AffineLayer(
        np.vstack([last.weights, -last.weights]),
        np.concatenate([last.bias, -last.bias]),
    )
    carries = tuple(
        AffineLayer(np.eye(2), np.zeros(2)) for _ in range(depth - net.depth - 1)
    )
    recombine = AffineLayer(np.array([[1.0, -1.0]]), np.zeros(1))
    return ReluNetwork(net.input_dim, net.layers[:-1] + (rails,) + carries + (recombine,))


def sum_networks(nets: Sequence[ReluNetwork]) -> ReluNetwork:
    """
    Combine networks into one network computing their pointwise sum.

    Shallower networks are first padded to the common depth. Hidden layers are
    then placed side by side: first layers stacked on top of each other,
    inner layers block-diagonal, output weights concatenated and biases added.

    Args:
        nets: Non-empty list of networks sharing input_dim

    Returns:
        A single ReluNetwork of depth max(net.depth)

    Raises:
        ContractViolation: If the list is empty or input dimensions differ
    """
    nets = list(nets)
    if not nets:
        raise ContractViolation("sum_networks needs at least one network")
    dims = {net.input_dim for net in nets}
    if len(dims) != 1:
        raise ContractViolation(f"networks have different input dimensions: {sorted(dims)}")
    if len(nets) == 1:
        return nets[0]

    d = nets[0].input_dim
    depth = max(net.depth for net in nets)
    padded = [pad_to_depth(net, depth) for net in nets]

    if depth == 1:
        return ReluNetwork(
            d,
            (
                AffineLayer(
                    np.sum([net.layers[0].weights for net in padded], axis=0),
                    np.sum([net.layers[0].bias for net in padded], axis=0),
                ),
            ),
        )

    layers = [
        AffineLayer(
            np.vstack([net.layers[0].weights for net in padded]),
            np.concatenate([net.layers[0].bias for net in padded]),
        )
    ]
    for index in range(1, depth - 1):
        layers.append(
            AffineLayer(
                block_diag(*(net.layers[index].weights for net in padded)),
                np.concatenate([net.layers[index].bias for net in padded]),
            )
        )
    layers.append(
        AffineLayer(
            np.hstack([net.layers[-1].weights for net in padded]),
            np.array([sum(float(net.layers[-1].bias[0]) for net in padded)]),
        )
    )

    result = ReluNetwork(d, tuple(layers))
    logger.debug(f"Summed {len(nets)} networks into widths {result.widths}")
    return result


def to_document(net: ReluNetwork) -> NetworkDocument:
    return NetworkDocument(
        input_dim=net.input_dim,
        activation="relu",
        layers=[
            LayerDocument(weights=layer.weights.tolist(), bias=layer.bias.tolist())
            for layer in net.layers
        ],
    )


def from_document(document: NetworkDocument) -> ReluNetwork:
    """Build a network from a validated document."""
    layers = []
    for index, layer in enumerate(document.layers):
        try:
            layers.append(AffineLayer(layer.weights, layer.bias))
        except ContractViolation as e:
            raise NetworkFormatError(str(e), location=f"layers.{index}") from e
    try:
        return ReluNetwork(document.input_dim, tuple(layers))
    except ContractViolation as e:
        raise NetworkFormatError(str(e), location="layers") from e


def serialize(net: ReluNetwork) -> bytes:
    """
    Serialize a network to a UTF-8 JSON document.

    Floats are written with repr, the shortest text that parses back to the
    same double, so the output is deterministic and round-trips bit-exactly.
    """
    document = to_document(net).model_dump(mode="python")
    return json.dumps(document, separators=(",", ":"), allow_nan=False).encode("utf-8")


def deserialize(data: Union[bytes, str]) -> ReluNetwork:
    """
    Parse a serialized network.

    Raises:
        NetworkFormatError: With the character position, line and column of a
            syntax error, or the field path of a structural error
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as e:
            raise NetworkFormatError("network document is not valid UTF-8", position=e.start) from e
    else:
        text = data

    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkFormatError(
            f"malformed network document: {e.msg}",
            position=e.pos,
            line=e.lineno,
            column=e.colno,
        ) from e

    try:
        document = NetworkDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        raise NetworkFormatError(f"invalid network document: {first['msg']}", location=location) from e

    return from_document(document)
