"""ReLU networks, spike networks and the circuit builder."""

from .circuit import ReluCircuit
from .relu_net import (
    AffineLayer,
    ReluNetwork,
    deserialize,
    evaluate,
    evaluate_batch,
    from_document,
    pad_to_depth,
    serialize,
    sum_networks,
    to_document,
    zero_network,
)
from .spike_builder import (
    SpikeSpec,
    build_spike,
    build_spikes,
    min_linf_distance,
    select_resolution,
    spike_l1_bound,
)

__all__ = [
    "AffineLayer",
    "ReluCircuit",
    "ReluNetwork",
    "SpikeSpec",
    "build_spike",
    "build_spikes",
    "deserialize",
    "evaluate",
    "evaluate_batch",
    "from_document",
    "min_linf_distance",
    "pad_to_depth",
    "select_resolution",
    "serialize",
    "spike_l1_bound",
    "sum_networks",
    "to_document",
    "zero_network",
]
