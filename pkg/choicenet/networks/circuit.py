"""Layered ReLU circuits with shared, keyed hidden units."""

from __future__ import annotations

import logging
from typing import Dict, Hashable, List, Mapping, Tuple

import numpy as np

from ..exceptions import ContractViolation
from .relu_net import AffineLayer, ReluNetwork

logger = logging.getLogger(__name__)

Combination = Dict[int, float]


class ReluCircuit:
    """
    Incremental builder for a ReLU network organised in stages.

    Stage 0 holds the input coordinates. A unit at stage s >= 1 is
    relu(sum_j c_j * u_j + b) over units u_j of stage s - 1. Units are keyed,
    and asking twice for the same key returns the existing unit, so identical
    sub-expressions are built once. ``compile`` turns the stages into dense
    affine layers with an output read from the last stage.
    """

    def __init__(self, input_dim: int) -> None:
        if input_dim < 1:
            raise ContractViolation(f"input_dim must be positive, got {input_dim}")
        self.input_dim = input_dim
        self._keys: List[Dict[Hashable, int]] = [{}]
        self._rows: List[List[Tuple[Combination, float]]] = [[]]

    @property
    def stages(self) -> int:
        return len(self._rows) - 1

    def width(self, stage: int) -> int:
        return self.input_dim if stage == 0 else len(self._rows[stage])

    def unit(self, stage: int, key: Hashable, terms: Mapping[int, float], bias: float = 0.0) -> int:
        """Index of the unit ``key`` at ``stage``, creating it if needed."""
        if stage < 1:
            raise ContractViolation("units live at stage 1 or later")
        while len(self._rows) <= stage:
            self._keys.append({})
            self._rows.append([])
        known = self._keys[stage].get(key)
        if known is not None:
            return known
        previous = self.width(stage - 1)
        if any(not 0 <= j < previous for j in terms):
            raise ContractViolation(f"unit {key!r} reads outside stage {stage - 1}")
        index = len(self._rows[stage])
        self._rows[stage].append(({j: float(c) for j, c in terms.items() if c != 0.0}, float(bias)))
        self._keys[stage][key] = index
        return index

    def carry(self, stage: int, source_stage: int, source: int, key: Hashable) -> int:
        """Move a nonnegative unit forward to ``stage`` through relu(u) = u."""
        index = source
        for s in range(source_stage + 1, stage + 1):
            index = self.unit(s, ("carry", key, s), {index: 1.0})
        return index

    def compile(self, output: Mapping[int, float], bias: float = 0.0) -> ReluNetwork:
        """Dense network whose output is sum_j c_j * u_j + bias over the last stage."""
        layers = []
        for stage in range(1, self.stages + 1):
            rows = self._rows[stage]
            weights = np.zeros((len(rows), self.width(stage - 1)))
            biases = np.zeros(len(rows))
            for i, (terms, offset) in enumerate(rows):
                for j, c in terms.items():
                    weights[i, j] = c
                biases[i] = offset
            layers.append(AffineLayer(weights, biases))

        last = self.width(self.stages)
        final = np.zeros((1, last))
        for j, c in output.items():
            final[0, j] = c
        layers.append(AffineLayer(final, np.array([float(bias)])))

        net = ReluNetwork(self.input_dim, tuple(layers))
        logger.debug(f"Compiled circuit with widths {net.widths}")
        return net
