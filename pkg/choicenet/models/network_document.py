"""Serialized network document model."""

from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field


class LayerDocument(BaseModel):
    """One affine layer T_l of a serialized network."""

    weights: List[List[float]] = Field(
        ..., description="Row-major weight matrix with shape (N_out, N_in)"
    )
    bias: List[float] = Field(..., description="Bias vector with length N_out")

    model_config = ConfigDict(extra="forbid")


class NetworkDocument(BaseModel):
    """
    Text form of a ReLU network.

    Numbers are written with their shortest round-trip representation so that
    a document parses back to bit-identical weights.
    """

    input_dim: int = Field(..., ge=1, description="Input dimension d")
    activation: Literal["relu"] = Field(
        "relu", description="Activation applied after every layer except the last"
    )
    layers: List[LayerDocument] = Field(
        ..., min_length=1, description="Affine layers, first to last"
    )

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "input_dim": 1,
                "activation": "relu",
                "layers": [
                    {"weights": [[4.0], [4.0], [4.0]], "bias": [-1.0, -2.0, -3.0]},
                    {"weights": [[1.0, -2.0, 1.0]], "bias": [-0.0]},
                    {"weights": [[2.0]], "bias": [0.0]},
                ],
            }
        },
    )
