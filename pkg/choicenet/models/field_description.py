"""Label field description model used in experiment configs."""

from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field


class ExceptionEntry(BaseModel):
    """A single pointwise label overriding the base function."""

    point: List[float] = Field(..., min_length=1, description="Point in [0,1]^d")
    value: float = Field(..., ge=0, le=1, description="Label at the point")

    model_config = ConfigDict(extra="forbid", frozen=True)


class FieldDescription(BaseModel):
    """
    Description of a label field: a registry base function plus exceptions.

    The base name must be one of the registered analytic functions; params are
    passed to the registry factory.
    """

    base: str = Field(..., description="Registry name of the base function")
    params: Dict[str, Any] = Field(
        default_factory=dict, description="Parameters of the base function"
    )
    integrable: bool = Field(True, description="Whether the base is integrable")
    exceptions: List[ExceptionEntry] = Field(
        default_factory=list, description="Finite list of pointwise overrides"
    )

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        json_schema_extra={
            "example": {
                "base": "identity",
                "params": {},
                "integrable": True,
                "exceptions": [{"point": [0.3], "value": 0.9}],
            }
        },
    )
