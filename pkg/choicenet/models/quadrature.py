"""Quadrature estimate and settings models."""

from enum import Enum

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, model_validator


class QuadratureMethod(str, Enum):
    """Integration rule used for an L1 estimate."""

    MONTE_CARLO = "monte_carlo"
    GRID = "grid"


class QuadratureEstimate(BaseModel):
    """
    Estimate of an L1 integral over [0,1]^d with its statistical error bar.

    Serialized in reports as {"value", "stderr", "samples", "method",
    "upper_confidence"}.
    """

    value: float = Field(..., ge=0, description="Estimated integral of |A - B|")
    standard_error: float = Field(
        ...,
        ge=0,
        validation_alias=AliasChoices("standard_error", "stderr"),
        serialization_alias="stderr",
        description="Standard error of the estimate (0 for the grid rule)",
    )
    samples: int = Field(..., ge=1, description="Number of integrand evaluations")
    method: QuadratureMethod = Field(..., description="Integration rule")
    upper_confidence: float = Field(
        ..., description="value + 4*stderr (monte_carlo) or value*(1+factor) (grid)"
    )

    model_config = ConfigDict(
        frozen=True,
        populate_by_name=True,
        json_schema_extra={
            "example": {
                "value": 0.0041,
                "stderr": 0.00003,
                "samples": 20000,
                "method": "monte_carlo",
                "upper_confidence": 0.00422,
            }
        },
    )

    @model_validator(mode="after")
    def _check_upper_bound(self) -> "QuadratureEstimate":
        if self.upper_confidence < self.value:
            raise ValueError("upper_confidence must not be below value")
        return self


class QuadratureSettings(BaseModel):
    """Quadrature engine settings shared by certificates and acceptance checks."""

    method: QuadratureMethod = Field(
        QuadratureMethod.MONTE_CARLO, description="Rule used for certificates"
    )
    samples: int = Field(
        20000,
        ge=100,
        description="Monte Carlo samples, or grid points per axis for the grid rule",
    )
    verify_samples: int = Field(
        200000, ge=100, description="Monte Carlo samples of the per-trial L1 budget check"
    )
    seed: int = Field(0, ge=0, description="Seed of the quadrature random stream")
    grid_bound_factor: float = Field(
        0.05, ge=0, description="Relative safety factor of the grid rule"
    )

    model_config = ConfigDict(frozen=True, extra="forbid")
