"""Predictor configuration models."""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .oracle import OracleKind
from .quadrature import QuadratureSettings


class BudgetSplit(BaseModel):
    """Share of epsilon given to the base network, the spikes and the slack."""

    base_fraction: float = Field(0.4, gt=0, lt=1, description="Share for the base network")
    spike_fraction: float = Field(0.4, gt=0, lt=1, description="Share for the spike sum")
    slack: float = Field(0.2, gt=0, lt=1, description="Reserve for verification noise")

    model_config = ConfigDict(extra="forbid", frozen=True)

    @model_validator(mode="after")
    def _check_sum(self) -> "BudgetSplit":
        total = self.base_fraction + self.spike_fraction + self.slack
        if not math.isclose(total, 1.0, rel_tol=0, abs_tol=1e-12):
            raise ValueError(f"budget fractions must sum to 1, got {total}")
        return self


class PredictorConfig(BaseModel):
    """Settings for one call to fit / predict_labels."""

    epsilon: float = Field(..., gt=0, description="L1 budget of the assembled network")
    budget_split: BudgetSplit = Field(default_factory=BudgetSplit)
    oracle: OracleKind = Field(default_factory=OracleKind)
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    max_refinements: int = Field(
        12, ge=0, le=30, description="Maximum doublings of the interpolation grid"
    )
    max_grid_nodes: int = Field(
        2500, ge=1, description="Node cap for interpolation grids in d >= 2"
    )

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        json_schema_extra={
            "example": {
                "epsilon": 0.1,
                "budget_split": {"base_fraction": 0.4, "spike_fraction": 0.4, "slack": 0.2},
                "oracle": {"oracle": "strip_exceptions"},
                "quadrature": {"method": "monte_carlo", "samples": 20000, "seed": 7},
                "max_refinements": 12,
            }
        },
    )

    @property
    def base_budget(self) -> float:
        return self.budget_split.base_fraction * self.epsilon

    @property
    def spike_budget(self) -> float:
        return self.budget_split.spike_fraction * self.epsilon
