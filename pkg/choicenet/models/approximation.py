"""Certificate model for the base approximator."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .quadrature import QuadratureEstimate


class ApproxStrategy(str, Enum):
    """How the certified network was produced."""

    HAT_INTERP_1D = "hat_interp_1d"
    SIMPLICIAL_MINMAX = "simplicial_minmax"
    ZERO = "zero"


class ApproxCertificate(BaseModel):
    """Quadrature-backed statement that the L1 distance to g is below budget."""

    budget: float = Field(..., gt=0, description="L1 budget allotted to the network")
    estimate: Optional[QuadratureEstimate] = Field(
        None, description="Final estimate of the L1 distance (absent for zero)"
    )
    grid_resolution: int = Field(
        ..., ge=0, description="Grid cells per axis m (0 for the zero network)"
    )
    strategy: ApproxStrategy = Field(..., description="Construction used")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_certified(self) -> "ApproxCertificate":
        if self.strategy is ApproxStrategy.ZERO:
            return self
        if self.estimate is None:
            raise ValueError("non-zero strategies require an estimate")
        if not self.estimate.upper_confidence < self.budget:
            raise ValueError(
                f"upper confidence {self.estimate.upper_confidence} "
                f"does not certify budget {self.budget}"
            )
        return self
