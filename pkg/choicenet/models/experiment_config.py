"""Experiment configuration model read from TOML config files."""

import os
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .field_description import FieldDescription
from .oracle import OracleKind, OracleTag
from .predictor_config import BudgetSplit, PredictorConfig
from .quadrature import QuadratureSettings
from .size_distribution import SizeDistribution

OUTPUT_DIR_ENV = "CHOICENET_OUTPUT_DIR"


def default_output_dir() -> str:
    """Output directory used when a config does not name one."""
    return os.environ.get(OUTPUT_DIR_ENV, "reports")


class ExperimentConfig(BaseModel):
    """One reproducible experiment: field, oracle, sampler, budgets and trials."""

    d: int = Field(..., ge=1, le=8, description="Dimension of the unit cube")
    epsilon: float = Field(..., gt=0, description="L1 budget per trial")
    trials: int = Field(..., ge=1, description="Number of independent trials")
    seed: int = Field(0, ge=0, lt=2**64, description="Master seed of the run")
    workers: int = Field(1, ge=1, description="Concurrent trial workers")
    probes: int = Field(
        64, ge=0, description="Random probes outside X checked per trial"
    )
    max_figures: int = Field(1, ge=0, description="SVG figures written per run")
    max_refinements: int = Field(12, ge=0, le=30)
    max_grid_nodes: int = Field(2500, ge=1)
    output_dir: Optional[str] = Field(
        None, description=f"Report directory (defaults to ${OUTPUT_DIR_ENV})"
    )

    field: FieldDescription
    oracle: OracleKind = Field(default_factory=OracleKind)
    nu: SizeDistribution
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    budget_split: BudgetSplit = Field(default_factory=BudgetSplit)

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        json_schema_extra={
            "example": {
                "d": 1,
                "epsilon": 0.1,
                "trials": 10,
                "seed": 42,
                "field": {"base": "identity", "params": {}, "integrable": True},
                "oracle": {"oracle": "strip_exceptions"},
                "nu": {"kind": "poisson", "mean": 3.0},
                "quadrature": {"method": "monte_carlo", "samples": 20000, "seed": 7},
            }
        },
    )

    @property
    def is_adversarial(self) -> bool:
        return self.oracle.tag is OracleTag.ADVERSARIAL

    def resolved_output_dir(self) -> str:
        return self.output_dir or default_output_dir()

    def predictor_config(self) -> PredictorConfig:
        """Predictor settings derived from this experiment."""
        return PredictorConfig(
            epsilon=self.epsilon,
            budget_split=self.budget_split,
            oracle=self.oracle,
            quadrature=self.quadrature,
            max_refinements=self.max_refinements,
            max_grid_nodes=self.max_grid_nodes,
        )
