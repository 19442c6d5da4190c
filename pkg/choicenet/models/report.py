"""Experiment report and verification summary models."""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from .approximation import ApproxCertificate
from .experiment_config import ExperimentConfig
from .network_document import NetworkDocument
from .quadrature import QuadratureEstimate


class PointRecord(BaseModel):
    """Prediction at one hidden point k of X."""

    trial: int = Field(..., ge=0)
    point: List[float] = Field(..., description="Coordinates of k")
    predicted: float = Field(..., description="Network output at k")
    hidden_truth: float = Field(..., description="Label at the point before masking")
    abs_error: float = Field(..., ge=0, description="|predicted - hidden_truth|")
    passed: bool = Field(..., description="abs_error <= 1e-9 * max(1, |hidden_truth|)")


class NetworkSummary(BaseModel):
    """Shape of an assembled network."""

    depth: int = Field(..., ge=1, description="Number of affine layers L")
    widths: List[int] = Field(..., description="Input dimension, then the width of every layer")
    parameters: int = Field(..., ge=0, description="Weights plus biases")


class HitRecord(BaseModel):
    """A point of X that lies in the oracle's disagreement set."""

    trial: int = Field(..., ge=0)
    point: List[float]


class TrialSummary(BaseModel):
    """Outcome of one trial: sample, mask, fit, then both checks."""

    trial: int = Field(..., ge=0, description="Trial index")
    status: Literal["ok", "failed"] = "ok"
    error: Optional[str] = Field(None, description="Error message of a failed trial")
    set_size: int = Field(0, ge=0, description="|X| after duplicates collapsed")
    n_star: Optional[int] = Field(None, description="Shared spike resolution")
    active_spikes: int = Field(0, ge=0, description="Spikes with nonzero residual")
    certificate: Optional[ApproxCertificate] = None
    points: List[PointRecord] = Field(default_factory=list)
    exactness_max_error: Optional[float] = Field(
        None, description="Largest test-point error on X (None when X is empty)"
    )
    exactness_passed: bool = True
    hits: List[List[float]] = Field(
        default_factory=list, description="Points of X in the disagreement set"
    )
    l1_estimate: Optional[QuadratureEstimate] = Field(
        None, description="L1 distance between the network and the base function"
    )
    l1_passed: Optional[bool] = Field(
        None, description="upper_confidence < epsilon (None for non-integrable bases)"
    )
    probe_count: int = Field(0, ge=0)
    probe_agreement: Optional[float] = Field(
        None, description="Share of probes outside X where L reproduces y"
    )
    network_summary: Optional[NetworkSummary] = None
    network: Optional[NetworkDocument] = None


class AggregateStats(BaseModel):
    """Run-level statistics over all trials."""

    trials: int = Field(..., ge=0)
    failed_trials: List[int] = Field(default_factory=list)
    max_test_point_error: Optional[float] = None
    max_l1_upper_confidence: Optional[float] = None
    exactness_failures: List[int] = Field(
        default_factory=list, description="Trials where a hidden label was not reproduced"
    )
    l1_failures: List[int] = Field(default_factory=list)
    hit_trials: List[int] = Field(
        default_factory=list, description="Trials whose X hit the disagreement set"
    )
    hit_log: List[HitRecord] = Field(default_factory=list)


class RunTiming(BaseModel):
    """Wall-clock data; excluded from determinism comparisons."""

    started_at: str
    wall_clock_seconds: float = Field(..., ge=0)


class ExperimentReport(BaseModel):
    """Self-contained record of a run."""

    tool_version: str
    config: ExperimentConfig
    trials: List[TrialSummary]
    aggregate: AggregateStats
    timing: RunTiming

    model_config = ConfigDict(extra="forbid")


class AssertionResult(BaseModel):
    """One re-checked assertion of a report."""

    name: str = Field(
        ..., description="exactness, l1_budget, hit_log, completed or adversarial_cross_check"
    )
    trial: Optional[int] = None
    passed: bool
    adversarial: bool = Field(
        False, description="Exactness under an adversarial oracle; judged by the cross-check instead"
    )
    detail: str = ""


class VerificationSummary(BaseModel):
    """Result of re-verifying a report file."""

    report_path: str
    checked_trials: int = Field(..., ge=0)
    assertions: List[AssertionResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True iff every non-adversarial assertion passed."""
        return all(a.passed for a in self.assertions if not a.adversarial)

    @property
    def failures(self) -> List[AssertionResult]:
        return [a for a in self.assertions if not a.passed]
