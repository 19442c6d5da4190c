"""Pydantic models for every external choicenet document."""

from .approximation import ApproxCertificate, ApproxStrategy
from .experiment_config import OUTPUT_DIR_ENV, ExperimentConfig, default_output_dir
from .field_description import ExceptionEntry, FieldDescription
from .network_document import LayerDocument, NetworkDocument
from .oracle import OracleKind, OracleTag
from .predictor_config import BudgetSplit, PredictorConfig
from .quadrature import QuadratureEstimate, QuadratureMethod, QuadratureSettings
from .report import (
    AggregateStats,
    AssertionResult,
    ExperimentReport,
    HitRecord,
    NetworkSummary,
    PointRecord,
    RunTiming,
    TrialSummary,
    VerificationSummary,
)
from .size_distribution import SizeDistribution, SizeKind

__all__ = [
    "AggregateStats",
    "ApproxCertificate",
    "ApproxStrategy",
    "AssertionResult",
    "BudgetSplit",
    "ExceptionEntry",
    "ExperimentConfig",
    "ExperimentReport",
    "FieldDescription",
    "HitRecord",
    "LayerDocument",
    "NetworkDocument",
    "NetworkSummary",
    "OUTPUT_DIR_ENV",
    "OracleKind",
    "OracleTag",
    "PointRecord",
    "PredictorConfig",
    "QuadratureEstimate",
    "QuadratureMethod",
    "QuadratureSettings",
    "RunTiming",
    "SizeDistribution",
    "SizeKind",
    "TrialSummary",
    "VerificationSummary",
    "default_output_dir",
]
