"""Network-valued predictor and its label-map wrapper."""

from .predictor import (
    PointPrediction,
    PredictedLabels,
    PredictionOutcome,
    exactness_passed,
    exactness_tolerance,
    fit,
    predict_labels,
)

__all__ = [
    "PointPrediction",
    "PredictedLabels",
    "PredictionOutcome",
    "exactness_passed",
    "exactness_tolerance",
    "fit",
    "predict_labels",
]
