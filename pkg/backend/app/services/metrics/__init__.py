"""FIT scoring, normalization and aggregation."""

from backend.app.services.metrics.scores import FitScore, NormalizedPair, fit_score, normalize_pair
from backend.app.services.metrics.summary import BoxplotSummary, aggregate

__all__ = [
    "BoxplotSummary",
    "FitScore",
    "NormalizedPair",
    "aggregate",
    "fit_score",
    "normalize_pair",
]
