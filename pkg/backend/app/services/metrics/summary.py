"""Boxplot statistics of Monte Carlo FIT scores."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Union

import numpy as np

from backend.app.errors import DomainError
from backend.app.services.metrics.scores import FitScore

WHISKER_IQR = 1.5


@dataclass
class BoxplotSummary:
    """Median, quartiles and Tukey whiskers of one group of scores."""

    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    count: int
    mean: float
    outliers: List[float] = field(default_factory=list)

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def aggregate(scores: Iterable[Union[FitScore, float]]) -> BoxplotSummary:
    """
    Summarize a group of FIT values.

    Quartiles use midpoint interpolation; whiskers end at the most extreme
    values within 1.5 IQR of the box, anything beyond is an outlier.

    Raises:
        DomainError: the group is empty
    """
    values = np.sort(np.array([float(s) for s in scores], dtype=float))
    if values.size == 0:
        raise DomainError("Cannot aggregate an empty group of scores")

    q1, median, q3 = np.quantile(values, [0.25, 0.5, 0.75], method="midpoint")
    low_fence = q1 - WHISKER_IQR * (q3 - q1)
    high_fence = q3 + WHISKER_IQR * (q3 - q1)
    inside = values[(values >= low_fence) & (values <= high_fence)]
    outliers = values[(values < low_fence) | (values > high_fence)]

    return BoxplotSummary(
        median=float(median),
        q1=float(q1),
        q3=float(q3),
        whisker_low=float(inside.min()),
        whisker_high=float(inside.max()),
        count=int(values.size),
        mean=float(values.mean()),
        outliers=[float(v) for v in outliers],
    )
