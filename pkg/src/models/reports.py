"""
Evaluation report types: per-model metrics and hyperparameter sweeps.
"""
from typing import Optional, Union

from pydantic import BaseModel, model_validator


class MetricsReport(BaseModel):
    """
    AUC plus thresholded precision/recall/F1 and the confusion counts behind them.

    ``auc`` is None when it was not computed (e.g. a bare threshold sweep).
    ``precision_undefined`` flags the zero-predicted-positives convention.
    """

    model: str = "ours"
    auc: Optional[float] = None
    precision: float
    recall: float
    f1: float
    threshold: float
    tp: int
    fp: int
    tn: int
    fn: int
    n_pos: int
    n_neg: int
    precision_undefined: bool = False

    @model_validator(mode="after")
    def _check_counts(self):
        if self.tp + self.fn != self.n_pos or self.fp + self.tn != self.n_neg:
            raise ValueError("confusion counts disagree with class totals")
        for name in ("auc", "precision", "recall", "f1"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        return self

    @property
    def total(self) -> int:
        return self.n_pos + self.n_neg


class SweepEntry(BaseModel):
    """One trained configuration in a sweep."""

    value: Union[int, float]
    report: MetricsReport


class SweepResult(BaseModel):
    """
    Test metrics per swept hyperparameter value.

    ``best`` is the value with the highest AUC (first one wins ties).
    """

    parameter: str = "h"
    entries: list[SweepEntry] = []
    best: Optional[Union[int, float]] = None

    @model_validator(mode="after")
    def _check_order(self):
        values = [e.value for e in self.entries]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        return self
