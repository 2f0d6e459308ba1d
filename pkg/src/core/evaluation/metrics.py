"""
Detection metrics: rank-based AUC, thresholded precision/recall/F1 and
best-F1 threshold selection.

Scores are passed as (score, label) pairs with labels in {0, 1}. A window is
predicted anomalous iff its score is >= the threshold.
"""
from typing import Iterable

import numpy as np
from scipy.stats import rankdata

from src.core.exceptions import MetricError
from src.models.reports import MetricsReport

ScorePairs = Iterable[tuple[float, int]]


def _split(pairs: ScorePairs) -> tuple[np.ndarray, np.ndarray]:
    pairs = list(pairs)
    scores = np.array([s for s, _ in pairs], dtype=np.float64)
    labels = np.array([int(y) for _, y in pairs], dtype=np.int64)
    return scores, labels


def _require_two_classes(labels: np.ndarray, what: str) -> tuple[int, int]:
    n_pos = int(labels.sum())
    n_neg = int(labels.size - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise MetricError(f"{what} needs at least one positive and one negative (got {n_pos}/{n_neg})")
    return n_pos, n_neg


def auc(pairs: ScorePairs) -> float:
    """
    Mann-Whitney AUC with midranks.

    Equals the fraction of correctly ordered positive/negative pairs, ties
    counting one half.

    Raises:
        MetricError: If only one class is present
    """
    scores, labels = _split(pairs)
    n_pos, n_neg = _require_two_classes(labels, "AUC")
    ranks = rankdata(scores, method="average")
    u = ranks[labels == 1].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))


def _confusion(scores: np.ndarray, labels: np.ndarray, threshold: float) -> tuple[int, int, int, int]:
    predicted = scores >= threshold
    positive = labels == 1
    tp = int(np.sum(predicted & positive))
    fp = int(np.sum(predicted & ~positive))
    fn = int(np.sum(~predicted & positive))
    tn = int(np.sum(~predicted & ~positive))
    return tp, fp, tn, fn


def _report(tp: int, fp: int, tn: int, fn: int, threshold: float,
            model: str, auc_value: float | None = None) -> MetricsReport:
    predicted_pos = tp + fp
    precision = tp / predicted_pos if predicted_pos else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return MetricsReport(
        model=model,
        auc=auc_value,
        precision=precision,
        recall=recall,
        f1=f1,
        threshold=threshold,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        n_pos=tp + fn,
        n_neg=fp + tn,
        precision_undefined=predicted_pos == 0,
    )


def prf_at(pairs: ScorePairs, threshold: float, model: str = "ours") -> MetricsReport:
    """
    Precision, recall and F1 at a threshold (AUC left unset).

    Precision is 0 when nothing is predicted positive; the report flags it.
    """
    scores, labels = _split(pairs)
    return _report(*_confusion(scores, labels, threshold), threshold=threshold, model=model)


def evaluate(pairs: ScorePairs, threshold: float, model: str = "ours") -> MetricsReport:
    """AUC plus precision/recall/F1 at ``threshold`` in one report."""
    pairs = list(pairs)
    scores, labels = _split(pairs)
    return _report(*_confusion(scores, labels, threshold), threshold=threshold,
                   model=model, auc_value=auc(pairs))


def best_f1_threshold(pairs: ScorePairs) -> float:
    """
    Threshold maximizing F1 over all distinct-score midpoints plus {0, 1}.

    Ties go to the larger threshold.

    Raises:
        MetricError: If only one class is present
    """
    scores, labels = _split(pairs)
    n_pos, _ = _require_two_classes(labels, "best-F1 threshold")

    distinct = np.unique(scores)
    candidates = np.unique(np.concatenate(([0.0, 1.0], (distinct[:-1] + distinct[1:]) / 2.0)))

    pos_sorted = np.sort(scores[labels == 1])
    neg_sorted = np.sort(scores[labels == 0])
    tp = pos_sorted.size - np.searchsorted(pos_sorted, candidates, side="left")
    fp = neg_sorted.size - np.searchsorted(neg_sorted, candidates, side="left")
    fn = n_pos - tp
    f1 = 2.0 * tp / (2.0 * tp + fp + fn)

    best = len(candidates) - 1 - int(np.argmax(f1[::-1]))
    return float(candidates[best])
