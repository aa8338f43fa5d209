"""Classification metrics: accuracy, confusion counts, RMSE, MAPE, ROC/AUC.

Error metrics operate on the numeric class labels {1, 2} themselves, and MAPE
divides by the actual value, so it is deliberately not symmetric. Class 1
(liver patient) is the positive class throughout; ROC scores are oriented so
that higher means more class-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


def rmse(actual: Sequence[float], predicted: Sequence[float]) -> float:
    if len(actual) != len(predicted):
        raise ValueError(f"length mismatch: {len(actual)} vs {len(predicted)}")
    if len(actual) == 0:
        raise ValueError("rmse of empty input")
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    return float(np.sqrt(np.mean((a - p) ** 2)))


def mape(actual: Sequence[float], predicted: Sequence[float]) -> float:
    if len(actual) != len(predicted):
        raise ValueError(f"length mismatch: {len(actual)} vs {len(predicted)}")
    if len(actual) == 0:
        raise ValueError("mape of empty input")
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if np.any(a == 0):
        raise ValueError("mape undefined: actual value of 0")
    return float(np.mean(np.abs(a - p) / a))


def accuracy(labels: Sequence[int], predicted: Sequence[int]) -> float:
    if len(labels) != len(predicted):
        raise ValueError("length mismatch")
    if len(labels) == 0:
        raise ValueError("accuracy of empty input")
    hits = sum(1 for a, p in zip(labels, predicted) if a == p)
    return hits / len(labels)


def confusion_matrix(labels: Sequence[int], predicted: Sequence[int]) -> tuple[tuple[int, int], tuple[int, int]]:
    """2x2 counts, rows = actual class (1 then 2), columns = predicted."""
    counts = [[0, 0], [0, 0]]
    for a, p in zip(labels, predicted):
        counts[a - 1][p - 1] += 1
    return (tuple(counts[0]), tuple(counts[1]))


def roc_curve(labels: Sequence[int], scores: Sequence[float]) -> list[tuple[float, float]]:
    """(fpr, tpr) points swept over distinct score thresholds, ties grouped.

    Starts at (0, 0) and ends at (1, 1); class 1 is positive.
    """
    labels = np.asarray(labels, dtype=np.int64)
    scores = np.asarray(scores, dtype=np.float64)
    if labels.shape != scores.shape:
        raise ValueError("length mismatch")
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 2))
    if n_pos == 0 or n_neg == 0:
        raise ValueError("roc_curve requires both classes present")

    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_pos = (labels[order] == 1).astype(np.int64)

    points = [(0.0, 0.0)]
    tp = fp = 0
    i = 0
    n = len(labels)
    while i < n:
        j = i
        while j < n and sorted_scores[j] == sorted_scores[i]:
            j += 1
        tp += int(np.sum(sorted_pos[i:j]))
        fp += (j - i) - int(np.sum(sorted_pos[i:j]))
        points.append((fp / n_neg, tp / n_pos))
        i = j
    return points


def auc(points: Sequence[tuple[float, float]]) -> float:
    """Trapezoid-rule area under an ROC polyline."""
    area = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        area += (x1 - x0) * (y0 + y1) / 2.0
    return area


@dataclass(frozen=True)
class EvaluationReport:
    n: int
    accuracy: float
    confusion: tuple[tuple[int, int], tuple[int, int]]
    rmse: float
    mape: float
    roc: tuple[tuple[float, float], ...] | None
    auc: float | None

    def to_payload(self) -> dict:
        return {
            "n": self.n,
            "accuracy": self.accuracy,
            "confusion": [list(row) for row in self.confusion],
            "rmse": self.rmse,
            "mape": self.mape,
            "roc": None if self.roc is None else [list(p) for p in self.roc],
            "auc": self.auc,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "EvaluationReport":
        roc = payload.get("roc")
        return cls(
            n=payload["n"],
            accuracy=payload["accuracy"],
            confusion=tuple(tuple(row) for row in payload["confusion"]),
            rmse=payload["rmse"],
            mape=payload["mape"],
            roc=None if roc is None else tuple(tuple(p) for p in roc),
            auc=payload.get("auc"),
        )


def evaluate_predictions(labels: Sequence[int], predicted: Sequence[int], scores: Sequence[float]) -> EvaluationReport:
    """Bundle the standard metrics for one labeled evaluation set.

    ROC and AUC are omitted (None) when only one class is present, since the
    curve is undefined there.
    """
    labels = list(labels)
    predicted = list(predicted)
    roc_points: tuple[tuple[float, float], ...] | None
    try:
        roc_points = tuple(roc_curve(labels, scores))
        area = auc(roc_points)
    except ValueError:
        roc_points, area = None, None
    return EvaluationReport(
        n=len(labels),
        accuracy=accuracy(labels, predicted),
        confusion=confusion_matrix(labels, predicted),
        rmse=rmse([float(v) for v in labels], [float(v) for v in predicted]),
        mape=mape([float(v) for v in labels], [float(v) for v in predicted]),
        roc=roc_points,
        auc=area,
    )
