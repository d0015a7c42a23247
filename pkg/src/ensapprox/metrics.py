"""Classification metric suite and cross-method ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import validation

METRIC_ORDER = ("accuracy", "precision", "recall", "f1", "mse", "mae", "r2")
LOWER_IS_BETTER = frozenset({"mse", "mae"})


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    mse: float
    mae: float
    r2: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in METRIC_ORDER}


@dataclass(frozen=True)
class RankedTable:
    """Per-metric competition ranks (ties share a rank, the next is skipped)."""

    methods: tuple[str, ...]
    per_metric: dict[str, dict[str, int]]
    average: dict[str, float]


def compute_metrics(predictions, truth) -> MetricsReport:
    """All seven metrics of a label sequence against the ground truth.

    Precision, recall and F1 are macro-averaged over the union of labels
    seen in either sequence; a class with an empty denominator scores 0.
    MSE, MAE and R2 treat the labels as integers, with R2 measured against
    the truth-mean baseline.
    """
    pred = validation.as_label_vector(predictions, "predictions")
    true = validation.as_label_vector(truth, "truth")
    validation.check_consistent_length(pred, true, "predictions, truth")
    accuracy = float(np.mean(pred == true))
    precisions, recalls, f1s = [], [], []
    for label in np.unique(np.concatenate([true, pred])):
        tp = int(np.sum((pred == label) & (true == label)))
        fp = int(np.sum((pred == label) & (true != label)))
        fn = int(np.sum((pred != label) & (true == label)))
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        precisions.append(p)
        recalls.append(r)
        f1s.append(2 * p * r / (p + r) if p + r else 0.0)
    diff = (pred - true).astype(float)
    mse = float(np.mean(diff**2))
    mae = float(np.mean(np.abs(diff)))
    sst = float(np.sum((true - true.mean()) ** 2))
    if sst == 0.0:
        r2 = 1.0 if mse == 0.0 else float("-inf")
    else:
        r2 = 1.0 - float(np.sum(diff**2)) / sst
    return MetricsReport(
        accuracy=accuracy,
        precision=float(np.mean(precisions)),
        recall=float(np.mean(recalls)),
        f1=float(np.mean(f1s)),
        mse=mse,
        mae=mae,
        r2=r2,
    )


def rank_methods(reports: Mapping[str, MetricsReport]) -> RankedTable:
    """Rank methods on each metric and average the ranks per method.

    A method's rank is 1 plus the number of strictly better methods, so
    equal values share a rank and the following rank is skipped.
    """
    if not reports:
        raise ValueError("rank_methods needs at least one report")
    methods = tuple(reports)
    per_metric: dict[str, dict[str, int]] = {}
    for metric in METRIC_ORDER:
        values = {m: getattr(reports[m], metric) for m in methods}
        if metric in LOWER_IS_BETTER:
            better = lambda a, b: a < b
        else:
            better = lambda a, b: a > b
        per_metric[metric] = {
            m: 1 + sum(better(values[o], values[m]) for o in methods) for m in methods
        }
    average = {
        m: sum(per_metric[metric][m] for metric in METRIC_ORDER) / len(METRIC_ORDER)
        for m in methods
    }
    return RankedTable(methods=methods, per_metric=per_metric, average=average)
