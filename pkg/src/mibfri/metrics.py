"""Confusion matrix and the six binary performance metrics, with Abnormal as
the positive class."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .engine import Label


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self):
        for name in ("tp", "tn", "fp", "fn"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class MetricsReport:
    """Each field is a rate in [0, 1], or None when its denominator is zero."""

    sensitivity: float | None
    specificity: float | None
    precision: float | None
    fpr: float | None
    fnr: float | None
    accuracy: float | None

    def as_dict(self) -> dict[str, float | None]:
        return {
            "sensitivity": self.sensitivity,
            "specificity": self.specificity,
            "precision": self.precision,
            "fpr": self.fpr,
            "fnr": self.fnr,
            "accuracy": self.accuracy,
        }


def confusion(predicted: Sequence[Label], actual: Sequence[Label]) -> ConfusionMatrix:
    if len(predicted) != len(actual):
        raise ValueError(
            f"predicted and actual differ in length: {len(predicted)} vs {len(actual)}"
        )
    if not predicted:
        raise ValueError("cannot score an empty prediction list")
    tp = tn = fp = fn = 0
    for p, a in zip(predicted, actual):
        if a is Label.ABNORMAL:
            if p is Label.ABNORMAL:
                tp += 1
            else:
                fn += 1
        else:
            if p is Label.ABNORMAL:
                fp += 1
            else:
                tn += 1
    return ConfusionMatrix(tp=tp, tn=tn, fp=fp, fn=fn)


def metrics(cm: ConfusionMatrix) -> MetricsReport:
    """TPR, SPC, PPV, FPR, FNR and ACC from the counts. The two rate pairs are
    computed as exact complements so sensitivity+fnr and specificity+fpr sum
    to 1.0 whenever defined."""
    sensitivity = cm.tp / (cm.tp + cm.fn) if (cm.tp + cm.fn) else None
    specificity = cm.tn / (cm.fp + cm.tn) if (cm.fp + cm.tn) else None
    precision = cm.tp / (cm.tp + cm.fp) if (cm.tp + cm.fp) else None
    fnr = 1.0 - sensitivity if sensitivity is not None else None
    fpr = 1.0 - specificity if specificity is not None else None
    accuracy = (cm.tp + cm.tn) / cm.total if cm.total else None
    return MetricsReport(
        sensitivity=sensitivity,
        specificity=specificity,
        precision=precision,
        fpr=fpr,
        fnr=fnr,
        accuracy=accuracy,
    )
