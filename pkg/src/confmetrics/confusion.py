"""Confusion-count estimation for a window of scored binary predictions.

Given predicted labels and calibrated confidence scores, the number of true
positives among the positive predictions is a Poisson binomial variable with
the positive-prediction scores as parameters, and the number of true
negatives among the negative predictions is Poisson binomial in the score
complements.  False positives and false negatives follow as count
complements.  All operations are pure and deterministic.

A batch may contain records with the same score but different predicted
labels; such batches are accepted as-is, even though the theoretical
guarantees assume the predicted label is a function of the score.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .distribution import DiscreteDistribution, complement_count, poisson_binomial_dp

__all__ = [
    "PredictionRecord",
    "PredictionBatch",
    "ConfusionEstimate",
    "FrequencyEstimates",
    "estimate_confusion",
    "frequency_estimates",
]


@dataclass(frozen=True)
class PredictionRecord:
    """One monitored prediction: a hard label, its calibrated score, and
    optionally the ground-truth label."""

    predicted_label: int
    score: float
    true_label: int | None = None

    def __post_init__(self):
        if self.predicted_label not in (0, 1):
            raise ValueError(f"predicted_label must be 0 or 1, got {self.predicted_label!r}")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must lie in [0, 1], got {self.score!r}")
        if self.true_label is not None and self.true_label not in (0, 1):
            raise ValueError(f"true_label must be 0, 1 or absent, got {self.true_label!r}")


class PredictionBatch:
    """An ordered monitoring window of predictions.

    Wraps the records and exposes them as numpy arrays.  ``labels`` is None
    unless every record carries a true label.
    """

    def __init__(self, records: Iterable[PredictionRecord]):
        self._records = tuple(records)
        n = len(self._records)
        self._predictions = np.fromiter(
            (r.predicted_label for r in self._records), dtype=np.int8, count=n
        )
        self._scores = np.fromiter(
            (r.score for r in self._records), dtype=np.float64, count=n
        )
        if n and all(r.true_label is not None for r in self._records):
            self._labels = np.fromiter(
                (r.true_label for r in self._records), dtype=np.int8, count=n
            )
        else:
            self._labels = None
        self._predictions.flags.writeable = False
        self._scores.flags.writeable = False
        if self._labels is not None:
            self._labels.flags.writeable = False

    @classmethod
    def from_arrays(
        cls,
        predictions: Sequence[int] | np.ndarray,
        scores: Sequence[float] | np.ndarray,
        labels: Sequence[int] | np.ndarray | None = None,
    ) -> "PredictionBatch":
        predictions = np.asarray(predictions)
        scores = np.asarray(scores, dtype=np.float64)
        if predictions.shape != scores.shape:
            raise ValueError("predictions and scores must have equal length")
        if labels is None:
            labels = [None] * len(scores)
        else:
            labels = np.asarray(labels)
            if labels.shape != scores.shape:
                raise ValueError("labels must match predictions in length")
        return cls(
            PredictionRecord(int(p), float(s), None if y is None else int(y))
            for p, s, y in zip(predictions, scores, labels)
        )

    @property
    def records(self) -> tuple[PredictionRecord, ...]:
        return self._records

    @property
    def predictions(self) -> np.ndarray:
        return self._predictions

    @property
    def scores(self) -> np.ndarray:
        return self._scores

    @property
    def labels(self) -> np.ndarray | None:
        return self._labels

    @property
    def n(self) -> int:
        return len(self._records)

    @property
    def n_pos(self) -> int:
        return int(np.count_nonzero(self._predictions == 1))

    @property
    def n_neg(self) -> int:
        return self.n - self.n_pos

    @property
    def positive_scores(self) -> np.ndarray:
        return self._scores[self._predictions == 1]

    @property
    def negative_scores(self) -> np.ndarray:
        return self._scores[self._predictions == 0]

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[PredictionRecord]:
        return iter(self._records)

    def __getitem__(self, index: slice) -> "PredictionBatch":
        if not isinstance(index, slice):
            raise TypeError("batches slice into batches; use .records for items")
        return PredictionBatch(self._records[index])

    def __repr__(self) -> str:
        return (
            f"PredictionBatch(n={self.n}, n_pos={self.n_pos}, "
            f"labelled={self._labels is not None})"
        )


@dataclass(frozen=True)
class ConfusionEstimate:
    """Count distributions and point estimates for the four confusion cells.

    ``dist_fp`` is the count complement of ``dist_tp`` over the positive
    predictions, and ``dist_fn`` the complement of ``dist_tn`` over the
    negative ones.  Point estimates are the distribution means: sums of
    scores or score complements over the matching prediction side.
    """

    dist_tp: DiscreteDistribution
    dist_fp: DiscreteDistribution
    dist_tn: DiscreteDistribution
    dist_fn: DiscreteDistribution
    e_tp: float
    e_fp: float
    e_tn: float
    e_fn: float
    n_pos: int
    n_neg: int


@dataclass(frozen=True)
class FrequencyEstimates:
    """Relative-frequency estimates for the confusion cells.

    ``tpf``/``fpf`` are None when the window has no positive predictions and
    ``fnf``/``tnf`` when it has no negative ones; the split of a prediction
    side into frequencies is undefined on an empty side.
    """

    tpf: float | None
    fpf: float | None
    fnf: float | None
    tnf: float | None


def _require_nonempty(batch: PredictionBatch) -> None:
    if batch.n == 0:
        raise ValueError("estimation needs a nonempty batch")


def estimate_confusion(batch: PredictionBatch) -> ConfusionEstimate:
    """Estimate the confusion-count distributions for one window.

    A side with no predictions yields point masses at zero for its counts.
    """
    _require_nonempty(batch)
    pos = batch.positive_scores
    neg = batch.negative_scores
    n_pos = pos.size
    n_neg = neg.size
    dist_tp = poisson_binomial_dp(pos)
    dist_tn = poisson_binomial_dp(1.0 - neg)
    e_tp = float(pos.sum())
    e_fn = float(neg.sum())
    return ConfusionEstimate(
        dist_tp=dist_tp,
        dist_fp=complement_count(dist_tp, n_pos),
        dist_tn=dist_tn,
        dist_fn=complement_count(dist_tn, n_neg),
        e_tp=e_tp,
        e_fp=n_pos - e_tp,
        e_tn=n_neg - e_fn,
        e_fn=e_fn,
        n_pos=n_pos,
        n_neg=n_neg,
    )


def frequency_estimates(batch: PredictionBatch) -> FrequencyEstimates:
    """Mean-score frequency estimates for the confusion cells."""
    _require_nonempty(batch)
    pos = batch.positive_scores
    neg = batch.negative_scores
    s_pos = float(pos.mean()) if pos.size else None
    s_neg = float(neg.mean()) if neg.size else None
    return FrequencyEstimates(
        tpf=s_pos,
        fpf=None if s_pos is None else 1.0 - s_pos,
        fnf=s_neg,
        tnf=None if s_neg is None else 1.0 - s_neg,
    )
