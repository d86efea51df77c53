"""Metric distributions and point estimates derived from confusion counts.

Each metric (accuracy, precision, recall, F1) becomes a finite distribution
over exact rational values by pushing the confusion-count distributions
through the metric formula.  Accuracy and precision are plain rescalings of
a single count distribution.  Recall and F1 need the joint of the true
positive and false negative counts; the counts are independent, so the joint
is the product of the marginals and the derivation walks all count pairs,
accumulating probability on the reduced fraction each pair maps to.  That
walk is O(n^2) pairs; the accumulation is order-independent, so the result
does not depend on iteration order.

Point estimates are distribution means.  The shortcut estimators compute the
mean without materialising a distribution: exactly for accuracy and
precision, and with an O(1/sqrt(n)) approximation error for recall and F1.
As a rule of thumb, derive full distributions for windows below ~500 records
(they also provide intervals) and use shortcuts above.

Undefined metrics (precision and F1 of a window with no positive
predictions, the recall shortcut when every score is zero) are returned as
None rather than raised, so report assembly never aborts.  Inside a derived
distribution, the event "no true positives and no false negatives" puts its
mass on recall = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .confusion import ConfusionEstimate, PredictionBatch, estimate_confusion
from .distribution import (
    DiscreteDistribution,
    dense_count_probabilities,
    poisson_binomial_dp,
)
from .intervals import HdiInterval, hdi

__all__ = [
    "METRICS",
    "MetricEstimate",
    "accuracy_distribution",
    "precision_distribution",
    "recall_distribution",
    "f1_distribution",
    "shortcut_accuracy",
    "shortcut_precision",
    "shortcut_recall",
    "shortcut_f1",
    "estimate_all",
]

METRICS = ("accuracy", "precision", "recall", "f1")


@dataclass(frozen=True)
class MetricEstimate:
    """Estimate of one metric on one window.

    ``point`` is None when the metric is undefined on the window.  The full
    distribution and interval are attached only by the exact method.
    """

    metric: str
    method: str
    point: float | None
    distribution: DiscreteDistribution | None = None
    hdi: HdiInterval | None = None

    @property
    def undefined(self) -> bool:
        return self.point is None


def _require_nonempty(batch: PredictionBatch) -> None:
    if batch.n == 0:
        raise ValueError("estimation needs a nonempty batch")


def _correctness_probabilities(batch: PredictionBatch) -> np.ndarray:
    # Probability each individual prediction is correct: the score for
    # positive predictions, its complement for negative ones.
    return np.where(batch.predictions == 1, batch.scores, 1.0 - batch.scores)


def _scaled_counts(counts: DiscreteDistribution, denominator: int) -> DiscreteDistribution:
    """Divide an integer count distribution by a fixed positive denominator."""
    nums = np.fromiter((n for n, _, _ in counts.ratios()), dtype=np.int64, count=len(counts))
    dens = np.full(nums.size, denominator, dtype=np.int64)
    g = np.gcd(nums, dens)
    return DiscreteDistribution._from_ratio_arrays(nums // g, dens // g, counts.probabilities)


def _aggregate_ratio_masses(
    nums: np.ndarray,
    dens: np.ndarray,
    masses: np.ndarray,
    extras: list[tuple[int, int, float]],
) -> DiscreteDistribution:
    """Sum probability masses that land on the same reduced fraction.

    ``nums``/``dens``/``masses`` are flat arrays of unreduced ratios with
    their probabilities; ``extras`` are additional exact (num, den, mass)
    entries merged through the same reduction.
    """
    if extras:
        nums = np.concatenate([nums, np.array([e[0] for e in extras], dtype=np.int64)])
        dens = np.concatenate([dens, np.array([e[1] for e in extras], dtype=np.int64)])
        masses = np.concatenate([masses, np.array([e[2] for e in extras])])
    g = np.gcd(nums, dens)
    nums = nums // g
    dens = dens // g
    # Reduced denominators are bounded, so a linear code uniquely keys a pair.
    width = int(dens.max()) + 1
    codes = nums * width + dens
    unique_codes, inverse = np.unique(codes, return_inverse=True)
    probs = np.bincount(inverse, weights=masses, minlength=unique_codes.size)
    u_nums = unique_codes // width
    u_dens = unique_codes % width
    order = np.argsort(u_nums / u_dens, kind="stable")
    return DiscreteDistribution._from_ratio_arrays(
        u_nums[order], u_dens[order], probs[order]
    )


def accuracy_distribution(batch: PredictionBatch) -> DiscreteDistribution:
    """Distribution of the fraction of correct predictions in the window.

    The number of correct predictions is Poisson binomial in the per-record
    correctness probabilities; dividing by the window size gives accuracy.
    """
    _require_nonempty(batch)
    counts = poisson_binomial_dp(_correctness_probabilities(batch))
    return _scaled_counts(counts, batch.n)


def precision_distribution(est: ConfusionEstimate) -> DiscreteDistribution | None:
    """Distribution of the true-positive count over the number of positive
    predictions; None when the window has no positive predictions."""
    if est.n_pos == 0:
        return None
    return _scaled_counts(est.dist_tp, est.n_pos)


def recall_distribution(est: ConfusionEstimate) -> DiscreteDistribution:
    """Distribution of TP / (TP + FN) over the joint count distribution.

    All mass with zero true positives lands on recall = 0, including the
    corner where false negatives are also zero.  Zero false negatives with
    at least one true positive lands on recall = 1.  Every remaining count
    pair (i, j) contributes its joint probability to the value i / (i + j).
    """
    p_tp = dense_count_probabilities(est.dist_tp, est.n_pos)
    p_fn = dense_count_probabilities(est.dist_fn, est.n_neg)
    mass_at_zero = float(p_tp[0])
    mass_at_one = float(p_fn[0] * (1.0 - p_tp[0]))
    i = np.arange(1, est.n_pos + 1, dtype=np.int64)
    j = np.arange(1, est.n_neg + 1, dtype=np.int64)
    nums = np.broadcast_to(i[:, None], (i.size, j.size)).ravel()
    dens = (i[:, None] + j[None, :]).ravel()
    masses = np.outer(p_tp[1:], p_fn[1:]).ravel()
    return _aggregate_ratio_masses(
        nums, dens, masses, extras=[(0, 1, mass_at_zero), (1, 1, mass_at_one)]
    )


def f1_distribution(est: ConfusionEstimate) -> DiscreteDistribution | None:
    """Distribution of 2*TP / (TP + FN + n_pos); None without positive
    predictions.

    Zero true positives put their whole mass on F1 = 0; every count pair
    (i >= 1, j >= 0) contributes to the value 2i / (i + j + n_pos).
    """
    if est.n_pos == 0:
        return None
    p_tp = dense_count_probabilities(est.dist_tp, est.n_pos)
    p_fn = dense_count_probabilities(est.dist_fn, est.n_neg)
    mass_at_zero = float(p_tp[0])
    i = np.arange(1, est.n_pos + 1, dtype=np.int64)
    j = np.arange(0, est.n_neg + 1, dtype=np.int64)
    nums = np.broadcast_to(2 * i[:, None], (i.size, j.size)).ravel()
    dens = (i[:, None] + j[None, :] + est.n_pos).ravel()
    masses = np.outer(p_tp[1:], p_fn).ravel()
    return _aggregate_ratio_masses(nums, dens, masses, extras=[(0, 1, mass_at_zero)])


def shortcut_accuracy(batch: PredictionBatch) -> float:
    """Mean correctness probability; identical to the mean of
    :func:`accuracy_distribution`."""
    _require_nonempty(batch)
    return float(_correctness_probabilities(batch).mean())


def shortcut_precision(batch: PredictionBatch) -> float | None:
    """Mean positive-prediction score; identical to the mean of
    :func:`precision_distribution`.  None without positive predictions."""
    _require_nonempty(batch)
    pos = batch.positive_scores
    if pos.size == 0:
        return None
    return float(pos.mean())


def shortcut_recall(batch: PredictionBatch) -> float | None:
    """Approximate expected recall: positive-prediction score sum over the
    total score sum.  None when every score is zero.

    The approximation error decays as O(1/sqrt(n)) with the window size.
    """
    _require_nonempty(batch)
    total = float(batch.scores.sum())
    if total <= 0.0:
        return None
    return float(batch.positive_scores.sum()) / total


def shortcut_f1(batch: PredictionBatch) -> float | None:
    """Approximate expected F1: 2 * positive score sum over (total score sum
    + positive prediction count).  None without positive predictions.

    Same O(1/sqrt(n)) error decay as :func:`shortcut_recall`.
    """
    _require_nonempty(batch)
    n_pos = batch.n_pos
    if n_pos == 0:
        return None
    return 2.0 * float(batch.positive_scores.sum()) / (float(batch.scores.sum()) + n_pos)


def _exact_estimate(
    metric: str,
    batch: PredictionBatch,
    est: ConfusionEstimate,
    alpha: float | None,
) -> MetricEstimate:
    if metric == "accuracy":
        dist = accuracy_distribution(batch)
    elif metric == "precision":
        dist = precision_distribution(est)
    elif metric == "recall":
        dist = recall_distribution(est)
    else:
        dist = f1_distribution(est)
    if dist is None:
        return MetricEstimate(metric=metric, method="exact", point=None)
    return MetricEstimate(
        metric=metric,
        method="exact",
        point=dist.expectation(),
        distribution=dist,
        hdi=None if alpha is None else hdi(dist, alpha),
    )


_SHORTCUTS = {
    "accuracy": shortcut_accuracy,
    "precision": shortcut_precision,
    "recall": shortcut_recall,
    "f1": shortcut_f1,
}


def estimate_all(
    batch: PredictionBatch,
    metrics: tuple[str, ...] = METRICS,
    method: str = "exact",
    alpha: float | None = None,
) -> list[MetricEstimate]:
    """Estimate the requested metrics on one window.

    The exact method attaches full distributions, and highest-density
    intervals when ``alpha`` is given; the shortcut method attaches points
    only.  Undefined metrics come back as estimates with ``point=None``
    rather than aborting the window.
    """
    _require_nonempty(batch)
    if method not in ("exact", "shortcut"):
        raise ValueError(f"method must be 'exact' or 'shortcut', got {method!r}")
    unknown = [m for m in metrics if m not in METRICS]
    if unknown:
        raise ValueError(f"unknown metrics requested: {unknown}")
    if alpha is not None and not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    if method == "shortcut":
        return [
            MetricEstimate(metric=m, method="shortcut", point=_SHORTCUTS[m](batch))
            for m in metrics
        ]
    est = estimate_confusion(batch)
    return [_exact_estimate(m, batch, est, alpha) for m in metrics]
