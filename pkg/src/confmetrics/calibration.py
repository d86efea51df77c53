"""Calibration measurement and calibration-faithful label sampling.

The adaptive calibration error sorts a labelled window by score, cuts it
into equal-mass bins, and averages the per-bin gap between mean score and
empirical positive rate.  Reverse sampling draws a label for each score from
Bernoulli(score), which makes the induced synthetic classifier calibrated by
construction up to sampling noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .confusion import PredictionBatch

__all__ = [
    "CalibrationBin",
    "CalibrationReport",
    "ace",
    "reverse_sample_labels",
    "threshold_predictions",
]

DEFAULT_NUM_BINS = 15


@dataclass(frozen=True)
class CalibrationBin:
    mean_score: float
    positive_rate: float
    count: int


@dataclass(frozen=True)
class CalibrationReport:
    """Adaptive calibration error and the equal-mass bins behind it."""

    ace: float
    bins: tuple[CalibrationBin, ...]


def _checked_scores(scores: Sequence[float] | np.ndarray) -> np.ndarray:
    arr = np.asarray(scores, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError("scores must form a one-dimensional sequence")
    bad = ~((arr >= 0.0) & (arr <= 1.0))
    if bad.any():
        i = int(np.argmax(bad))
        raise ValueError(f"score at index {i} outside [0, 1]: {float(arr[i])!r}")
    return arr


def ace(batch: PredictionBatch, num_bins: int = DEFAULT_NUM_BINS) -> CalibrationReport:
    """Adaptive (equal-mass binning) calibration error of a labelled window.

    Records are sorted by score, ties broken by original position, and split
    into ``num_bins`` contiguous bins whose sizes differ by at most one; any
    remainder is spread one record per bin starting from the lowest-score
    bin.  The reported error is the mean absolute per-bin gap between mean
    score and empirical positive rate.
    """
    labels = batch.labels
    if labels is None:
        raise ValueError("calibration error needs a true label on every record")
    n = batch.n
    if not 1 <= num_bins <= n:
        raise ValueError(f"num_bins must lie in [1, {n}], got {num_bins!r}")
    order = np.argsort(batch.scores, kind="stable")
    scores = batch.scores[order]
    positives = labels[order].astype(np.float64)
    base, remainder = divmod(n, num_bins)
    sizes = np.full(num_bins, base, dtype=np.int64)
    sizes[:remainder] += 1
    bins = []
    gaps = np.empty(num_bins, dtype=np.float64)
    start = 0
    for k, size in enumerate(sizes):
        stop = start + int(size)
        mean_score = float(scores[start:stop].mean())
        positive_rate = float(positives[start:stop].mean())
        gaps[k] = abs(mean_score - positive_rate)
        bins.append(CalibrationBin(mean_score, positive_rate, int(size)))
        start = stop
    return CalibrationReport(ace=float(gaps.mean()), bins=tuple(bins))


def reverse_sample_labels(scores: Sequence[float] | np.ndarray, seed) -> np.ndarray:
    """Draw one label per score from Bernoulli(score), deterministically for
    a given seed."""
    arr = _checked_scores(scores)
    rng = np.random.default_rng(seed)
    return (rng.random(arr.size) < arr).astype(np.int64)


def threshold_predictions(
    scores: Sequence[float] | np.ndarray, threshold: float = 0.5
) -> np.ndarray:
    """Predicted labels by score thresholding; a score equal to the
    threshold predicts positive."""
    arr = _checked_scores(scores)
    return (arr >= threshold).astype(np.int64)
