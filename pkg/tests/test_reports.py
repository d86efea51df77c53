"""Tests for window orchestration, true metrics and report serialization."""

import json

import numpy as np
import pytest

from confmetrics.confusion import PredictionBatch
from confmetrics.metrics import estimate_all
from confmetrics.reports import (
    EstimateConfig,
    render_report,
    run_to_json,
    true_metrics,
    windowed_estimates,
)


def batch(predictions, scores, labels=None):
    return PredictionBatch.from_arrays(predictions, scores, labels)


def random_batch(rng, n, labelled=False):
    scores = rng.random(n)
    predictions = (scores >= 0.5).astype(int)
    labels = rng.integers(0, 2, n) if labelled else None
    return batch(predictions, scores, labels)


class TestWindowing:
    def test_exact_split(self):
        reports = windowed_estimates(random_batch(np.random.default_rng(0), 1000), 500)
        assert [r.window_size for r in reports] == [500, 500]
        assert not any(r.partial for r in reports)

    def test_trailing_partial_window_flagged(self):
        reports = windowed_estimates(random_batch(np.random.default_rng(1), 1001), 500)
        assert [r.window_size for r in reports] == [500, 500, 1]
        assert [r.partial for r in reports] == [False, False, True]
        assert [r.window_index for r in reports] == [0, 1, 2]

    def test_windows_match_direct_slices(self):
        rng = np.random.default_rng(2)
        b = random_batch(rng, 90)
        config = EstimateConfig(method="exact", alpha=0.1)
        reports = windowed_estimates(b, 30, config)
        for index, report in enumerate(reports):
            window = b[index * 30 : (index + 1) * 30]
            direct = estimate_all(window, config.metrics, config.method, config.alpha)
            for got, expected in zip(report.estimates, direct):
                assert got.point == expected.point
                assert got.distribution == expected.distribution

    def test_undefined_metrics_listed(self):
        reports = windowed_estimates(batch([0, 0], [0.2, 0.3]), 2)
        assert set(reports[0].undefined_metrics) == {"precision", "f1"}

    def test_rejects_bad_window_size(self):
        with pytest.raises(ValueError, match="window_size"):
            windowed_estimates(batch([1], [0.5]), 0)


class TestTrueMetrics:
    def test_hand_counts(self):
        # TP=2, FP=0, FN=1, TN=1
        m = true_metrics(batch([1, 1, 0, 0], [0.9, 0.8, 0.4, 0.2], [1, 1, 1, 0]))
        assert m.precision == pytest.approx(1.0)
        assert m.recall == pytest.approx(2 / 3)
        assert m.f1 == pytest.approx(0.8)
        assert m.accuracy == pytest.approx(0.75)

    def test_all_correct(self):
        m = true_metrics(batch([1, 0], [0.9, 0.1], [1, 0]))
        assert (m.accuracy, m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0, 1.0)

    def test_no_positive_predictions_leaves_precision_absent(self):
        m = true_metrics(batch([0, 0], [0.1, 0.2], [0, 1]))
        assert m.precision is None
        assert m.recall == 0.0

    def test_no_positives_at_all_leaves_recall_and_f1_absent(self):
        m = true_metrics(batch([0, 0], [0.1, 0.2], [0, 0]))
        assert m.recall is None
        assert m.f1 is None
        assert m.accuracy == 1.0

    def test_requires_labels(self):
        with pytest.raises(ValueError, match="label"):
            true_metrics(batch([1], [0.5]))


class TestSerialization:
    CONFIG = EstimateConfig(method="exact", alpha=0.05)

    def test_document_shape(self):
        b = batch([1, 1, 0], [0.8, 0.6, 0.3])
        doc = run_to_json(windowed_estimates(b, 3, self.CONFIG), self.CONFIG)
        assert set(doc) == {"windows", "config"}
        window = doc["windows"][0]
        assert window["window_index"] == 0
        assert window["window_size"] == 3
        assert window["partial"] is False
        estimate = window["estimates"][0]
        assert set(estimate) == {
            "metric",
            "method",
            "point",
            "undefined",
            "hdi",
            "distribution",
        }
        assert estimate["hdi"] is not None
        assert estimate["distribution"] is None

    def test_distributions_emitted_on_request(self):
        b = batch([1, 1, 0], [0.8, 0.6, 0.3])
        reports = windowed_estimates(b, 3, self.CONFIG)
        doc = run_to_json(reports, self.CONFIG, emit_distributions=True)
        entry = doc["windows"][0]["estimates"][0]
        assert entry["metric"] == "accuracy"
        # triples of numerator, denominator, probability
        assert [row[:2] for row in entry["distribution"]] == [
            [0, 1],
            [1, 3],
            [2, 3],
            [1, 1],
        ]
        total = sum(row[2] for row in entry["distribution"])
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_undefined_estimate_serialized_with_null_point(self):
        b = batch([0, 0], [0.2, 0.3])
        doc = run_to_json(windowed_estimates(b, 2, self.CONFIG), self.CONFIG)
        by_name = {e["metric"]: e for e in doc["windows"][0]["estimates"]}
        assert by_name["precision"]["point"] is None
        assert by_name["precision"]["undefined"] is True

    def test_rendering_is_deterministic(self):
        rng = np.random.default_rng(3)
        b = random_batch(rng, 40)
        first = render_report(windowed_estimates(b, 20, self.CONFIG), self.CONFIG)
        second = render_report(windowed_estimates(b, 20, self.CONFIG), self.CONFIG)
        assert first == second
        json.loads(first)  # also valid JSON
