"""Label-free estimation of binary classification metrics.

Confusion-matrix counts of a monitoring window are treated as Poisson
binomial variables driven by calibrated confidence scores; metrics derived
from those counts (accuracy, precision, recall, F1) become finite
distributions with exact rational support, giving point estimates and
highest-density intervals without any ground-truth labels.
"""

from .calibration import (
    CalibrationBin,
    CalibrationReport,
    ace,
    reverse_sample_labels,
    threshold_predictions,
)
from .confusion import (
    ConfusionEstimate,
    FrequencyEstimates,
    PredictionBatch,
    PredictionRecord,
    estimate_confusion,
    frequency_estimates,
)
from .distribution import (
    PROB_SUM_TOL,
    DiscreteDistribution,
    complement_count,
    poisson_binomial_cf,
    poisson_binomial_dp,
)
from .experiments import (
    ConvergenceRow,
    CoverageRow,
    run_convergence_experiment,
    run_coverage_experiment,
)
from .ingest import parse_input
from .intervals import HdiInterval, hdi
from .metrics import (
    METRICS,
    MetricEstimate,
    accuracy_distribution,
    estimate_all,
    f1_distribution,
    precision_distribution,
    recall_distribution,
    shortcut_accuracy,
    shortcut_f1,
    shortcut_precision,
    shortcut_recall,
)
from .reports import (
    EstimateConfig,
    MonitoringReport,
    TrueMetrics,
    render_report,
    run_to_json,
    true_metrics,
    windowed_estimates,
    write_report,
)
from .synthesis import (
    BetaParams,
    HypersphereConfig,
    SyntheticDataset,
    hypersphere_dataset,
    positive_probability,
    random_beta_params,
    sample_beta_scores,
    shift_dataset,
)

__version__ = "0.1.0"

__all__ = [
    "PROB_SUM_TOL",
    "METRICS",
    "DiscreteDistribution",
    "poisson_binomial_dp",
    "poisson_binomial_cf",
    "complement_count",
    "PredictionRecord",
    "PredictionBatch",
    "ConfusionEstimate",
    "FrequencyEstimates",
    "estimate_confusion",
    "frequency_estimates",
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
    "HdiInterval",
    "hdi",
    "CalibrationBin",
    "CalibrationReport",
    "ace",
    "reverse_sample_labels",
    "threshold_predictions",
    "BetaParams",
    "HypersphereConfig",
    "SyntheticDataset",
    "random_beta_params",
    "sample_beta_scores",
    "positive_probability",
    "hypersphere_dataset",
    "shift_dataset",
    "parse_input",
    "EstimateConfig",
    "MonitoringReport",
    "TrueMetrics",
    "windowed_estimates",
    "true_metrics",
    "run_to_json",
    "render_report",
    "write_report",
    "ConvergenceRow",
    "CoverageRow",
    "run_convergence_experiment",
    "run_coverage_experiment",
]
