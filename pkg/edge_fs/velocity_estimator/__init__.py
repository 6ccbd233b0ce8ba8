"""Metric velocity from scaled flow, the median filter and estimate quality metrics."""
from ._fit import (
    DEFAULT_N_MIN,
    FIT_METHODS,
    FitPoint,
    FitPoints,
    VelocityEstimate,
    fit_velocity,
    scale_flow,
)
from ._median import DEFAULT_MEDIAN_WINDOW, VelocityMedianFilter, median_filter_velocity
from ._metrics import (
    DEFAULT_DEPTH_BUCKETS_M,
    MetricsReport,
    compute_metrics,
    depth_error_table,
    depth_error_trend,
    velocity_error,
    velocity_metrics,
)
from ._table import (
    ESTIMATE_COLUMNS,
    align_to_ground_truth,
    estimates_to_dataframe,
    read_estimates_csv,
    write_estimates_csv,
)

__all__ = [
    # Fit
    "DEFAULT_N_MIN",
    "FIT_METHODS",
    "FitPoint",
    "FitPoints",
    "VelocityEstimate",
    "fit_velocity",
    "scale_flow",
    # Median filter
    "DEFAULT_MEDIAN_WINDOW",
    "VelocityMedianFilter",
    "median_filter_velocity",
    # Metrics
    "DEFAULT_DEPTH_BUCKETS_M",
    "MetricsReport",
    "compute_metrics",
    "depth_error_table",
    "depth_error_trend",
    "velocity_error",
    "velocity_metrics",
    # Tables
    "ESTIMATE_COLUMNS",
    "align_to_ground_truth",
    "estimates_to_dataframe",
    "read_estimates_csv",
    "write_estimates_csv",
]
