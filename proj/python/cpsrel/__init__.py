"""Reliability engine for cyber-physical system architectures."""

from ._core import (
    FailureModel,
    IoError,
    ValidationError,
    evaluate_architecture,
    k_of_n_reliability,
    mtbf,
    parallel_reliability,
    score_records,
    series_reliability,
    sh_intensity,
    simulate_architecture,
    srgm_count_pmf,
    srgm_intensity,
    srgm_mean_value,
)

__all__ = [
    "FailureModel",
    "IoError",
    "ValidationError",
    "evaluate_architecture",
    "k_of_n_reliability",
    "mtbf",
    "parallel_reliability",
    "score_records",
    "series_reliability",
    "sh_intensity",
    "simulate_architecture",
    "srgm_count_pmf",
    "srgm_intensity",
    "srgm_mean_value",
]
