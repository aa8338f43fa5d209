"""Z-score standardization fitted on training data.

Standard deviations use the sample convention (n-1 divisor); every oracle in
the test suite follows the same convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ScalingParams:
    feature_names: tuple[str, ...]
    mean: tuple[float, ...]
    stddev: tuple[float, ...]


def standardize_fit(X: np.ndarray, feature_names: tuple[str, ...]) -> ScalingParams:
    """Fit per-feature mean and sample stddev; zero variance is an error."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("standardize_fit needs at least 2 records")
    mean = X.mean(axis=0)
    std = X.std(axis=0, ddof=1)
    for name, s in zip(feature_names, std):
        if s <= 0.0:
            raise ValueError(f"feature {name!r} has zero variance")
    return ScalingParams(
        feature_names=tuple(feature_names),
        mean=tuple(float(m) for m in mean),
        stddev=tuple(float(s) for s in std),
    )


def standardize_apply(params: ScalingParams, X: np.ndarray) -> np.ndarray:
    """Transform rows (or a single row) into z-scores."""
    X = np.asarray(X, dtype=np.float64)
    mean = np.asarray(params.mean)
    std = np.asarray(params.stddev)
    return (X - mean) / std
