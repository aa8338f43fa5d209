"""Gaussian naive Bayes over the two classes.

Per-class per-feature variances get a floor of 1e-9 times the largest overall
feature variance, which keeps single-valued features from collapsing the
likelihood. Posteriors are computed in log space and renormalized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

VARIANCE_FLOOR_SCALE = 1e-9
_ABSOLUTE_FLOOR = 1e-12  # only relevant when every feature is constant

CLASSES = (1, 2)


@dataclass(frozen=True)
class NaiveBayesModel:
    feature_names: tuple[str, ...]
    priors: tuple[float, float]  # P(class 1), P(class 2)
    means: tuple[tuple[float, ...], ...]  # per class, per feature
    variances: tuple[tuple[float, ...], ...]
    variance_floor: float


def fit_naive_bayes(X: np.ndarray, y: np.ndarray, feature_names: tuple[str, ...]) -> NaiveBayesModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n = len(y)
    overall_var = X.var(axis=0, ddof=1) if n > 1 else np.zeros(X.shape[1])
    floor = max(VARIANCE_FLOOR_SCALE * float(overall_var.max(initial=0.0)), _ABSOLUTE_FLOOR)

    priors = []
    means = []
    variances = []
    for cls in CLASSES:
        mask = y == cls
        count = int(mask.sum())
        priors.append(count / n)
        if count == 0:
            means.append(tuple(0.0 for _ in feature_names))
            variances.append(tuple(floor for _ in feature_names))
            continue
        Xc = X[mask]
        mu = Xc.mean(axis=0)
        var = Xc.var(axis=0, ddof=1) if count > 1 else np.zeros(X.shape[1])
        var = np.maximum(var, floor)
        means.append(tuple(float(v) for v in mu))
        variances.append(tuple(float(v) for v in var))
    return NaiveBayesModel(
        feature_names=tuple(feature_names),
        priors=(priors[0], priors[1]),
        means=tuple(means),
        variances=tuple(variances),
        variance_floor=floor,
    )


def posterior_class1(model: NaiveBayesModel, X: np.ndarray) -> np.ndarray:
    """P(class 1 | x) for each row; the class-2 posterior is its complement."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    log_joint = np.full((X.shape[0], 2), -np.inf)
    for ci in (0, 1):
        if model.priors[ci] == 0.0:
            continue
        mu = np.asarray(model.means[ci])
        var = np.asarray(model.variances[ci])
        ll = -0.5 * (np.log(2.0 * np.pi * var) + (X - mu) ** 2 / var).sum(axis=1)
        log_joint[:, ci] = np.log(model.priors[ci]) + ll
    shift = log_joint.max(axis=1, keepdims=True)
    joint = np.exp(log_joint - shift)
    return joint[:, 0] / joint.sum(axis=1)
