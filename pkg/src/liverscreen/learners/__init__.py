"""The four baseline classifiers plus shared plumbing.

``train`` dispatches on the spec type; every learner is deterministic given
(spec, dataset, seed). Trained models are immutable and safe to share:
``predict`` is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from ..dataset import Dataset
from .ensemble import (
    BAGGING_DEFAULT_TREES,
    FOREST_DEFAULT_TREES,
    EnsembleModel,
    default_mtry,
    ensemble_predict,
    fit_ensemble,
    permutation_importance,
)
from .naive_bayes import NaiveBayesModel, fit_naive_bayes, posterior_class1
from .scaling import ScalingParams, standardize_apply, standardize_fit
from .svm import (
    KernelSpec,
    SmoConvergenceError,
    SvmModel,
    decision_values,
    fit_svm,
    kkt_residual,
    smo_solve,
    svm_predict,
)
from .tree import DecisionTree, grow_tree, tree_predict

__all__ = [
    "NaiveBayesSpec",
    "TreeSpec",
    "BaggingSpec",
    "ForestSpec",
    "SvmSpec",
    "LearnerSpec",
    "TrainedModel",
    "spec_for",
    "train",
    "predict",
    "predict_batch",
    "oob_permutation_importance",
    "NaiveBayesModel",
    "DecisionTree",
    "EnsembleModel",
    "SvmModel",
    "ScalingParams",
    "KernelSpec",
    "SmoConvergenceError",
    "standardize_fit",
    "standardize_apply",
    "fit_naive_bayes",
    "posterior_class1",
    "grow_tree",
    "tree_predict",
    "fit_ensemble",
    "ensemble_predict",
    "permutation_importance",
    "fit_svm",
    "svm_predict",
    "decision_values",
    "smo_solve",
    "kkt_residual",
    "default_mtry",
    "BAGGING_DEFAULT_TREES",
    "FOREST_DEFAULT_TREES",
]


@dataclass(frozen=True)
class NaiveBayesSpec:
    algorithm = "nb"


@dataclass(frozen=True)
class TreeSpec:
    algorithm = "tree"


@dataclass(frozen=True)
class BaggingSpec:
    algorithm = "bagging"
    n_trees: int = BAGGING_DEFAULT_TREES


@dataclass(frozen=True)
class ForestSpec:
    algorithm = "rf"
    n_trees: int = FOREST_DEFAULT_TREES
    mtry: int | None = None  # None -> floor(sqrt(n_features))


@dataclass(frozen=True)
class SvmSpec:
    algorithm = "svm"
    kernel: str = "rbf"
    gamma: float | None = None  # None -> 1 / n_features
    C: float = 1.0
    tol: float = 1e-3
    max_passes: int = 200


LearnerSpec = Union[NaiveBayesSpec, TreeSpec, BaggingSpec, ForestSpec, SvmSpec]
TrainedModel = Union[NaiveBayesModel, DecisionTree, EnsembleModel, SvmModel]


def spec_for(algorithm: str) -> LearnerSpec:
    table = {
        "nb": NaiveBayesSpec,
        "tree": TreeSpec,
        "bagging": BaggingSpec,
        "rf": ForestSpec,
        "svm": SvmSpec,
    }
    if algorithm not in table:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return table[algorithm]()


def extract_xy(d: Dataset, features: tuple[str, ...]) -> tuple[np.ndarray, np.ndarray]:
    X = d.feature_matrix(features)
    if np.isnan(X).any():
        raise ValueError("dataset contains missing values; clean it first")
    return X, d.labels()


def train(spec: LearnerSpec, d: Dataset, seed: int, features: tuple[str, ...] | None = None) -> TrainedModel:
    features = tuple(features) if features is not None else d.schema.feature_names
    X, y = extract_xy(d, features)
    if len(y) == 0:
        raise ValueError("cannot train on an empty dataset")
    if isinstance(spec, NaiveBayesSpec):
        return fit_naive_bayes(X, y, features)
    if isinstance(spec, TreeSpec):
        return grow_tree(X, y, features)
    if isinstance(spec, BaggingSpec):
        return fit_ensemble(X, y, features, "bagging", spec.n_trees, None, seed)
    if isinstance(spec, ForestSpec):
        return fit_ensemble(X, y, features, "random_forest", spec.n_trees, spec.mtry, seed)
    if isinstance(spec, SvmSpec):
        return fit_svm(
            X, y, features,
            kernel=spec.kernel, gamma=spec.gamma, C=spec.C,
            tol=spec.tol, max_passes=spec.max_passes,
        )
    raise TypeError(f"unknown learner spec {spec!r}")


def predict_batch(model: TrainedModel, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(labels, scores) for a feature matrix in the model's feature order.

    Scores: class-1 posterior for NB, class-1 leaf/vote fraction for trees
    and ensembles, signed decision value for the SVM.
    """
    if isinstance(model, NaiveBayesModel):
        p1 = posterior_class1(model, X)
        return np.where(p1 >= 0.5, 1, 2).astype(np.int64), p1
    if isinstance(model, DecisionTree):
        return tree_predict(model, X)
    if isinstance(model, EnsembleModel):
        return ensemble_predict(model, X)
    if isinstance(model, SvmModel):
        return svm_predict(model, X)
    raise TypeError(f"unknown model {type(model).__name__}")


def row_from_mapping(feature_names: tuple[str, ...], attributes: Mapping[str, float | None]) -> np.ndarray:
    row = np.empty(len(feature_names))
    for j, name in enumerate(feature_names):
        v = attributes.get(name)
        if v is None or (isinstance(v, float) and np.isnan(v)):
            raise ValueError(f"missing feature {name!r}")
        row[j] = float(v)
    return row


def predict(model: TrainedModel, attributes: Mapping[str, float | None]) -> tuple[int, float]:
    """Classify one record given as a feature-name -> value mapping."""
    row = row_from_mapping(model.feature_names, attributes)
    labels, scores = predict_batch(model, row[None, :])
    return int(labels[0]), float(scores[0])


def oob_permutation_importance(model: EnsembleModel, d: Dataset, seed: int) -> dict[str, float]:
    """Per-feature OOB permutation importance for a trained forest."""
    if model.kind != "random_forest":
        raise ValueError("permutation importance is defined for random forests")
    X, y = extract_xy(d, model.feature_names)
    imp = permutation_importance(model, X, y, seed)
    return {name: float(v) for name, v in zip(model.feature_names, imp)}
