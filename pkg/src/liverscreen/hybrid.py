"""The stacked classifier: SVM outputs feeding a small feedforward network.

The network sees two signals per record by default: the SVM decision value
and the predicted label encoded as 1/0 (class 1 -> 1). It is trained against
target 1 for liver patients and 0 otherwise, and thresholds its output at
0.5 (strictly greater means class 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .dataset import Dataset
from .learners import (
    SvmModel,
    SvmSpec,
    TrainedModel,
    extract_xy,
    predict as predict_base,
    predict_batch as predict_batch_base,
    row_from_mapping,
    train as train_base,
)
from .learners.svm import decision_values
from .network import NetworkWeights, TrainConfig, forward, train_network

RECIPE_DECISION_VALUE = "decision_value"
RECIPE_LABEL_FLAG = "label_flag"
DEFAULT_RECIPE = (RECIPE_DECISION_VALUE, RECIPE_LABEL_FLAG)

#: Full-batch SSE steps scale with the sample count, so the default rate is
#: normalized by n at fit time (see train_neurosvm).
DEFAULT_HIDDEN = (5,)


@dataclass(frozen=True)
class HybridModel:
    svm: SvmModel
    network: NetworkWeights
    input_recipe: tuple[str, ...]
    threshold: float = 0.5

    @property
    def feature_names(self) -> tuple[str, ...]:
        return self.svm.feature_names


def hybrid_inputs_batch(svm: SvmModel, X: np.ndarray, recipe: tuple[str, ...] = DEFAULT_RECIPE) -> np.ndarray:
    f = decision_values(svm, X)
    columns = []
    for item in recipe:
        if item == RECIPE_DECISION_VALUE:
            columns.append(f)
        elif item == RECIPE_LABEL_FLAG:
            columns.append((f > 0.0).astype(np.float64))
        else:
            raise ValueError(f"unknown hybrid input signal {item!r}")
    return np.column_stack(columns)


def build_hybrid_inputs(svm: SvmModel, attributes: Mapping[str, float | None], recipe: tuple[str, ...] = DEFAULT_RECIPE) -> np.ndarray:
    """Network input vector for one record."""
    row = row_from_mapping(svm.feature_names, attributes)
    return hybrid_inputs_batch(svm, row[None, :], recipe)[0]


def train_neurosvm(
    train: Dataset,
    svm_spec: SvmSpec | None = None,
    net_config: TrainConfig | None = None,
    seed: int = 0,
    features: tuple[str, ...] | None = None,
    recipe: tuple[str, ...] = DEFAULT_RECIPE,
    hidden: tuple[int, ...] = DEFAULT_HIDDEN,
) -> HybridModel:
    """Train the SVM, then the stacking network on the SVM's outputs.

    The default network config normalizes the learning rate by the training
    set size, which keeps the full-batch SSE steps stable at any scale.
    """
    svm_spec = svm_spec or SvmSpec()
    svm = train_base(svm_spec, train, seed, features=features)
    X, y = extract_xy(train, svm.feature_names)
    inputs = hybrid_inputs_batch(svm, X, recipe)
    targets = (y == 1).astype(np.float64)
    if net_config is None:
        net_config = TrainConfig(rate=2.0 / len(y))
    samples = [(inputs[i], float(targets[i])) for i in range(len(y))]
    network, _ = train_network(samples, arch=(len(recipe), hidden, 1), config=net_config, seed=seed)
    return HybridModel(svm=svm, network=network, input_recipe=tuple(recipe))


def predict_neurosvm(model: HybridModel, attributes: Mapping[str, float | None]) -> tuple[int, float]:
    """(label, network output); label 1 exactly when the score exceeds the
    threshold."""
    x = build_hybrid_inputs(model.svm, attributes, model.input_recipe)
    score, _ = forward(model.network, x)
    return (1 if score > model.threshold else 2), score


def predict_neurosvm_batch(model: HybridModel, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    inputs = hybrid_inputs_batch(model.svm, X, model.input_recipe)
    scores = np.array([forward(model.network, row)[0] for row in inputs])
    return np.where(scores > model.threshold, 1, 2).astype(np.int64), scores


@dataclass(frozen=True)
class NeuroSvmSpec:
    algorithm = "neurosvm"
    svm: SvmSpec | None = None
    net_config: TrainConfig | None = None
    recipe: tuple[str, ...] = DEFAULT_RECIPE
    hidden: tuple[int, ...] = DEFAULT_HIDDEN


AnySpec = "LearnerSpec | NeuroSvmSpec"
AnyModel = TrainedModel | HybridModel


def train_any(spec, d: Dataset, seed: int, features: tuple[str, ...] | None = None) -> AnyModel:
    """Train a base learner or the hybrid, depending on the spec type."""
    if isinstance(spec, NeuroSvmSpec):
        return train_neurosvm(
            d, svm_spec=spec.svm, net_config=spec.net_config, seed=seed,
            features=features, recipe=spec.recipe, hidden=spec.hidden,
        )
    return train_base(spec, d, seed, features=features)


def predict_any(model: AnyModel, attributes: Mapping[str, float | None]) -> tuple[int, float]:
    """Unified per-record prediction over every model kind."""
    if isinstance(model, HybridModel):
        return predict_neurosvm(model, attributes)
    return predict_base(model, attributes)


def predict_any_batch(model: AnyModel, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(model, HybridModel):
        return predict_neurosvm_batch(model, X)
    return predict_batch_base(model, X)
