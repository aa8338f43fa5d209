"""Content-addressed model store backed by canonical JSON files.

Canonical form: UTF-8 JSON with sorted keys, no whitespace, floats rendered
by Python's shortest round-trip repr, non-finite numbers rejected. A model's
id is the sha256 of its canonical document, the document is stored verbatim
as <id>.json, and loading re-hashes the bytes, so flipping any byte of a
stored file is detected. Creation times come from the filesystem (the id
must not depend on when the file was written); <store>/index.json is a
regenerable cache and never authoritative.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .hybrid import AnyModel, HybridModel
from .learners import (
    DecisionTree,
    EnsembleModel,
    KernelSpec,
    NaiveBayesModel,
    ScalingParams,
    SvmModel,
)
from .metrics import EvaluationReport
from .network import NetworkWeights

FORMAT_VERSION = 1


class StoreError(Exception):
    pass


class ModelNotFoundError(StoreError):
    pass


class IntegrityError(StoreError):
    pass


class VersionError(StoreError):
    pass


def canonical_dumps(value) -> str:
    """Deterministic JSON: sorted keys, compact separators, repr floats."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, allow_nan=False)


def content_id(payload: dict) -> str:
    return hashlib.sha256(canonical_dumps(payload).encode("utf-8")).hexdigest()


def _floats(seq) -> list[float]:
    return [float(v) for v in seq]


def _schema_fingerprint(feature_names) -> str:
    return hashlib.sha256(canonical_dumps(list(feature_names)).encode("utf-8")).hexdigest()


def _scaling_payload(s: ScalingParams) -> dict:
    return {
        "feature_names": list(s.feature_names),
        "mean": _floats(s.mean),
        "stddev": _floats(s.stddev),
    }


def _scaling_from(payload: dict) -> ScalingParams:
    return ScalingParams(
        feature_names=tuple(payload["feature_names"]),
        mean=tuple(payload["mean"]),
        stddev=tuple(payload["stddev"]),
    )


def _svm_parameters(m: SvmModel) -> dict:
    return {
        "kernel": {"kind": m.kernel.kind, "gamma": m.kernel.gamma},
        "C": float(m.C),
        "support_vectors": [_floats(row) for row in m.support_vectors],
        "support_labels": _floats(m.support_labels),
        "alphas": _floats(m.alphas),
        "bias": float(m.bias),
        "scaling": _scaling_payload(m.scaling),
    }


def _svm_from(p: dict, feature_names: tuple[str, ...]) -> SvmModel:
    return SvmModel(
        feature_names=feature_names,
        kernel=KernelSpec(kind=p["kernel"]["kind"], gamma=p["kernel"]["gamma"]),
        C=p["C"],
        support_vectors=np.asarray(p["support_vectors"], dtype=np.float64).reshape(
            len(p["alphas"]), len(feature_names)
        ),
        support_labels=np.asarray(p["support_labels"], dtype=np.float64),
        alphas=np.asarray(p["alphas"], dtype=np.float64),
        bias=p["bias"],
        scaling=_scaling_from(p["scaling"]),
    )


def algorithm_tag(model: AnyModel) -> str:
    if isinstance(model, NaiveBayesModel):
        return "nb"
    if isinstance(model, DecisionTree):
        return "tree"
    if isinstance(model, EnsembleModel):
        return "bagging" if model.kind == "bagging" else "rf"
    if isinstance(model, SvmModel):
        return "svm"
    if isinstance(model, HybridModel):
        return "neurosvm"
    raise TypeError(f"unknown model type {type(model).__name__}")


def model_payload(model: AnyModel) -> dict:
    """The canonical, hash-covered document for any trained model."""
    if isinstance(model, NaiveBayesModel):
        algorithm = "nb"
        hyper = {}
        params = {
            "priors": _floats(model.priors),
            "means": [_floats(row) for row in model.means],
            "variances": [_floats(row) for row in model.variances],
            "variance_floor": float(model.variance_floor),
        }
        scaling = None
    elif isinstance(model, DecisionTree):
        algorithm = "tree"
        hyper = {}
        params = {"root": model.as_nested()}
        scaling = None
    elif isinstance(model, EnsembleModel):
        algorithm = "bagging" if model.kind == "bagging" else "rf"
        hyper = {"n_trees": len(model.trees), "mtry": model.mtry}
        params = {
            "kind": model.kind,
            "trees": [t.as_nested() for t in model.trees],
            "bootstrap_seeds": [int(s) for s in model.bootstrap_seeds],
            "n_records": model.n_records,
            "oob_error": None if model.oob_error is None else float(model.oob_error),
        }
        scaling = None
    elif isinstance(model, SvmModel):
        algorithm = "svm"
        hyper = {"kernel": model.kernel.kind, "gamma": model.kernel.gamma, "C": float(model.C)}
        params = _svm_parameters(model)
        scaling = _scaling_payload(model.scaling)
    elif isinstance(model, HybridModel):
        algorithm = "neurosvm"
        hyper = {
            "kernel": model.svm.kernel.kind,
            "gamma": model.svm.kernel.gamma,
            "C": float(model.svm.C),
            "input_recipe": list(model.input_recipe),
            "threshold": float(model.threshold),
        }
        params = {
            "svm": _svm_parameters(model.svm),
            "network": {
                "weights": [[_floats(row) for row in W] for W in model.network.weights],
                "thresholds": [_floats(u) for u in model.network.thresholds],
            },
            "input_recipe": list(model.input_recipe),
            "threshold": float(model.threshold),
        }
        scaling = _scaling_payload(model.svm.scaling)
    else:
        raise TypeError(f"cannot serialize model of type {type(model).__name__}")

    return {
        "format_version": FORMAT_VERSION,
        "algorithm": algorithm,
        "feature_names": list(model.feature_names),
        "schema_fingerprint": _schema_fingerprint(model.feature_names),
        "hyperparameters": hyper,
        "parameters": params,
        "scaling": scaling,
    }


def model_from_payload(payload: dict) -> AnyModel:
    version = payload.get("format_version", 0)
    if version > FORMAT_VERSION:
        raise VersionError(f"model format version {version} is newer than supported {FORMAT_VERSION}")
    algorithm = payload["algorithm"]
    features = tuple(payload["feature_names"])
    params = payload["parameters"]
    if algorithm == "nb":
        return NaiveBayesModel(
            feature_names=features,
            priors=tuple(params["priors"]),
            means=tuple(tuple(row) for row in params["means"]),
            variances=tuple(tuple(row) for row in params["variances"]),
            variance_floor=params["variance_floor"],
        )
    if algorithm == "tree":
        return DecisionTree.from_nested(params["root"], features)
    if algorithm in ("bagging", "rf"):
        return EnsembleModel(
            kind=params["kind"],
            feature_names=features,
            trees=tuple(DecisionTree.from_nested(t, features) for t in params["trees"]),
            bootstrap_seeds=tuple(params["bootstrap_seeds"]),
            n_records=params["n_records"],
            mtry=payload["hyperparameters"]["mtry"],
            oob_error=params["oob_error"],
        )
    if algorithm == "svm":
        return _svm_from(params, features)
    if algorithm == "neurosvm":
        return HybridModel(
            svm=_svm_from(params["svm"], features),
            network=NetworkWeights(
                weights=tuple(np.asarray(W, dtype=np.float64) for W in params["network"]["weights"]),
                thresholds=tuple(np.asarray(u, dtype=np.float64) for u in params["network"]["thresholds"]),
            ),
            input_recipe=tuple(params["input_recipe"]),
            threshold=params["threshold"],
        )
    raise StoreError(f"unknown algorithm tag {algorithm!r}")


@dataclass(frozen=True)
class ModelEnvelope:
    model_id: str
    algorithm: str
    feature_names: tuple[str, ...]
    hyperparameters: dict
    format_version: int
    created_at: str  # ISO-8601, from the file's mtime

    def to_payload(self) -> dict:
        return {
            "model_id": self.model_id,
            "algorithm": self.algorithm,
            "feature_names": list(self.feature_names),
            "hyperparameters": self.hyperparameters,
            "format_version": self.format_version,
            "created_at": self.created_at,
        }


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _mtime_iso(path: Path) -> str:
    ts = datetime.fromtimestamp(path.stat().st_mtime, tz=timezone.utc)
    return ts.isoformat()


def save_model(model: AnyModel, store_path) -> str:
    """Write the model's canonical document as <id>.json; returns the id."""
    store = Path(store_path)
    store.mkdir(parents=True, exist_ok=True)
    payload = model_payload(model)
    data = canonical_dumps(payload).encode("utf-8")
    model_id = hashlib.sha256(data).hexdigest()
    target = store / f"{model_id}.json"
    if not target.exists():
        _atomic_write(target, data)
    _write_index(store)
    return model_id


def _model_path(store_path, model_id: str) -> Path:
    return Path(store_path) / f"{model_id}.json"


def load_model(store_path, model_id: str) -> AnyModel:
    path = _model_path(store_path, model_id)
    if not path.exists():
        raise ModelNotFoundError(f"no model {model_id} in {store_path}")
    data = path.read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != model_id:
        raise IntegrityError(f"store file {path.name} does not match its content hash")
    return model_from_payload(json.loads(data.decode("utf-8")))


def _envelope_from_file(path: Path) -> ModelEnvelope | None:
    data = path.read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != path.stem:
        return None  # not a content-addressed model document
    try:
        payload = json.loads(data.decode("utf-8"))
    except ValueError:
        return None
    return ModelEnvelope(
        model_id=digest,
        algorithm=payload["algorithm"],
        feature_names=tuple(payload["feature_names"]),
        hyperparameters=payload["hyperparameters"],
        format_version=payload["format_version"],
        created_at=_mtime_iso(path),
    )


def list_models(store_path) -> list[ModelEnvelope]:
    """Envelopes for every intact model document, oldest first."""
    store = Path(store_path)
    if not store.exists():
        return []
    envelopes = []
    for path in store.glob("*.json"):
        if path.name == "index.json" or path.name.endswith(".metrics.json"):
            continue
        env = _envelope_from_file(path)
        if env is not None:
            envelopes.append(env)
    envelopes.sort(key=lambda e: (e.created_at, e.model_id))
    _write_index(store, envelopes)
    return envelopes


def _write_index(store: Path, envelopes: list[ModelEnvelope] | None = None) -> None:
    if envelopes is None:
        envelopes = []
        for path in store.glob("*.json"):
            if path.name == "index.json" or path.name.endswith(".metrics.json"):
                continue
            env = _envelope_from_file(path)
            if env is not None:
                envelopes.append(env)
        envelopes.sort(key=lambda e: (e.created_at, e.model_id))
    index = {
        "format_version": FORMAT_VERSION,
        "models": [e.to_payload() for e in envelopes],
    }
    _atomic_write(store / "index.json", canonical_dumps(index).encode("utf-8"))


def save_metrics(store_path, model_id: str, report: EvaluationReport) -> None:
    store = Path(store_path)
    store.mkdir(parents=True, exist_ok=True)
    payload = {"format_version": FORMAT_VERSION, "model_id": model_id,
               "report": report.to_payload()}
    _atomic_write(store / f"{model_id}.metrics.json", canonical_dumps(payload).encode("utf-8"))


def load_metrics(store_path, model_id: str) -> EvaluationReport:
    path = Path(store_path) / f"{model_id}.metrics.json"
    if not path.exists():
        raise ModelNotFoundError(f"no metrics stored for model {model_id}")
    payload = json.loads(path.read_text(encoding="utf-8"))
    if payload.get("format_version", 0) > FORMAT_VERSION:
        raise VersionError("metrics document version is newer than supported")
    return EvaluationReport.from_payload(payload["report"])
