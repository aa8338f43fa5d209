"""Cross-validation and the five-algorithm comparison harness.

``compare_all`` reruns the whole screening pipeline: drop incomplete
records, filter correlated features, select the relevant ones by shadow
contests, split, train all five classifiers, and score them on the held-out
records. The published accuracy figures ride along as reference values only;
nothing asserts them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, handle_missing, kfold_plan, split
from .features import BorutaConfig, FeatureReport, boruta, correlation_filter
from .hybrid import AnyModel, NeuroSvmSpec, predict_any_batch, train_any
from .learners import BaggingSpec, ForestSpec, NaiveBayesSpec, SvmSpec
from .metrics import EvaluationReport, evaluate_predictions

COMPARE_FORMAT_VERSION = 1

#: Accuracy column of the published comparison (percent), reference only.
REFERENCE_ACCURACY_PCT = {
    "nb": 53.09,
    "bagging": 66.73,
    "rf": 67.67,
    "svm": 76.22,
    "neurosvm": 98.83,
}

ALGORITHM_LABELS = {
    "nb": "Naive Bayes",
    "bagging": "Bagging",
    "rf": "Random Forest",
    "svm": "Support Vector Machine",
    "neurosvm": "NeuroSVM",
}


def evaluate_model(model: AnyModel, d: Dataset) -> EvaluationReport:
    X = d.feature_matrix(model.feature_names)
    if np.isnan(X).any():
        raise ValueError("evaluation dataset contains missing values")
    labels, scores = predict_any_batch(model, X)
    return evaluate_predictions(d.labels(), labels, scores)


@dataclass(frozen=True)
class FoldResult:
    fold: int
    report: EvaluationReport | None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.report is None


@dataclass(frozen=True)
class CrossValidationResult:
    folds: tuple[FoldResult, ...]
    mean_accuracy: float | None
    std_accuracy: float | None

    @property
    def failed_folds(self) -> tuple[int, ...]:
        return tuple(f.fold for f in self.folds if f.failed)

    def to_payload(self) -> dict:
        return {
            "folds": [
                {
                    "fold": f.fold,
                    "report": None if f.report is None else f.report.to_payload(),
                    "error": f.error,
                }
                for f in self.folds
            ],
            "mean_accuracy": self.mean_accuracy,
            "std_accuracy": self.std_accuracy,
        }


def _fold_seed(seed: int, fold: int) -> int:
    return int(np.random.SeedSequence([seed, fold]).generate_state(1)[0])


def _subset(d: Dataset, indices) -> Dataset:
    from dataclasses import replace

    return replace(d, records=tuple(d.records[i] for i in indices))


def cross_validate(spec, d: Dataset, k: int = 10, seed: int = 0,
                   features: tuple[str, ...] | None = None) -> CrossValidationResult:
    """k-fold cross-validation; folds whose training half cannot fit the
    model (for example a single-class fold under the SVM) are reported as
    failed rather than dropped."""
    plan = kfold_plan(len(d), k, seed)
    all_indices = set(range(len(d)))
    folds: list[FoldResult] = []
    for i, held_out in enumerate(plan):
        train_idx = sorted(all_indices.difference(held_out))
        train_ds = _subset(d, train_idx)
        test_ds = _subset(d, held_out)
        try:
            model = train_any(spec, train_ds, _fold_seed(seed, i), features=features)
            folds.append(FoldResult(fold=i, report=evaluate_model(model, test_ds)))
        except ValueError as exc:
            folds.append(FoldResult(fold=i, report=None, error=str(exc)))
    accuracies = [f.report.accuracy for f in folds if f.report is not None]
    mean = float(np.mean(accuracies)) if accuracies else None
    std = float(np.std(accuracies, ddof=1)) if len(accuracies) > 1 else None
    return CrossValidationResult(folds=tuple(folds), mean_accuracy=mean, std_accuracy=std)


@dataclass(frozen=True)
class ComparisonRow:
    algorithm: str
    label: str
    test: EvaluationReport
    train: EvaluationReport
    reference_accuracy_pct: float

    def to_payload(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "label": self.label,
            "test": self.test.to_payload(),
            "train": self.train.to_payload(),
            "reference_accuracy_pct": self.reference_accuracy_pct,
        }


@dataclass(frozen=True)
class ComparisonTable:
    seed: int
    split_fraction: float
    n_train: int
    n_test: int
    correlation_filtered: tuple[tuple[str, str, float], ...]
    feature_report: FeatureReport
    selected_features: tuple[str, ...]
    rows: tuple[ComparisonRow, ...]

    def row(self, algorithm: str) -> ComparisonRow:
        for r in self.rows:
            if r.algorithm == algorithm:
                return r
        raise KeyError(algorithm)

    def to_payload(self) -> dict:
        return {
            "format_version": COMPARE_FORMAT_VERSION,
            "seed": self.seed,
            "split_fraction": self.split_fraction,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "correlation_filtered": [list(r) for r in self.correlation_filtered],
            "feature_report": self.feature_report.to_payload(),
            "selected_features": list(self.selected_features),
            "rows": [r.to_payload() for r in self.rows],
        }

    def render_text(self) -> str:
        lines = [
            f"Comparison on {self.n_test} held-out records "
            f"(train {self.n_train}, seed {self.seed}, split {self.split_fraction:.4f})",
            f"Selected features: {', '.join(self.selected_features)}",
            "",
            f"{'Algorithm':<24}{'Test acc %':>11}{'Train acc %':>12}{'RMSE':>8}"
            f"{'MAPE':>8}{'AUC':>7}{'Paper %':>9}",
        ]
        for r in self.rows:
            auc_txt = f"{r.test.auc:.3f}" if r.test.auc is not None else "n/a"
            lines.append(
                f"{r.label:<24}{100 * r.test.accuracy:>11.2f}{100 * r.train.accuracy:>12.2f}"
                f"{r.test.rmse:>8.3f}{r.test.mape:>8.3f}{auc_txt:>7}"
                f"{r.reference_accuracy_pct:>9.2f}"
            )
        lines.append("")
        lines.append("Paper % column restates the published Table; it is reference only.")
        return "\n".join(lines)


def default_compare_specs() -> dict[str, object]:
    return {
        "nb": NaiveBayesSpec(),
        "bagging": BaggingSpec(),
        "rf": ForestSpec(),
        "svm": SvmSpec(),
        "neurosvm": NeuroSvmSpec(),
    }


def select_pipeline_features(
    d: Dataset,
    seed: int,
    use_corr_filter: bool = True,
    boruta_config: BorutaConfig | None = None,
) -> tuple[tuple[str, ...], list[tuple[str, str, float]], FeatureReport]:
    """The dual-selection stage: correlation filter, then shadow contests.

    Returns (selected features, correlation removals, feature report).
    Selection keeps confirmed features, widening to tentative and then to
    every candidate if the contests leave nothing standing.
    """
    removed: list[tuple[str, str, float]] = []
    candidates = d.schema.feature_names
    if use_corr_filter:
        kept_numeric, removed = correlation_filter(d)
        keep = set(kept_numeric)
        candidates = tuple(
            f for f, kind in d.schema.attributes
            if f != d.schema.class_attribute and (kind == "nominal" or f in keep)
        )
    config = boruta_config or BorutaConfig(features=candidates)
    if config.features is None:
        from dataclasses import replace

        config = replace(config, features=candidates)
    report = boruta(d, config, seed=seed)
    selected = report.confirmed or report.confirmed + report.tentative or candidates
    ordered = tuple(f for f in d.schema.feature_names if f in selected)
    return ordered, removed, report


def compare_with_models(
    d: Dataset,
    seed: int,
    split_fraction: float = 2.0 / 3.0,
    use_corr_filter: bool = True,
    boruta_config: BorutaConfig | None = None,
    specs: dict[str, object] | None = None,
) -> tuple[ComparisonTable, dict[str, AnyModel]]:
    """Full pipeline -> (Table-3-shaped report, the trained models)."""
    clean = handle_missing(d, "drop_record")
    selected, removed, report = select_pipeline_features(
        clean, seed, use_corr_filter=use_corr_filter, boruta_config=boruta_config
    )
    result = split(clean, fraction=split_fraction, seed=seed)
    specs = specs or default_compare_specs()
    rows = []
    models: dict[str, AnyModel] = {}
    for algorithm, spec in specs.items():
        model = train_any(spec, result.train, seed, features=selected)
        models[algorithm] = model
        rows.append(
            ComparisonRow(
                algorithm=algorithm,
                label=ALGORITHM_LABELS.get(algorithm, algorithm),
                test=evaluate_model(model, result.test),
                train=evaluate_model(model, result.train),
                reference_accuracy_pct=REFERENCE_ACCURACY_PCT.get(algorithm, float("nan")),
            )
        )
    table = ComparisonTable(
        seed=seed,
        split_fraction=split_fraction,
        n_train=len(result.train),
        n_test=len(result.test),
        correlation_filtered=tuple(removed),
        feature_report=report,
        selected_features=selected,
        rows=tuple(rows),
    )
    return table, models


def compare_all(
    d: Dataset,
    seed: int,
    split_fraction: float = 2.0 / 3.0,
    use_corr_filter: bool = True,
    boruta_config: BorutaConfig | None = None,
    specs: dict[str, object] | None = None,
) -> ComparisonTable:
    """Full pipeline -> Table-3-shaped report (accuracy, RMSE, MAPE, AUC)."""
    table, _ = compare_with_models(
        d, seed, split_fraction=split_fraction, use_corr_filter=use_corr_filter,
        boruta_config=boruta_config, specs=specs,
    )
    return table
