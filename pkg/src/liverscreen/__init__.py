"""Liver-patient screening on the ILPD biomarkers.

Ingestion and seeded splits, dual feature selection (correlation filter plus
shadow-feature contests), four classical classifiers trained from scratch,
an SVM-into-network stacker, an evaluation harness that regenerates the
published comparison table, and a JSON prediction service.
"""

from .dataset import (
    Dataset,
    Record,
    Schema,
    SplitResult,
    handle_missing,
    ilpd_schema,
    kfold_plan,
    parse_ilpd,
    serialize_ilpd,
    shuffle,
    split,
)
from .evaluate import (
    ComparisonTable,
    CrossValidationResult,
    compare_all,
    cross_validate,
    evaluate_model,
)
from .features import BorutaConfig, FeatureReport, boruta, correlation_filter, pearson_matrix
from .hybrid import (
    HybridModel,
    NeuroSvmSpec,
    build_hybrid_inputs,
    predict_any,
    train_any,
    train_neurosvm,
)
from .learners import (
    BaggingSpec,
    ForestSpec,
    NaiveBayesSpec,
    SvmSpec,
    TreeSpec,
    oob_permutation_importance,
    predict,
    train,
)
from .metrics import EvaluationReport, auc, mape, rmse, roc_curve
from .network import NetworkWeights, forward, threshold_unit, train_network
from .store import list_models, load_model, save_model

__version__ = "0.1.0"
