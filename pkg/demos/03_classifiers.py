"""Train the four baseline classifiers and cross-validate them on ILPD.

Run from the repository root:  python3 demos/03_classifiers.py
"""

from pathlib import Path

from liverscreen import (
    BaggingSpec,
    ForestSpec,
    NaiveBayesSpec,
    SvmSpec,
    cross_validate,
    evaluate_model,
    handle_missing,
    oob_permutation_importance,
    parse_ilpd,
    split,
    train,
)

DATA = Path(__file__).resolve().parent.parent / "data" / "ilpd.csv"
clean = handle_missing(parse_ilpd(DATA))
result = split(clean, seed=7)
print(f"train {len(result.train)} / test {len(result.test)} records\n")

specs = {
    "naive bayes": NaiveBayesSpec(),
    "bagging (25 trees)": BaggingSpec(),
    "random forest (500 trees)": ForestSpec(),
    "svm (rbf, C=1)": SvmSpec(),
}
for name, spec in specs.items():
    model = train(spec, result.train, seed=7)
    report = evaluate_model(model, result.test)
    print(
        f"{name:<26} test accuracy {100 * report.accuracy:5.2f}%"
        f"   rmse {report.rmse:.3f}  mape {report.mape:.3f}  auc {report.auc:.3f}"
    )

# The forest doubles as a feature ranker through its out-of-bag records.
forest = train(ForestSpec(n_trees=200), result.train, seed=7)
importance = oob_permutation_importance(forest, result.train, seed=7)
print("\nforest permutation importance (OOB accuracy drop):")
for feature, value in sorted(importance.items(), key=lambda kv: -kv[1]):
    print(f"  {feature:<10} {value:+.5f}")

# Ten-fold cross-validation, the evaluation protocol used for every learner.
cv = cross_validate(NaiveBayesSpec(), clean, k=10, seed=7)
print(
    f"\nnaive bayes 10-fold CV: {100 * cv.mean_accuracy:.2f}%"
    f" +/- {100 * cv.std_accuracy:.2f} across folds"
)
