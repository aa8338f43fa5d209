"""Command-line front end for the screening pipeline.

Subcommands: train, select-features, evaluate, compare, predict, serve.
Exit codes: 0 success, 1 validation/usage problem, 2 internal error.

``train`` and ``evaluate`` run parse -> clean -> correlation filter ->
split and fit one algorithm on the training half; ``compare`` runs the full
dual selection (filter plus shadow contests) before training all five.
``predict`` reads one attribute map as JSON from stdin.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dataset import ParseError, ValidationError, handle_missing, parse_ilpd, split
from .evaluate import (
    compare_with_models,
    cross_validate,
    evaluate_model,
    select_pipeline_features,
)
from .features import correlation_filter
from .hybrid import NeuroSvmSpec, predict_any, train_any
from .learners import spec_for
from .metrics import EvaluationReport
from .service import LABEL_TEXT, create_app, validate_attributes
from .store import (
    StoreError,
    algorithm_tag,
    canonical_dumps,
    content_id,
    load_model,
    model_payload,
    save_metrics,
    save_model,
)

ALGORITHMS = ("nb", "bagging", "rf", "svm", "neurosvm")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="liverscreen", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p, data=True):
        if data:
            p.add_argument("--data", required=True, help="path to the ILPD CSV")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write the report/response to this path")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_train = sub.add_parser("train", help="train one algorithm on the train split")
    add_common(p_train)
    p_train.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    p_train.add_argument("--store", help="model store directory (model saved when given)")
    p_train.add_argument("--split-fraction", type=float, default=2.0 / 3.0)
    p_train.add_argument("--no-corr-filter", action="store_true")

    p_sel = sub.add_parser("select-features", help="dual feature selection report")
    add_common(p_sel)
    p_sel.add_argument("--no-corr-filter", action="store_true")

    p_eval = sub.add_parser("evaluate", help="split evaluation plus cross-validation")
    add_common(p_eval)
    p_eval.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    p_eval.add_argument("--store", help="save the model and its test metrics here")
    p_eval.add_argument("--split-fraction", type=float, default=2.0 / 3.0)
    p_eval.add_argument("--folds", type=int, default=10)
    p_eval.add_argument("--no-corr-filter", action="store_true")

    p_cmp = sub.add_parser("compare", help="five-algorithm comparison table")
    add_common(p_cmp)
    p_cmp.add_argument("--store", help="save all five models and their metrics here")
    p_cmp.add_argument("--split-fraction", type=float, default=2.0 / 3.0)
    p_cmp.add_argument("--no-corr-filter", action="store_true")

    p_pred = sub.add_parser("predict", help="classify one attribute map from stdin")
    p_pred.add_argument("--store", required=True)
    p_pred.add_argument("--model", required=True, help="model id in the store")
    p_pred.add_argument("--out")
    p_pred.add_argument("--format", choices=("text", "json"), default="json")

    p_serve = sub.add_parser("serve", help="HTTP API over a model store")
    p_serve.add_argument("--store", required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _load_dataset(path: str):
    file = Path(path)
    if not file.exists():
        raise ValidationError(f"data file not found: {path}")
    return parse_ilpd(file, provenance=str(file))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _spec(algorithm: str):
    return NeuroSvmSpec() if algorithm == "neurosvm" else spec_for(algorithm)


def _train_split_features(args):
    """Shared train/evaluate pipeline: clean, filter, split."""
    clean = handle_missing(_load_dataset(args.data), "drop_record")
    if args.no_corr_filter:
        features = clean.schema.feature_names
    else:
        kept, _ = correlation_filter(clean)
        keep = set(kept)
        features = tuple(
            f for f, kind in clean.schema.attributes
            if f != clean.schema.class_attribute and (kind == "nominal" or f in keep)
        )
    result = split(clean, fraction=args.split_fraction, seed=args.seed)
    return result, features


def cmd_train(args) -> int:
    result, features = _train_split_features(args)
    model = train_any(_spec(args.algorithm), result.train, args.seed, features=features)
    model_id = content_id(model_payload(model))
    if args.store:
        stored = save_model(model, args.store)
        assert stored == model_id
    summary = {
        "model_id": model_id,
        "algorithm": args.algorithm,
        "features": list(features),
        "n_train": len(result.train),
        "n_test": len(result.test),
        "train_accuracy": evaluate_model(model, result.train).accuracy,
        "test_accuracy": evaluate_model(model, result.test).accuracy,
        "stored": bool(args.store),
    }
    if args.format == "json":
        _emit(canonical_dumps(summary), args.out)
    else:
        lines = [f"model {model_id} ({args.algorithm})",
                 f"features: {', '.join(features)}",
                 f"train accuracy: {100 * summary['train_accuracy']:.2f}% on {summary['n_train']} records",
                 f"test accuracy: {100 * summary['test_accuracy']:.2f}% on {summary['n_test']} records"]
        if args.store:
            lines.append(f"saved to {args.store}")
        _emit("\n".join(lines), args.out)
    return 0


def cmd_select_features(args) -> int:
    clean = handle_missing(_load_dataset(args.data), "drop_record")
    selected, removed, report = select_pipeline_features(
        clean, args.seed, use_corr_filter=not args.no_corr_filter
    )
    payload = report.to_payload()
    payload["correlation_filtered"] = [list(r) for r in removed]
    payload["selected"] = list(selected)
    if args.format == "json":
        _emit(canonical_dumps(payload), args.out)
    else:
        lines = [f"dual selection on {len(clean)} records (seed {args.seed})"]
        for f, partner, r in removed:
            lines.append(f"  filtered {f} (|r|={abs(r):.4f} with {partner})")
        for res in report.results:
            lines.append(
                f"  {res.name:<10} {res.decision:<10} hits {res.hit_count}/{res.trials}"
                f"  importance {res.raw_importance:+.5f} (norm {res.normalized_importance:.4f})"
            )
        lines.append(f"selected: {', '.join(selected)}")
        _emit("\n".join(lines), args.out)
    return 0


def cmd_evaluate(args) -> int:
    result, features = _train_split_features(args)
    spec = _spec(args.algorithm)
    model = train_any(spec, result.train, args.seed, features=features)
    test_report = evaluate_model(model, result.test)
    clean = handle_missing(_load_dataset(args.data), "drop_record")
    cv = cross_validate(spec, clean, k=args.folds, seed=args.seed, features=features)
    if args.store:
        model_id = save_model(model, args.store)
        save_metrics(args.store, model_id, test_report)
    payload = {
        "algorithm": args.algorithm,
        "features": list(features),
        "test": test_report.to_payload(),
        "cross_validation": cv.to_payload(),
    }
    if args.format == "json":
        _emit(canonical_dumps(payload), args.out)
    else:
        lines = [
            f"{args.algorithm}: test accuracy {100 * test_report.accuracy:.2f}% "
            f"on {test_report.n} records (rmse {test_report.rmse:.3f}, mape {test_report.mape:.3f})",
        ]
        if cv.mean_accuracy is not None:
            std = f" +/- {100 * cv.std_accuracy:.2f}" if cv.std_accuracy is not None else ""
            lines.append(f"{args.folds}-fold CV accuracy: {100 * cv.mean_accuracy:.2f}%{std}")
        if cv.failed_folds:
            lines.append(f"failed folds: {list(cv.failed_folds)}")
        _emit("\n".join(lines), args.out)
    return 0


def cmd_compare(args) -> int:
    table, models = compare_with_models(
        _load_dataset(args.data),
        seed=args.seed,
        split_fraction=args.split_fraction,
        use_corr_filter=not args.no_corr_filter,
    )
    if args.store:
        for row in table.rows:
            model_id = save_model(models[row.algorithm], args.store)
            save_metrics(args.store, model_id, row.test)
    if args.format == "json":
        _emit(canonical_dumps(table.to_payload()), args.out)
    else:
        _emit(table.render_text(), args.out)
    return 0


def cmd_predict(args) -> int:
    model = load_model(args.store, args.model)
    try:
        body = json.loads(sys.stdin.read())
    except ValueError:
        raise ValidationError("stdin is not valid JSON")
    values, errors = validate_attributes(body, model.feature_names)
    if errors:
        raise ValidationError(
            "; ".join(f"{e.field or 'request'}: {e.message}" for e in errors)
        )
    label, score = predict_any(model, values)
    response = {
        "label": label,
        "label_text": LABEL_TEXT[label],
        "score": score,
        "model_id": args.model,
        "algorithm": algorithm_tag(model),
    }
    if args.format == "json":
        _emit(canonical_dumps(response), args.out)
    else:
        _emit(f"{response['label_text']} (label {label}, score {score:.4f})", args.out)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run(create_app(args.store), host=args.host, port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "train": cmd_train,
    "select-features": cmd_select_features,
    "evaluate": cmd_evaluate,
    "compare": cmd_compare,
    "predict": cmd_predict,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, ValidationError, StoreError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
