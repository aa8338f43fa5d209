"""Bootstrap ensembles of CART trees: bagging and random forests.

Each tree gets its own seed drawn from the master generator; the bootstrap
sample and (for forests) the per-node feature subsets all come from the
tree's generator, so out-of-bag membership is reconstructable from the
stored seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tree import DecisionTree, grow_tree, tree_predict

BAGGING_DEFAULT_TREES = 25
FOREST_DEFAULT_TREES = 500


@dataclass(frozen=True)
class EnsembleModel:
    kind: str  # "bagging" | "random_forest"
    feature_names: tuple[str, ...]
    trees: tuple[DecisionTree, ...]
    bootstrap_seeds: tuple[int, ...]
    n_records: int
    mtry: int | None
    oob_error: float | None


def default_mtry(n_features: int) -> int:
    return max(1, int(np.floor(np.sqrt(n_features))))


def _bootstrap_indices(seed: int, n: int) -> np.ndarray:
    return np.random.default_rng(seed).integers(0, n, size=n)


def fit_ensemble(
    X: np.ndarray,
    y: np.ndarray,
    feature_names: tuple[str, ...],
    kind: str,
    n_trees: int,
    mtry: int | None,
    seed: int,
) -> EnsembleModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n, d = X.shape
    if kind not in ("bagging", "random_forest"):
        raise ValueError(f"unknown ensemble kind {kind!r}")
    if kind == "random_forest":
        mtry = default_mtry(d) if mtry is None else mtry
        if mtry > d:
            raise ValueError(f"mtry={mtry} exceeds feature count {d}")
    else:
        mtry = None

    master = np.random.default_rng(seed)
    tree_seeds = [int(s) for s in master.integers(0, 2**63 - 1, size=n_trees)]

    trees = []
    for ts in tree_seeds:
        rng = np.random.default_rng(ts)
        boot = rng.integers(0, n, size=n)
        trees.append(grow_tree(X[boot], y[boot], feature_names, rng=rng, mtry=mtry))

    oob_error = None
    if kind == "random_forest":
        oob_error = _oob_error(trees, tree_seeds, X, y)

    return EnsembleModel(
        kind=kind,
        feature_names=tuple(feature_names),
        trees=tuple(trees),
        bootstrap_seeds=tuple(tree_seeds),
        n_records=n,
        mtry=mtry,
        oob_error=oob_error,
    )


def _oob_mask(seed: int, n: int) -> np.ndarray:
    in_bag = np.zeros(n, dtype=bool)
    in_bag[_bootstrap_indices(seed, n)] = True
    return ~in_bag


def _oob_error(trees, tree_seeds, X, y) -> float:
    n = len(y)
    votes1 = np.zeros(n, dtype=np.int64)
    total = np.zeros(n, dtype=np.int64)
    for tree, ts in zip(trees, tree_seeds):
        oob = _oob_mask(ts, n)
        if not oob.any():
            continue
        labels, _ = tree_predict(tree, X[oob])
        votes1[oob] += labels == 1
        total[oob] += 1
    covered = total > 0
    if not covered.any():
        raise ValueError("no out-of-bag records; cannot estimate OOB error")
    pred = np.where(2 * votes1[covered] >= total[covered], 1, 2)
    return float(np.mean(pred != y[covered]))


def ensemble_predict(model: EnsembleModel, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(labels, fraction of trees voting class 1); vote ties go to class 1."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    votes1 = np.zeros(len(X), dtype=np.int64)
    for tree in model.trees:
        labels, _ = tree_predict(tree, X)
        votes1 += labels == 1
    score = votes1 / len(model.trees)
    return np.where(score >= 0.5, 1, 2).astype(np.int64), score


def permutation_importance(
    model: EnsembleModel, X: np.ndarray, y: np.ndarray, seed: int
) -> np.ndarray:
    """Mean per-tree OOB accuracy drop when one feature's values are permuted.

    Trees with no out-of-bag records are skipped. Features a tree never
    splits on contribute exactly 0 for that tree, so their permutations are
    not drawn at all.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n, d = X.shape
    if n != model.n_records:
        raise ValueError("dataset does not match the model's training size")
    imp = np.zeros(d)
    contributing = 0
    for t, (tree, ts) in enumerate(zip(model.trees, model.bootstrap_seeds)):
        oob = _oob_mask(ts, n)
        if not oob.any():
            continue
        contributing += 1
        Xo = X[oob].copy()
        yo = y[oob]
        labels, _ = tree_predict(tree, Xo)
        base_acc = float(np.mean(labels == yo))
        rng = np.random.default_rng(np.random.SeedSequence([seed, t]))
        used = set(int(f) for f in tree.used_features())
        for f in range(d):
            if f not in used:
                continue
            perm = rng.permutation(len(yo))
            original = Xo[:, f].copy()
            Xo[:, f] = original[perm]
            labels, _ = tree_predict(tree, Xo)
            Xo[:, f] = original
            imp[f] += base_acc - float(np.mean(labels == yo))
    if contributing == 0:
        raise ValueError("every tree saw all records; no OOB data to permute")
    return imp / contributing
