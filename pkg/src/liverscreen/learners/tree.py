"""CART decision trees: Gini impurity, binary splits on numeric features.

Trees grow to purity (no pruning). Candidate thresholds are midpoints of
consecutive distinct sorted values; the best split maximizes impurity
decrease with ties broken toward the lowest feature index, then the lowest
threshold. Nodes are stored columnar (parallel arrays) so batch prediction
is a vectorized descent instead of per-record recursion.

Node visit order during growth is depth-first, left child first; random
forests draw their per-node feature subsets from the tree's generator in
that order, which makes growth reproducible from the tree seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LEAF = -1


@dataclass(frozen=True)
class DecisionTree:
    feature_names: tuple[str, ...]
    feature: np.ndarray  # int32; LEAF marks a leaf
    threshold: np.ndarray  # float64; go left when x[f] <= threshold
    left: np.ndarray  # int32 child index
    right: np.ndarray
    label: np.ndarray  # int8; majority class at the node (ties -> class 1)
    counts: np.ndarray  # (n_nodes, 2) training class counts routed through

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def used_features(self) -> np.ndarray:
        return np.unique(self.feature[self.feature != LEAF])

    def as_nested(self) -> dict:
        """Nested node dicts, the serialization form."""

        def build(i: int) -> dict:
            if self.feature[i] == LEAF:
                return {
                    "label": int(self.label[i]),
                    "counts": [int(self.counts[i, 0]), int(self.counts[i, 1])],
                }
            return {
                "feature": int(self.feature[i]),
                "threshold": float(self.threshold[i]),
                "left": build(int(self.left[i])),
                "right": build(int(self.right[i])),
            }

        return build(0)

    @classmethod
    def from_nested(cls, node: dict, feature_names: tuple[str, ...]) -> "DecisionTree":
        feature: list[int] = []
        threshold: list[float] = []
        left: list[int] = []
        right: list[int] = []
        label: list[int] = []
        counts: list[tuple[int, int]] = []

        def emit(nd: dict) -> int:
            idx = len(feature)
            if "label" in nd:
                feature.append(LEAF)
                threshold.append(0.0)
                left.append(LEAF)
                right.append(LEAF)
                label.append(nd["label"])
                counts.append((nd["counts"][0], nd["counts"][1]))
                return idx
            feature.append(nd["feature"])
            threshold.append(nd["threshold"])
            left.append(LEAF)
            right.append(LEAF)
            c1, c2 = 0, 0
            label.append(0)
            counts.append((0, 0))
            left[idx] = emit(nd["left"])
            right[idx] = emit(nd["right"])
            c = (
                counts[left[idx]][0] + counts[right[idx]][0],
                counts[left[idx]][1] + counts[right[idx]][1],
            )
            counts[idx] = c
            label[idx] = 1 if c[0] >= c[1] else 2
            return idx

        emit(node)
        return cls(
            feature_names=tuple(feature_names),
            feature=np.asarray(feature, dtype=np.int32),
            threshold=np.asarray(threshold, dtype=np.float64),
            left=np.asarray(left, dtype=np.int32),
            right=np.asarray(right, dtype=np.int32),
            label=np.asarray(label, dtype=np.int8),
            counts=np.asarray(counts, dtype=np.int64),
        )


def _best_split(X: np.ndarray, y1: np.ndarray, candidates: np.ndarray):
    """Best (decrease, feature, threshold) over candidate features, or None."""
    n = len(y1)
    total1 = int(y1.sum())
    p1 = total1 / n
    parent_gini = 1.0 - p1 * p1 - (1.0 - p1) * (1.0 - p1)

    best = None
    for f in candidates:
        v = X[:, f]
        order = np.argsort(v, kind="stable")
        vs = v[order]
        ys = y1[order]
        cut = np.nonzero(vs[:-1] < vs[1:])[0]
        if len(cut) == 0:
            continue
        cum1 = np.cumsum(ys)
        nl = cut + 1.0
        nr = n - nl
        l1 = cum1[cut]
        r1 = total1 - l1
        gini_l = 1.0 - (l1 / nl) ** 2 - ((nl - l1) / nl) ** 2
        gini_r = 1.0 - (r1 / nr) ** 2 - ((nr - r1) / nr) ** 2
        decrease = parent_gini - (nl * gini_l + nr * gini_r) / n
        k = int(np.argmax(decrease))  # first max -> lowest threshold
        if decrease[k] <= 0.0:
            continue
        if best is None or decrease[k] > best[0]:
            best = (float(decrease[k]), int(f), float((vs[cut[k]] + vs[cut[k] + 1]) / 2.0))
    return best


def grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    feature_names: tuple[str, ...],
    rng: np.random.Generator | None = None,
    mtry: int | None = None,
) -> DecisionTree:
    """Grow a full CART tree; ``mtry`` (with ``rng``) samples the per-node
    feature subset as in a random forest."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n, d = X.shape
    if n == 0:
        raise ValueError("cannot grow a tree on an empty dataset")
    y1 = (y == 1).astype(np.int64)
    all_features = np.arange(d)

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    label: list[int] = []
    counts: list[tuple[int, int]] = []

    # (row indices, parent slot, side); stack pops give depth-first, left first
    stack: list[tuple[np.ndarray, int, int]] = [(np.arange(n), -1, 0)]
    while stack:
        idx, parent, side = stack.pop()
        node_id = len(feature)
        if parent >= 0:
            if side == 0:
                left[parent] = node_id
            else:
                right[parent] = node_id

        sub_y1 = y1[idx]
        c1 = int(sub_y1.sum())
        c2 = len(idx) - c1
        split = None
        if c1 > 0 and c2 > 0:
            if mtry is not None and mtry < d:
                cand = np.sort(rng.choice(all_features, size=mtry, replace=False))
            else:
                cand = all_features
            split = _best_split(X[idx], sub_y1, cand)

        if split is None:
            feature.append(LEAF)
            threshold.append(0.0)
            left.append(LEAF)
            right.append(LEAF)
            label.append(1 if c1 >= c2 else 2)
            counts.append((c1, c2))
            continue

        _, f, thr = split
        feature.append(f)
        threshold.append(thr)
        left.append(-2)  # patched when the child is emitted
        right.append(-2)
        label.append(1 if c1 >= c2 else 2)
        counts.append((c1, c2))
        go_left = X[idx, f] <= thr
        stack.append((idx[~go_left], node_id, 1))
        stack.append((idx[go_left], node_id, 0))

    return DecisionTree(
        feature_names=tuple(feature_names),
        feature=np.asarray(feature, dtype=np.int32),
        threshold=np.asarray(threshold, dtype=np.float64),
        left=np.asarray(left, dtype=np.int32),
        right=np.asarray(right, dtype=np.int32),
        label=np.asarray(label, dtype=np.int8),
        counts=np.asarray(counts, dtype=np.int64),
    )


def tree_apply(tree: DecisionTree, X: np.ndarray) -> np.ndarray:
    """Leaf node index for each row (vectorized descent)."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    node = np.zeros(len(X), dtype=np.int32)
    while True:
        feat = tree.feature[node]
        active = feat != LEAF
        if not active.any():
            return node
        rows = np.nonzero(active)[0]
        cur = node[rows]
        go_left = X[rows, feat[rows]] <= tree.threshold[cur]
        node[rows] = np.where(go_left, tree.left[cur], tree.right[cur])


def tree_predict(tree: DecisionTree, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(labels, class-1 fraction at the leaf) for each row."""
    leaves = tree_apply(tree, X)
    c = tree.counts[leaves].astype(np.float64)
    score = c[:, 0] / (c[:, 0] + c[:, 1])
    return tree.label[leaves].astype(np.int64), score
