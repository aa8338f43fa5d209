"""Dual feature selection: correlation filter, then all-relevant selection.

Stage one drops one member of every feature pair whose absolute Pearson
correlation exceeds the threshold (nominal features never enter the filter).
Stage two pits each remaining feature against shadow copies of itself inside
a random forest: a feature scores a hit whenever its permutation importance
beats the best shadow, and an exact two-sided binomial test on the running
hit count confirms or rejects it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.stats import binom

from .dataset import Dataset
from .learners import ForestSpec, extract_xy
from .learners.ensemble import fit_ensemble, permutation_importance

REPORT_FORMAT_VERSION = 1

CONFIRMED = "confirmed"
REJECTED = "rejected"
TENTATIVE = "tentative"


@dataclass(frozen=True)
class CorrelationMatrix:
    feature_names: tuple[str, ...]
    r: np.ndarray

    def pair(self, a: str, b: str) -> float:
        i = self.feature_names.index(a)
        j = self.feature_names.index(b)
        return float(self.r[i, j])


def pearson_matrix(d: Dataset, features: Iterable[str]) -> CorrelationMatrix:
    """Pearson product-moment coefficients for the listed numeric features."""
    features = tuple(features)
    X = d.feature_matrix(features)
    if np.isnan(X).any():
        raise ValueError("correlation undefined with missing values; clean the dataset first")
    std = X.std(axis=0, ddof=1) if len(X) > 1 else np.zeros(X.shape[1])
    for name, s in zip(features, std):
        if s <= 0.0:
            raise ValueError(f"feature {name!r} has zero variance")
    return CorrelationMatrix(feature_names=features, r=np.corrcoef(X, rowvar=False))


def correlation_filter(
    d: Dataset,
    threshold: float = 0.70,
    features: Iterable[str] | None = None,
) -> tuple[list[str], list[tuple[str, str, float]]]:
    """Greedy removal of correlated features until no |r| exceeds the threshold.

    Within the worst pair, the member with the larger mean absolute
    correlation against the remaining features is dropped (ties drop the
    later column). Returns (kept, removed) with removed entries
    (feature, surviving partner, their correlation).
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    if features is None:
        features = d.schema.numeric_feature_names
    features = tuple(features)
    matrix = pearson_matrix(d, features)
    absr = np.abs(matrix.r)
    np.fill_diagonal(absr, 0.0)

    active = list(range(len(features)))
    removed: list[tuple[str, str, float]] = []
    while True:
        sub = absr[np.ix_(active, active)]
        worst = float(sub.max(initial=0.0))
        if worst <= threshold:
            break
        # lexicographically first pair among the maxima
        i_loc, j_loc = np.argwhere(sub == worst)[0]
        if i_loc > j_loc:
            i_loc, j_loc = j_loc, i_loc
        mean_i = sub[i_loc].sum() / (len(active) - 1)
        mean_j = sub[j_loc].sum() / (len(active) - 1)
        drop_loc = j_loc if mean_j >= mean_i else i_loc
        keep_loc = i_loc if drop_loc == j_loc else j_loc
        dropped = active[drop_loc]
        partner = active[keep_loc]
        removed.append(
            (features[dropped], features[partner], float(matrix.r[dropped, partner]))
        )
        active.remove(dropped)
    kept = [features[i] for i in active]
    return kept, removed


@dataclass(frozen=True)
class FeatureResult:
    name: str
    raw_importance: float
    normalized_importance: float
    decision: str  # confirmed | rejected | tentative
    hit_count: int
    trials: int


@dataclass(frozen=True)
class FeatureReport:
    results: tuple[FeatureResult, ...]
    seed: int
    max_trials: int
    alpha: float
    trials_run: int

    def decided(self, decision: str) -> tuple[str, ...]:
        return tuple(r.name for r in self.results if r.decision == decision)

    @property
    def confirmed(self) -> tuple[str, ...]:
        return self.decided(CONFIRMED)

    @property
    def rejected(self) -> tuple[str, ...]:
        return self.decided(REJECTED)

    @property
    def tentative(self) -> tuple[str, ...]:
        return self.decided(TENTATIVE)

    def to_payload(self) -> dict:
        return {
            "format_version": REPORT_FORMAT_VERSION,
            "seed": self.seed,
            "max_trials": self.max_trials,
            "alpha": self.alpha,
            "trials_run": self.trials_run,
            "features": [
                {
                    "name": r.name,
                    "raw_importance": r.raw_importance,
                    "normalized_importance": r.normalized_importance,
                    "decision": r.decision,
                    "hit_count": r.hit_count,
                    "trials": r.trials,
                }
                for r in self.results
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "FeatureReport":
        if payload.get("format_version", 0) > REPORT_FORMAT_VERSION:
            raise ValueError(f"unsupported feature report version {payload['format_version']}")
        return cls(
            results=tuple(
                FeatureResult(
                    name=f["name"],
                    raw_importance=f["raw_importance"],
                    normalized_importance=f["normalized_importance"],
                    decision=f["decision"],
                    hit_count=f["hit_count"],
                    trials=f["trials"],
                )
                for f in payload["features"]
            ),
            seed=payload["seed"],
            max_trials=payload["max_trials"],
            alpha=payload["alpha"],
            trials_run=payload["trials_run"],
        )


@dataclass(frozen=True)
class BorutaConfig:
    max_trials: int = 100
    alpha: float = 0.01
    forest: ForestSpec = field(default_factory=lambda: ForestSpec(n_trees=50, mtry=None))
    features: tuple[str, ...] | None = None  # None -> every schema feature


def _two_sided_binomial_p(hits: int, trials: int) -> float:
    """Exact two-sided p-value for hit_count under Binomial(trials, 0.5)."""
    p_hi = float(binom.sf(hits - 1, trials, 0.5))
    p_lo = float(binom.cdf(hits, trials, 0.5))
    return min(1.0, 2.0 * min(p_hi, p_lo))


def boruta(d: Dataset, config: BorutaConfig | None = None, seed: int = 0) -> FeatureReport:
    """All-relevant selection by shadow-feature contests.

    Deterministic for a fixed (dataset, config, seed): shadow permutations,
    forest seeds, and importance seeds are all drawn sequentially from one
    generator. Rejected features leave the pool; confirmed ones keep
    participating so later forests stay realistic.
    """
    config = config or BorutaConfig()
    if config.max_trials < 10:
        raise ValueError("max_trials must be at least 10")
    features = tuple(config.features) if config.features is not None else d.schema.feature_names
    X, y = extract_xy(d, features)
    n, p = X.shape
    if n < 5:
        raise ValueError("boruta needs at least 5 records")

    rng = np.random.default_rng(seed)
    decisions = {name: TENTATIVE for name in features}
    hits = {name: 0 for name in features}
    participated = {name: 0 for name in features}
    importance_sum = {name: 0.0 for name in features}

    trials_run = 0
    for _ in range(config.max_trials):
        active = [f for f in features if decisions[f] != REJECTED]
        undecided = [f for f in features if decisions[f] == TENTATIVE]
        if not undecided:
            break
        cols = [features.index(f) for f in active]
        Xa = X[:, cols]
        shadows = np.column_stack([Xa[rng.permutation(n), j] for j in range(len(cols))])
        X_ext = np.hstack([Xa, shadows])
        names_ext = tuple(active) + tuple(f"shadow:{f}" for f in active)

        forest_seed = int(rng.integers(0, 2**63 - 1))
        imp_seed = int(rng.integers(0, 2**63 - 1))
        forest = fit_ensemble(
            X_ext, y, names_ext, "random_forest",
            n_trees=config.forest.n_trees, mtry=config.forest.mtry, seed=forest_seed,
        )
        imp = permutation_importance(forest, X_ext, y, seed=imp_seed)
        real_imp = imp[: len(active)]
        shadow_max = float(imp[len(active):].max())

        trials_run += 1
        for f, value in zip(active, real_imp):
            participated[f] += 1
            importance_sum[f] += float(value)
            if value > shadow_max:
                hits[f] += 1
        for f in undecided:
            p_value = _two_sided_binomial_p(hits[f], participated[f])
            if p_value <= config.alpha:
                decisions[f] = CONFIRMED if hits[f] > participated[f] / 2 else REJECTED

    raw = {
        f: (importance_sum[f] / participated[f] if participated[f] else 0.0)
        for f in features
    }
    in_play = [f for f in features if decisions[f] != REJECTED]
    top = max((max(raw[f], 0.0) for f in in_play), default=0.0)
    results = tuple(
        FeatureResult(
            name=f,
            raw_importance=raw[f],
            normalized_importance=(max(raw[f], 0.0) / top if top > 0.0 else 0.0),
            decision=decisions[f],
            hit_count=hits[f],
            trials=participated[f],
        )
        for f in features
    )
    return FeatureReport(
        results=results,
        seed=seed,
        max_trials=config.max_trials,
        alpha=config.alpha,
        trials_run=trials_run,
    )
