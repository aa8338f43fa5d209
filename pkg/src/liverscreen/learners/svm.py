"""Soft-margin SVM trained by sequential minimal optimization.

The solver follows Platt's working-set scheme: examine KKT violators,
pair each with the partner maximizing |E1 - E2| among non-bound multipliers
(falling back to deterministic cyclic scans), and solve each two-variable
subproblem analytically. All tie-breaks are index-ordered, so a fixed input
always produces the same multipliers.

Class labels map 1 -> +1 and 2 -> -1. Features are z-scored before entering
the kernel; decision values are reported on the standardized scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scaling import ScalingParams, standardize_apply, standardize_fit

_STEP_EPS = 1e-12
_SNAP_EPS = 1e-12
_HARD_SWEEP_CAP = 100_000


class SmoConvergenceError(RuntimeError):
    def __init__(self, sweeps: int):
        super().__init__(f"SMO made no progress; gave up after {sweeps} sweeps")
        self.sweeps = sweeps


@dataclass(frozen=True)
class KernelSpec:
    kind: str  # "linear" | "rbf"
    gamma: float | None = None  # rbf only


def kernel_matrix(spec: KernelSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    B = np.atleast_2d(np.asarray(B, dtype=np.float64))
    if spec.kind == "linear":
        return A @ B.T
    if spec.kind == "rbf":
        sq = (A * A).sum(axis=1)[:, None] + (B * B).sum(axis=1)[None, :] - 2.0 * (A @ B.T)
        return np.exp(-spec.gamma * np.maximum(sq, 0.0))
    raise ValueError(f"unknown kernel {spec.kind!r}")


def dual_objective(K: np.ndarray, y: np.ndarray, alpha: np.ndarray) -> float:
    ay = alpha * y
    return float(alpha.sum() - 0.5 * ay @ K @ ay)


def kkt_residual(K: np.ndarray, y: np.ndarray, alpha: np.ndarray, b: float, C: float) -> float:
    """Largest violation of the soft-margin optimality conditions (0 = exact)."""
    f = (alpha * y) @ K + b
    margins = y * f
    resid = np.zeros_like(margins)
    at_zero = alpha <= 0.0
    at_c = alpha >= C
    interior = ~at_zero & ~at_c
    resid[at_zero] = np.maximum(0.0, 1.0 - margins[at_zero])
    resid[at_c] = np.maximum(0.0, margins[at_c] - 1.0)
    resid[interior] = np.abs(margins[interior] - 1.0)
    return float(resid.max(initial=0.0))


def smo_solve(
    K: np.ndarray,
    y: np.ndarray,
    C: float,
    tol: float = 1e-3,
    max_passes: int = 200,
    track_objective: bool = False,
) -> tuple[np.ndarray, float, list[float]]:
    """Maximize the soft-margin dual; returns (alphas, bias, objective trace).

    ``K`` must be a symmetric PSD kernel matrix and ``y`` +/-1 labels with
    both signs present. The objective trace is recorded per accepted step
    only when ``track_objective`` is set.
    """
    K = np.asarray(K, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = len(y)
    if n < 2:
        raise ValueError("need at least 2 training points")
    if K.shape != (n, n):
        raise ValueError("kernel matrix shape does not match labels")
    if not (np.any(y > 0) and np.any(y < 0)):
        raise ValueError("both classes must be present")

    alpha = np.zeros(n)
    b = 0.0
    E = -y.copy()  # f(x) = 0 initially, E_i = f(x_i) - y_i
    objective: list[float] = []

    def take_step(i1: int, i2: int) -> bool:
        nonlocal b
        if i1 == i2:
            return False
        a1, a2 = alpha[i1], alpha[i2]
        y1, y2 = y[i1], y[i2]
        E1, E2 = E[i1], E[i2]
        s = y1 * y2
        if s < 0:
            L, H = max(0.0, a2 - a1), min(C, C + a2 - a1)
        else:
            L, H = max(0.0, a2 + a1 - C), min(C, a2 + a1)
        if L >= H:
            return False
        k11, k12, k22 = K[i1, i1], K[i1, i2], K[i2, i2]
        eta = k11 + k22 - 2.0 * k12
        if eta > 0.0:
            a2n = a2 + y2 * (E1 - E2) / eta
            a2n = min(max(a2n, L), H)
        else:
            # PSD kernel: eta == 0, objective linear in a2 along the constraint
            slope = y2 * (E1 - E2)
            if slope > 0.0:
                a2n = H
            elif slope < 0.0:
                a2n = L
            else:
                return False
        if abs(a2n - a2) < _STEP_EPS * (a2n + a2 + _STEP_EPS):
            return False
        a1n = a1 + s * (a2 - a2n)
        # snap float drift at the box bounds so 0 <= alpha <= C holds exactly
        if a1n < _SNAP_EPS * C:
            a1n = 0.0
        elif a1n > (1.0 - _SNAP_EPS) * C:
            a1n = C

        b1 = b - E1 - y1 * (a1n - a1) * k11 - y2 * (a2n - a2) * k12
        b2 = b - E2 - y1 * (a1n - a1) * k12 - y2 * (a2n - a2) * k22
        if 0.0 < a1n < C:
            bn = b1
        elif 0.0 < a2n < C:
            bn = b2
        else:
            bn = (b1 + b2) / 2.0

        E[:] = E + y1 * (a1n - a1) * K[i1] + y2 * (a2n - a2) * K[i2] + (bn - b)
        alpha[i1], alpha[i2] = a1n, a2n
        b = bn
        if track_objective:
            objective.append(dual_objective(K, y, alpha))
        return True

    def examine(i2: int) -> bool:
        r2 = E[i2] * y[i2]
        if not ((r2 < -tol and alpha[i2] < C) or (r2 > tol and alpha[i2] > 0.0)):
            return False
        non_bound = np.nonzero((alpha > 0.0) & (alpha < C))[0]
        if len(non_bound) > 0:
            gaps = np.abs(E[non_bound] - E[i2])
            if take_step(int(non_bound[np.argmax(gaps)]), i2):
                return True
            for i1 in np.roll(non_bound, -(i2 % max(len(non_bound), 1))):
                if take_step(int(i1), i2):
                    return True
        for i1 in range(i2 + 1, n):
            if take_step(i1, i2):
                return True
        for i1 in range(0, i2):
            if take_step(i1, i2):
                return True
        return False

    examine_all = True
    num_changed = 0
    sweeps = 0
    stalled = 0
    while num_changed > 0 or examine_all:
        sweeps += 1
        if sweeps > _HARD_SWEEP_CAP:
            raise SmoConvergenceError(sweeps)
        num_changed = 0
        if examine_all:
            targets = range(n)
        else:
            targets = np.nonzero((alpha > 0.0) & (alpha < C))[0]
        for i2 in targets:
            num_changed += examine(int(i2))
        if examine_all:
            examine_all = False
            if num_changed == 0:
                break  # a full pass found no KKT violator at tol
        elif num_changed == 0:
            examine_all = True
        if num_changed == 0:
            stalled += 1
            if stalled >= max_passes:
                if kkt_residual(K, y, alpha, b, C) <= tol:
                    break
                raise SmoConvergenceError(sweeps)
        else:
            stalled = 0

    return alpha, b, objective


@dataclass(frozen=True)
class SvmModel:
    feature_names: tuple[str, ...]
    kernel: KernelSpec
    C: float
    support_vectors: np.ndarray  # standardized rows
    support_labels: np.ndarray  # +/-1
    alphas: np.ndarray
    bias: float
    scaling: ScalingParams


def fit_svm(
    X: np.ndarray,
    y: np.ndarray,
    feature_names: tuple[str, ...],
    kernel: str = "rbf",
    gamma: float | None = None,
    C: float = 1.0,
    tol: float = 1e-3,
    max_passes: int = 200,
) -> SvmModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    classes = np.unique(y)
    if len(classes) < 2:
        raise ValueError("SVM training requires both classes present")
    scaling = standardize_fit(X, feature_names)
    Z = standardize_apply(scaling, X)
    if kernel == "rbf" and gamma is None:
        gamma = 1.0 / X.shape[1]
    spec = KernelSpec(kind=kernel, gamma=gamma if kernel == "rbf" else None)
    signs = np.where(y == 1, 1.0, -1.0)
    K = kernel_matrix(spec, Z, Z)
    alpha, b, _ = smo_solve(K, signs, C=C, tol=tol, max_passes=max_passes)
    sv = alpha > 0.0
    return SvmModel(
        feature_names=tuple(feature_names),
        kernel=spec,
        C=C,
        support_vectors=Z[sv].copy(),
        support_labels=signs[sv].copy(),
        alphas=alpha[sv].copy(),
        bias=float(b),
        scaling=scaling,
    )


def decision_values(model: SvmModel, X: np.ndarray) -> np.ndarray:
    Z = standardize_apply(model.scaling, np.atleast_2d(np.asarray(X, dtype=np.float64)))
    K = kernel_matrix(model.kernel, Z, model.support_vectors)
    return K @ (model.alphas * model.support_labels) + model.bias


def svm_predict(model: SvmModel, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(labels, decision values); label is 1 exactly when f(x) > 0."""
    f = decision_values(model, X)
    return np.where(f > 0.0, 1, 2).astype(np.int64), f
