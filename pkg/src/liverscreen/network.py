"""Feedforward network: a literal threshold unit and a trainable sibling.

The unit-step neuron computes step(sum(w * x) - u) with step(0) = 0. The
trainable network keeps that layer form, z = W a - u, but swaps the step for
a logistic activation so gradients exist, and trains by full-batch gradient
descent on the summed squared error E = 0.5 * sum((y - t)^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def threshold_unit(w, x, u: float) -> int:
    """Unit-step neuron; returns 1 when sum(w * x) exceeds the threshold u."""
    w = np.asarray(w, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if w.shape != x.shape:
        raise ValueError(f"weight/input length mismatch: {w.shape} vs {x.shape}")
    return 1 if float(w @ x) - u > 0.0 else 0


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass(frozen=True)
class NetworkWeights:
    """Layered weights W^l and unit thresholds u^l (z = W a - u)."""

    weights: tuple[np.ndarray, ...]
    thresholds: tuple[np.ndarray, ...]

    @property
    def architecture(self) -> tuple[int, tuple[int, ...], int]:
        sizes = [self.weights[0].shape[1]] + [W.shape[0] for W in self.weights]
        return sizes[0], tuple(sizes[1:-1]), sizes[-1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, NetworkWeights):
            return NotImplemented
        return len(self.weights) == len(other.weights) and all(
            np.array_equal(a, b) for a, b in zip(self.weights, other.weights)
        ) and all(
            np.array_equal(a, b) for a, b in zip(self.thresholds, other.thresholds)
        )


@dataclass(frozen=True)
class TrainConfig:
    rate: float = 0.5
    max_epochs: int = 10_000
    grad_norm_stop: float = 0.01


def init_network(arch: tuple[int, tuple[int, ...], int], seed: int) -> NetworkWeights:
    """Weights and thresholds drawn uniformly from [-0.5, 0.5], layer by layer."""
    n_in, hidden, n_out = arch
    sizes = [n_in, *hidden, n_out]
    rng = np.random.default_rng(seed)
    weights = []
    thresholds = []
    for prev, cur in zip(sizes, sizes[1:]):
        weights.append(rng.uniform(-0.5, 0.5, size=(cur, prev)))
        thresholds.append(rng.uniform(-0.5, 0.5, size=cur))
    return NetworkWeights(weights=tuple(weights), thresholds=tuple(thresholds))


def forward(net: NetworkWeights, x) -> tuple[float, list[np.ndarray]]:
    """Propagate one input vector; returns (output, activations per layer)."""
    a = np.asarray(x, dtype=np.float64)
    if a.shape != (net.weights[0].shape[1],):
        raise ValueError(f"expected input of length {net.weights[0].shape[1]}, got {a.shape}")
    activations = [a]
    for W, u in zip(net.weights, net.thresholds):
        a = _sigmoid(W @ a - u)
        activations.append(a)
    return float(a[0]), activations


def _forward_batch(net: NetworkWeights, X: np.ndarray) -> list[np.ndarray]:
    acts = [X]
    for W, u in zip(net.weights, net.thresholds):
        acts.append(_sigmoid(acts[-1] @ W.T - u))
    return acts


def sse_loss(net: NetworkWeights, X: np.ndarray, targets: np.ndarray) -> float:
    """E = 0.5 * sum((output - target)^2) over the batch."""
    out = _forward_batch(net, np.atleast_2d(X))[-1][:, 0]
    return float(0.5 * np.sum((out - np.asarray(targets, dtype=np.float64)) ** 2))


def gradient(net: NetworkWeights, X: np.ndarray, targets: np.ndarray):
    """Backpropagated dE/dW and dE/du for the whole batch."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    t = np.asarray(targets, dtype=np.float64)
    acts = _forward_batch(net, X)
    out = acts[-1]
    delta = (out - t[:, None]) * out * (1.0 - out)
    grads_w = []
    grads_u = []
    for l in range(len(net.weights) - 1, -1, -1):
        grads_w.append(delta.T @ acts[l])
        grads_u.append(-delta.sum(axis=0))  # z = W a - u, so dz/du = -1
        if l > 0:
            a = acts[l]
            delta = (delta @ net.weights[l]) * a * (1.0 - a)
    return tuple(reversed(grads_w)), tuple(reversed(grads_u))


def train_network(
    samples: list[tuple[np.ndarray, float]],
    arch: tuple[int, tuple[int, ...], int] = (2, (5,), 1),
    config: TrainConfig | None = None,
    seed: int = 0,
) -> tuple[NetworkWeights, list[float]]:
    """Full-batch gradient descent on SSE; returns (weights, error trace).

    Stops when the gradient infinity-norm falls below ``grad_norm_stop`` or
    after ``max_epochs``. Divergence (non-finite loss) raises with advice to
    lower the rate.
    """
    if not samples:
        raise ValueError("need at least one training sample")
    config = config or TrainConfig()
    X = np.array([np.asarray(x, dtype=np.float64) for x, _ in samples])
    t = np.array([float(target) for _, target in samples])

    net = init_network(arch, seed)
    weights = [W.copy() for W in net.weights]
    thresholds = [u.copy() for u in net.thresholds]
    trace: list[float] = []
    for _ in range(config.max_epochs):
        current = NetworkWeights(tuple(weights), tuple(thresholds))
        loss = sse_loss(current, X, t)
        if not np.isfinite(loss):
            raise ValueError(
                "training diverged (non-finite loss); try a smaller learning rate"
            )
        trace.append(loss)
        gw, gu = gradient(current, X, t)
        gnorm = max(
            max((float(np.abs(g).max(initial=0.0)) for g in gw), default=0.0),
            max((float(np.abs(g).max(initial=0.0)) for g in gu), default=0.0),
        )
        if gnorm < config.grad_norm_stop:
            break
        for W, g in zip(weights, gw):
            W -= config.rate * g
        for u, g in zip(thresholds, gu):
            u -= config.rate * g
    final = NetworkWeights(tuple(w.copy() for w in weights), tuple(u.copy() for u in thresholds))
    trace.append(sse_loss(final, X, t))
    return final, trace
