"""From a single threshold neuron to the stacked SVM + network classifier.

Run from the repository root:  python3 demos/04_neurosvm.py
"""

from pathlib import Path

import numpy as np

from liverscreen import (
    SvmSpec,
    evaluate_model,
    handle_missing,
    parse_ilpd,
    split,
    threshold_unit,
    train,
    train_network,
    train_neurosvm,
)
from liverscreen.network import forward

# The unit-step neuron: y = step(sum(w x) - u). With weights (1, 1) and
# threshold 1.5 it is an AND gate.
print("threshold unit as an AND gate:")
for x in ([0, 0], [0, 1], [1, 0], [1, 1]):
    print(f"  {x} -> {threshold_unit([1.0, 1.0], x, 1.5)}")

# The step function has no gradient, so the trainable network swaps it for a
# logistic unit and learns the same gate by full-batch gradient descent.
samples = [
    (np.array([0.0, 0.0]), 0.0),
    (np.array([0.0, 1.0]), 0.0),
    (np.array([1.0, 0.0]), 0.0),
    (np.array([1.0, 1.0]), 1.0),
]
from liverscreen.network import TrainConfig

net, trace = train_network(samples, arch=(2, (5,), 1), config=TrainConfig(rate=0.5), seed=0)
print(f"\n2-5-1 network learned AND in {len(trace) - 1} epochs (SSE {trace[0]:.3f} -> {trace[-1]:.3f})")
for x, target in samples:
    out, _ = forward(net, x)
    print(f"  {x.tolist()} -> {out:.3f} (target {target:.0f})")

# The stacker feeds each record's SVM decision value and predicted label
# into that same 2-5-1 architecture.
DATA = Path(__file__).resolve().parent.parent / "data" / "ilpd.csv"
clean = handle_missing(parse_ilpd(DATA))
result = split(clean, seed=7)
svm = train(SvmSpec(), result.train, seed=7)
hybrid = train_neurosvm(result.train, seed=7)

print("\nILPD, seed 7:")
for name, model in (("svm", svm), ("neurosvm", hybrid)):
    on_train = evaluate_model(model, result.train)
    on_test = evaluate_model(model, result.test)
    print(
        f"  {name:<9} train {100 * on_train.accuracy:5.2f}%"
        f"   test {100 * on_test.accuracy:5.2f}%"
        f"   test rmse {on_test.rmse:.3f}  mape {on_test.mape:.3f}"
    )
print("\n(published training figures for the stacker are not reproducible;")
print(" the comparison harness reports them as a reference line only)")
