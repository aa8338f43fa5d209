import numpy as np
import pytest

from liverscreen.hybrid import (
    DEFAULT_RECIPE,
    HybridModel,
    build_hybrid_inputs,
    predict_any,
    predict_neurosvm,
    predict_neurosvm_batch,
    train_neurosvm,
)
from liverscreen.learners import SvmSpec, predict_batch, train
from liverscreen.network import NetworkWeights
from tests.conftest import make_dataset


def separable_dataset():
    xs = [-3.0, -2.5, -2.0, -1.5, 2.0, 2.5, 3.0, 3.5]
    return make_dataset(xs, [1, 1, 1, 1, 2, 2, 2, 2])


class TestHybridInputs:
    def test_zero_decision_value_pins_boundary(self):
        d = make_dataset([-1.0, 1.0], [1, 2])
        svm = train(SvmSpec(kernel="linear", C=10.0), d, seed=0)
        inputs = build_hybrid_inputs(svm, {"x": 0.0})
        # f(0) = 0 exactly; f > 0 decides class 1, so the flag is 0 here
        assert inputs[0] == 0.0
        assert inputs[1] == 0.0

    def test_training_point_flag(self):
        d = separable_dataset()
        svm = train(SvmSpec(kernel="linear", C=10.0), d, seed=0)
        inputs = build_hybrid_inputs(svm, {"x": -3.0})
        assert inputs[1] == 1.0
        assert inputs[0] > 0.0

    def test_deterministic(self):
        d = separable_dataset()
        svm = train(SvmSpec(), d, seed=0)
        a = build_hybrid_inputs(svm, {"x": 0.7})
        b = build_hybrid_inputs(svm, {"x": 0.7})
        assert np.array_equal(a, b)

    def test_unknown_recipe_item(self):
        d = separable_dataset()
        svm = train(SvmSpec(), d, seed=0)
        with pytest.raises(ValueError, match="signal"):
            build_hybrid_inputs(svm, {"x": 0.0}, recipe=("margin",))


class TestTrainNeurosvm:
    def test_separable_training_accuracy_is_one(self):
        d = separable_dataset()
        model = train_neurosvm(d, svm_spec=SvmSpec(kernel="linear", C=10.0), seed=1)
        X = d.feature_matrix(model.feature_names)
        labels, _ = predict_neurosvm_batch(model, X)
        assert np.array_equal(labels, d.labels())

    def test_tracks_svm_on_noisy_data(self):
        rng = np.random.default_rng(3)
        xs = rng.normal(size=60).tolist()
        labels = [(1 if x + rng.normal(scale=0.4) < 0 else 2) for x in xs]
        labels[0], labels[1] = 1, 2
        d = make_dataset(xs, labels)
        model = train_neurosvm(d, seed=5)
        X = d.feature_matrix(model.feature_names)
        y = d.labels()
        svm_acc = float(np.mean(predict_batch(model.svm, X)[0] == y))
        hyb_acc = float(np.mean(predict_neurosvm_batch(model, X)[0] == y))
        assert hyb_acc >= svm_acc - 0.01

    def test_deterministic(self):
        d = separable_dataset()
        a = train_neurosvm(d, seed=11)
        b = train_neurosvm(d, seed=11)
        assert a.network == b.network
        assert np.array_equal(a.svm.alphas, b.svm.alphas)


class TestPredictNeurosvm:
    def test_score_exactly_half_is_class_2(self):
        d = make_dataset([-1.0, 1.0], [1, 2])
        svm = train(SvmSpec(kernel="linear", C=10.0), d, seed=0)
        zero_net = NetworkWeights(
            weights=(np.zeros((5, 2)), np.zeros((1, 5))),
            thresholds=(np.zeros(5), np.zeros(1)),
        )
        model = HybridModel(svm=svm, network=zero_net, input_recipe=DEFAULT_RECIPE)
        label, score = predict_neurosvm(model, {"x": 0.3})
        assert score == 0.5
        assert label == 2

    def test_toy_training_points_all_correct(self):
        d = separable_dataset()
        model = train_neurosvm(d, svm_spec=SvmSpec(kernel="linear", C=10.0), seed=2)
        for rec in d.records:
            label, _ = predict_any(model, {"x": rec.values[0]})
            assert label == rec.label

    def test_same_record_twice_identical(self):
        d = separable_dataset()
        model = train_neurosvm(d, seed=4)
        assert predict_neurosvm(model, {"x": 0.2}) == predict_neurosvm(model, {"x": 0.2})
