import itertools
import statistics

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confspace.cart import CartParams, Leaf, RegressionTree, Split, best_split, fit, predict
from confspace.dataset import ConfigDataset

FULL = CartParams(min_samples_split=2, min_samples_leaf=1)


def oracle_scores(X, y):
    """Weighted population sd of every feature split, by plain Python (inf if one side is empty)."""
    n = len(y)
    out = []
    for f in range(len(X[0])):
        a = [v for row, v in zip(X, y) if not row[f]]
        b = [v for row, v in zip(X, y) if row[f]]
        if not a or not b:
            out.append(float("inf"))
        else:
            out.append(len(a) / n * statistics.pstdev(a) + len(b) / n * statistics.pstdev(b))
    return out


def check_node_optimal(node, X, y):
    if isinstance(node, Leaf):
        assert node.prediction == pytest.approx(float(np.mean(y)), rel=1e-12, abs=1e-12)
        return
    scores = oracle_scores(X.tolist(), y.tolist())
    best = min(scores)
    assert np.isfinite(scores[node.feature])
    assert scores[node.feature] <= best + 1e-9 * max(1.0, abs(best))
    # lowest index among (numerically) tied minima
    tied = [f for f, s in enumerate(scores) if s <= best + 1e-9 * max(1.0, abs(best))]
    assert node.feature == tied[0]
    on = X[:, node.feature] == 1
    check_node_optimal(node.left, X[~on], y[~on])
    check_node_optimal(node.right, X[on], y[on])


def distinct_instance(draw, max_rows=64, max_features=8):
    d = draw(st.integers(1, max_features))
    codes = draw(st.lists(st.integers(0, 2**d - 1), min_size=1, max_size=min(max_rows, 2**d), unique=True))
    X = np.array([[(c >> k) & 1 for k in range(d)] for c in codes], dtype=np.uint8)
    y = np.array(draw(st.lists(st.integers(1, 50), min_size=len(codes), max_size=len(codes))), dtype=float)
    return X, y


def test_constant_performance_single_leaf():
    X = np.array([[0, 1], [1, 0], [1, 1]])
    tree = fit(X, [10.0] * 3, FULL)
    assert isinstance(tree.root, Leaf) and tree.root.prediction == 10.0
    assert predict(tree, [0, 0]) == 10.0


def test_two_samples():
    tree = fit([[0], [1]], [10.0, 20.0], FULL)
    assert isinstance(tree.root, Split) and tree.root.feature == 0
    assert tree.root.left.prediction == 10.0 and tree.root.right.prediction == 20.0


def test_additive_two_features():
    X = [[0, 0], [0, 1], [1, 0], [1, 1]]
    tree = fit(X, [0.0, 1.0, 2.0, 3.0], FULL)
    assert tree.root.feature == 0
    assert oracle_scores(X, [0, 1, 2, 3]) == [0.5, 1.0]
    assert tree.depth() == 2
    assert sorted(leaf.prediction for leaf in tree.leaves()) == [0.0, 1.0, 2.0, 3.0]
    assert tree([1, 1]) == 3.0


def test_default_params_stop_small_nodes():
    tree = fit([[0], [1]], [10.0, 20.0])
    assert isinstance(tree.root, Leaf) and tree.root.prediction == 15.0


def test_xor_is_split_fully():
    # no single split improves the weighted sd of an XOR, yet the rows are separable
    X = [[0, 0], [0, 1], [1, 0], [1, 1]]
    y = [1.0, 2.0, 2.0, 1.0]
    tree = fit(X, y, FULL)
    assert np.array_equal(tree.predict_many(X), y)


def test_max_depth_and_min_leaf():
    X = list(itertools.product((0, 1), repeat=3))
    y = [float(i + 1) for i in range(8)]
    assert fit(X, y, CartParams(2, 1, max_depth=1)).depth() == 1
    assert fit(X, y, CartParams(2, 1, max_depth=0)).depth() == 0
    tree = fit(X, y, CartParams(8, 4))
    assert all(leaf.count >= 4 for leaf in tree.leaves())


@pytest.mark.parametrize("kw", [dict(min_samples_split=1), dict(min_samples_leaf=0),
                                dict(min_samples_split=4, min_samples_leaf=3), dict(max_depth=-1)])
def test_param_validation(kw):
    with pytest.raises(ValueError):
        CartParams(**kw)


def test_errors():
    with pytest.raises(ValueError, match="empty"):
        fit(np.zeros((0, 3)), [])
    tree = fit([[0, 1]], [5.0])
    with pytest.raises(ValueError, match="arity"):
        tree.predict([0, 1, 1])
    with pytest.raises(ValueError, match="arity"):
        tree.predict_many([[0]])


def test_fit_on_dataset_and_json_round_trip():
    ds = ConfigDataset(["a", "b", "c"], list(itertools.product((0, 1), repeat=3)), [float(i + 1) for i in range(8)])
    tree = fit(ds, params=FULL)
    again = RegressionTree.from_dict(tree.to_dict())
    assert again == tree
    assert np.array_equal(again.predict_many(ds.X), ds.y)
    with pytest.raises(ValueError):
        RegressionTree.from_dict({"arity": 1, "root": {"kind": "bogus"}})


def test_best_split_no_candidate():
    f, s = best_split(np.array([[1, 0], [1, 0]], dtype=np.uint8), np.array([1.0, 2.0]))
    assert f is None and s == float("inf")


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_split_optimality_against_oracle(data):
    X, y = distinct_instance(data.draw)
    check_node_optimal(fit(X, y, FULL).root, X, y)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_zero_training_error_and_bounds(data):
    X, y = distinct_instance(data.draw)
    tree = fit(X, y, FULL)
    assert np.array_equal(tree.predict_many(X), y)
    assert all(y.min() <= leaf.prediction <= y.max() for leaf in tree.leaves())
    assert all(tree.predict(x) == v for x, v in zip(X, y))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_duplicate_refit_keeps_predictions(data):
    X, y = distinct_instance(data.draw)
    once = fit(X, y, FULL)
    twice = fit(np.vstack([X, X]), np.concatenate([y, y]), FULL)
    assert np.array_equal(once.predict_many(X), twice.predict_many(X))
    assert sorted(l.prediction for l in once.leaves()) == sorted(l.prediction for l in twice.leaves())


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_prediction_bounds_default_params(data):
    X, y = distinct_instance(data.draw)
    tree = fit(X, y)
    probe = np.array(list(itertools.product((0, 1), repeat=X.shape[1]))[:64])
    p = tree.predict_many(probe)
    assert (p >= y.min() - 1e-9).all() and (p <= y.max() + 1e-9).all()
