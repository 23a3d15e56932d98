"""CART regression trees over Boolean configurations.

A node splits on the single feature minimising

    (|A| / N) * sd(A) + (|B| / N) * sd(B)

where ``A``/``B`` are the rows with the feature off/on and ``sd`` is the
population standard deviation of performance. Leaves predict the mean of
their training rows.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dataset import ConfigDataset

# relative slack when comparing split scores, so the compiled and NumPy
# kernels pick the same feature despite different summation order
_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class Leaf:
    prediction: float
    count: int


@dataclass(frozen=True)
class Split:
    feature: int
    left: object  # feature off
    right: object  # feature on
    count: int


@dataclass(frozen=True)
class CartParams:
    min_samples_split: int = 4
    min_samples_leaf: int = 1
    max_depth: int | None = None

    def __post_init__(self):
        if self.min_samples_split < 2:
            raise ValueError("min_samples_split must be >= 2")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")
        if 2 * self.min_samples_leaf > self.min_samples_split:
            raise ValueError("need 2 * min_samples_leaf <= min_samples_split")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")


def best_split(X, y, min_samples_leaf=1):
    """Lowest-index feature attaining the minimal weighted sd, or ``(None, inf)``."""
    scores, ones = _kernels.split_scores(X, y)
    n = len(y)
    allowed = (ones >= min_samples_leaf) & (n - ones >= min_samples_leaf)
    best_f, best = None, np.inf
    for f in np.flatnonzero(allowed & np.isfinite(scores)):
        s = scores[f]
        if best_f is None or s < best - _TIE_RTOL * abs(best):
            best_f, best = int(f), float(s)
    return best_f, best


def _grow(X, y, params, depth):
    n = len(y)
    leaf = Leaf(float(np.mean(y)), n)
    if n < params.min_samples_split:
        return leaf
    if params.max_depth is not None and depth >= params.max_depth:
        return leaf
    if np.all(y == y[0]):
        return leaf
    f, _ = best_split(X, y, params.min_samples_leaf)
    if f is None:
        return leaf
    on = X[:, f] == 1
    return Split(
        f,
        _grow(X[~on], y[~on], params, depth + 1),
        _grow(X[on], y[on], params, depth + 1),
        n,
    )


@dataclass(frozen=True)
class RegressionTree:
    root: object
    arity: int

    def predict(self, config):
        x = np.asarray(config)
        if x.shape != (self.arity,):
            raise ValueError(f"arity mismatch: expected {self.arity}, got {x.shape}")
        node = self.root
        while isinstance(node, Split):
            node = node.right if x[node.feature] else node.left
        return node.prediction

    def predict_many(self, X):
        X = np.asarray(X)
        if X.ndim != 2 or X.shape[1] != self.arity:
            raise ValueError(f"arity mismatch: expected (*, {self.arity}), got {X.shape}")
        out = np.empty(len(X))

        def route(node, idx):
            if isinstance(node, Leaf):
                out[idx] = node.prediction
                return
            on = X[idx, node.feature] != 0
            route(node.left, idx[~on])
            route(node.right, idx[on])

        route(self.root, np.arange(len(X)))
        return out

    def __call__(self, config):
        return self.predict(config)

    def leaves(self):
        stack, out = [self.root], []
        while stack:
            node = stack.pop()
            if isinstance(node, Leaf):
                out.append(node)
            else:
                stack.extend((node.right, node.left))
        return out

    def depth(self):
        def d(node):
            return 0 if isinstance(node, Leaf) else 1 + max(d(node.left), d(node.right))

        return d(self.root)

    def to_dict(self):
        return {"arity": self.arity, "root": _node_to_dict(self.root)}

    @classmethod
    def from_dict(cls, obj):
        return cls(_node_from_dict(obj["root"]), int(obj["arity"]))


def _node_to_dict(node):
    if isinstance(node, Leaf):
        return {"kind": "leaf", "prediction": node.prediction, "count": node.count}
    return {
        "kind": "split",
        "feature": node.feature,
        "count": node.count,
        "left": _node_to_dict(node.left),
        "right": _node_to_dict(node.right),
    }


def _node_from_dict(d):
    if d["kind"] == "leaf":
        return Leaf(float(d["prediction"]), int(d["count"]))
    if d["kind"] == "split":
        return Split(int(d["feature"]), _node_from_dict(d["left"]), _node_from_dict(d["right"]), int(d["count"]))
    raise ValueError(f"unknown node kind {d['kind']!r}")


def fit(X, y=None, params=None):
    """Grow a tree on a ConfigDataset, or on a 0/1 matrix ``X`` with targets ``y``.

    An impure node is split whenever some feature separates its rows and the
    size/depth limits allow it, so with ``min_samples_split=2`` and no depth
    cap distinct training rows are reproduced exactly.
    """
    if isinstance(X, ConfigDataset):
        X, y = X.X, X.y
    params = params or CartParams()
    X = np.asarray(X)
    y = np.asarray(y, dtype=np.float64)
    if len(y) == 0:
        raise ValueError("cannot fit a tree on an empty sample")
    if X.ndim != 2 or len(X) != len(y):
        raise ValueError("X must be a 2-D matrix with one row per target")
    X = np.ascontiguousarray(X != 0, dtype=np.uint8)
    return RegressionTree(_grow(X, y, params, 0), X.shape[1])


def predict(tree, config):
    return tree.predict(config)
