"""Synthetic measured tables with known structure."""

import itertools

import numpy as np

from ._rng import make_rng
from .dataset import ConfigDataset


def full_space(n_features):
    """All ``2**n`` configurations in binary counting order (first feature is the high bit)."""
    return np.array(list(itertools.product((0, 1), repeat=n_features)), dtype=np.uint8)


def additive_dataset(n_features=10, noise=0.01, seed=0, base=100.0, weights=None, name="additive"):
    """Every configuration of ``n_features`` options with additive performance.

    performance = (base + sum(w_i * x_i)) * (1 + noise * e),  e ~ N(0, 1)

    Weights default to ``U(1, 10)`` draws from ``seed``.
    """
    rng = make_rng(seed)
    if weights is None:
        weights = rng.uniform(1.0, 10.0, size=n_features)
    weights = np.asarray(weights, dtype=np.float64)
    X = full_space(n_features)
    clean = base + X @ weights
    y = clean * (1.0 + noise * rng.standard_normal(len(X)))
    y = np.maximum(y, 1e-9 * clean)
    names = [f"f{i}" for i in range(n_features)]
    return ConfigDataset(names, X, y, name=name)


def random_distinct_dataset(n_rows, n_features, seed=0, name="random"):
    """``n_rows`` distinct random configurations with random positive performance."""
    if n_rows > 2**n_features:
        raise ValueError("more rows requested than distinct configurations exist")
    rng = make_rng(seed)
    codes = rng.choice(2**n_features, size=n_rows, replace=False)
    X = ((codes[:, None] >> np.arange(n_features - 1, -1, -1)) & 1).astype(np.uint8)
    y = rng.uniform(1.0, 100.0, size=n_rows)
    return ConfigDataset([f"f{i}" for i in range(n_features)], X, y, name=name)
