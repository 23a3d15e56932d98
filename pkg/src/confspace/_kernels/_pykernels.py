"""NumPy implementations of the hot loops.

These are the reference versions; ``_ckernels`` must agree with them up to
floating point summation order.
"""

import numpy as np


def sq_dists_to(X, v):
    diff = X - v
    return np.einsum("ij,ij->i", diff, diff)


def split_scores(X, y):
    n, d = X.shape
    ones = X.sum(axis=0, dtype=np.int64)
    zeros = n - ones
    scores = np.full(d, np.inf)
    ok = (ones > 0) & (zeros > 0)
    if not ok.any():
        return scores, ones
    on = X.astype(bool)
    off = ~on
    s1 = np.where(on, y[:, None], 0.0).sum(axis=0)
    s0 = np.where(off, y[:, None], 0.0).sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        m1 = s1 / ones
        m0 = s0 / zeros
        dev1 = np.where(on, (y[:, None] - m1[None, :]) ** 2, 0.0).sum(axis=0)
        dev0 = np.where(off, (y[:, None] - m0[None, :]) ** 2, 0.0).sum(axis=0)
        sd1 = np.sqrt(dev1 / ones)
        sd0 = np.sqrt(dev0 / zeros)
    weighted = (ones / n) * sd1 + (zeros / n) * sd0
    scores[ok] = weighted[ok]
    return scores, ones


def pair_counts(X, radii):
    k = X.shape[0]
    hist = np.zeros(len(radii) + 1, dtype=np.int64)
    for i in range(k - 1):
        diff = X[i + 1:] - X[i]
        d = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        idx = np.searchsorted(radii, d, side="right")
        hist += np.bincount(idx, minlength=len(radii) + 1)
    return np.cumsum(hist)[: len(radii)]
