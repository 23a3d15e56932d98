import itertools

import numpy as np
import pytest

from confspace import _kernels


def brute_pair_counts(X, radii):
    out = []
    for r in radii:
        n = 0
        for i, j in itertools.combinations(range(len(X)), 2):
            if np.sqrt(np.sum((X[i] - X[j]) ** 2)) < r:
                n += 1
        out.append(n)
    return np.array(out)


def brute_split_scores(X, y):
    n = len(y)
    scores = []
    for f in range(X.shape[1]):
        a, b = y[X[:, f] == 0], y[X[:, f] == 1]
        if len(a) == 0 or len(b) == 0:
            scores.append(np.inf)
        else:
            scores.append(len(a) / n * np.std(a) + len(b) / n * np.std(b))
    return np.array(scores)


def test_backend_name():
    assert _kernels.BACKEND in ("python", "cython")


def test_sq_dists_to(kernel_module):
    rng = np.random.default_rng(0)
    X = rng.integers(0, 2, (50, 7)).astype(np.float64)
    v = X[3].copy()
    got = kernel_module.sq_dists_to(np.ascontiguousarray(X), v)
    assert np.array_equal(got, ((X != v).sum(axis=1)).astype(float))


def test_split_scores_matches_bruteforce(kernel_module):
    rng = np.random.default_rng(1)
    X = rng.integers(0, 2, (40, 6)).astype(np.uint8)
    X[:, 5] = 1  # constant column: no valid split
    y = rng.uniform(1, 100, 40)
    scores, ones = kernel_module.split_scores(X, y)
    np.testing.assert_allclose(scores, brute_split_scores(X, y), rtol=1e-12)
    assert np.array_equal(ones, X.sum(axis=0))
    assert np.isinf(scores[5])


def test_split_scores_pure_sides_are_exact_zero(kernel_module):
    X = np.array([[0], [0], [1], [1]], dtype=np.uint8)
    y = np.array([0.1, 0.1, 0.7, 0.7])
    scores, _ = kernel_module.split_scores(X, y)
    assert scores[0] == 0.0


@pytest.mark.parametrize("boolean", [True, False])
def test_pair_counts_matches_bruteforce(kernel_module, boolean):
    rng = np.random.default_rng(2)
    if boolean:
        X = rng.integers(0, 2, (30, 5)).astype(np.float64)
        radii = np.array([0.5, 1.0, np.sqrt(2), 1.5, 2.0, 2.3])
    else:
        X = rng.random((30, 3))
        radii = np.linspace(0.05, 1.5, 9)
    got = kernel_module.pair_counts(np.ascontiguousarray(X), radii)
    assert np.array_equal(got, brute_pair_counts(X, radii))


def test_backends_agree_on_larger_input():
    from confspace._kernels import _pykernels

    try:
        from confspace._kernels import _ckernels
    except ImportError:
        pytest.skip("compiled kernels not built")
    rng = np.random.default_rng(3)
    X = rng.integers(0, 2, (300, 12)).astype(np.float64)
    radii = np.sqrt(np.arange(1, 13, dtype=float))
    assert np.array_equal(_pykernels.pair_counts(X, radii), _ckernels.pair_counts(X, radii))
    Xb = X.astype(np.uint8)
    y = rng.uniform(1, 10, 300)
    s1, o1 = _pykernels.split_scores(Xb, y)
    s2, o2 = _ckernels.split_scores(Xb, y)
    np.testing.assert_allclose(s1, s2, rtol=1e-12)
    assert np.array_equal(o1, o2)
