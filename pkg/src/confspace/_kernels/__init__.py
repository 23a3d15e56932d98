"""Hot loops behind a small array API.

The compiled extension is used when it was built; otherwise the NumPy
versions in :mod:`._pykernels` are used. Set ``CONFSPACE_PURE_PYTHON=1``
to force the fallback.

Functions
---------
sq_dists_to(X, v)
    Squared Euclidean distance from every row of ``X`` to ``v``.
split_scores(X, y)
    Weighted population standard deviation of ``y`` for the binary split on
    each column of the 0/1 matrix ``X``; ``inf`` where a side is empty.
    Also returns the per-column count of ones.
pair_counts(X, radii)
    For ascending ``radii``, the number of unordered row pairs of ``X`` whose
    distance is strictly below each radius.
"""

import os

import numpy as np

from . import _pykernels

_impl = _pykernels
BACKEND = "python"

if not os.environ.get("CONFSPACE_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        _impl = _ckernels
        BACKEND = "cython"


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def sq_dists_to(X, v):
    return _impl.sq_dists_to(_f64(X), _f64(v))


def split_scores(X, y):
    return _impl.split_scores(np.ascontiguousarray(X, dtype=np.uint8), _f64(y))


def pair_counts(X, radii):
    X = _f64(X)
    if X.ndim == 1:
        X = X[:, None].copy()
    return _impl.pair_counts(X, _f64(radii))
