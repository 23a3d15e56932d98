# Compiled versions of the loops in _pykernels.py; same signatures and results.
import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, sqrt

cnp.import_array()


def sq_dists_to(const double[:, ::1] X, const double[::1] v):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, j
    cdef double acc, t
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        acc = 0.0
        for j in range(d):
            t = X[i, j] - v[j]
            acc += t * t
        o[i] = acc
    return out


def split_scores(const unsigned char[:, ::1] X, const double[::1] y):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, f
    cdef long long c1
    cdef double s0, s1, m0, m1, dev0, dev1, t
    scores = np.full(d, np.inf, dtype=np.float64)
    ones = np.zeros(d, dtype=np.int64)
    cdef double[::1] sc = scores
    cdef long long[::1] on = ones
    for f in range(d):
        c1 = 0
        s0 = 0.0
        s1 = 0.0
        for i in range(n):
            if X[i, f]:
                c1 += 1
                s1 += y[i]
            else:
                s0 += y[i]
        on[f] = c1
        if c1 == 0 or c1 == n:
            continue
        m1 = s1 / c1
        m0 = s0 / (n - c1)
        dev0 = 0.0
        dev1 = 0.0
        for i in range(n):
            if X[i, f]:
                t = y[i] - m1
                dev1 += t * t
            else:
                t = y[i] - m0
                dev0 += t * t
        sc[f] = (<double>c1 / n) * sqrt(dev1 / c1) + (<double>(n - c1) / n) * sqrt(dev0 / (n - c1))
    return scores, ones


def pair_counts(const double[:, ::1] X, const double[::1] radii):
    cdef Py_ssize_t k = X.shape[0], d = X.shape[1], R = radii.shape[0]
    cdef Py_ssize_t i, j, m, lo, hi, mid
    cdef double acc, t, dist
    hist = np.zeros(R + 1, dtype=np.int64)
    cdef long long[::1] h = hist
    for i in range(k - 1):
        for j in range(i + 1, k):
            acc = 0.0
            for m in range(d):
                t = X[j, m] - X[i, m]
                acc += t * t
            dist = sqrt(acc)
            # first radius strictly greater than dist
            lo = 0
            hi = R
            while lo < hi:
                mid = (lo + hi) >> 1
                if radii[mid] <= dist:
                    lo = mid + 1
                else:
                    hi = mid
            h[lo] += 1
    return np.cumsum(hist)[:R]
