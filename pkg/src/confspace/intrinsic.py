"""Correlation (fractal) dimension of a point set.

``C(r)`` is the fraction of point pairs closer than ``r``; the dimension is
the mean slope of ``ln C(r)`` against ``ln r`` over a log-spaced grid of
radii. Boolean configurations are treated as 0/1 vectors under the same
Euclidean distance used for clustering.
"""

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .spectral import as_points

DEFAULT_PERCENTILES = (1.0, 10.0)
_NUDGE = 1.0 + 1e-9


class DimensionError(ValueError):
    pass


def _check_points(points):
    X = as_points(points)
    if len(X) < 2:
        raise DimensionError("need at least 2 points")
    return X


def correlation_sums(points, radii):
    """``C(r)`` for every radius in ``radii`` (any order)."""
    X = _check_points(points)
    radii = np.asarray(radii, dtype=np.float64)
    if (radii <= 0).any():
        raise DimensionError("radii must be > 0")
    order = np.argsort(radii, kind="stable")
    counts = np.empty(len(radii), dtype=np.int64)
    counts[order] = _kernels.pair_counts(X, radii[order])
    k = len(X)
    return counts / (k * (k - 1) / 2)


def correlation_sum(points, r):
    if r <= 0:
        raise DimensionError("r must be > 0")
    return float(correlation_sums(points, [r])[0])


def pairwise_distances(points):
    """Condensed vector of all ``k(k-1)/2`` pair distances."""
    X = _check_points(points)
    out = []
    for i in range(len(X) - 1):
        diff = X[i + 1:] - X[i]
        out.append(np.sqrt(np.einsum("ij,ij->i", diff, diff)))
    return np.concatenate(out)


@dataclass(frozen=True)
class DimensionEstimate:
    dimension: float
    r_values: tuple
    c_values: tuple
    slopes: tuple  # slope for each consecutive radius pair; nan where discarded

    @property
    def log_c_values(self):
        with np.errstate(divide="ignore"):
            return tuple(float(v) for v in np.log(self.c_values))

    def to_dict(self):
        return {
            "dimension": self.dimension,
            "r": list(self.r_values),
            "C": list(self.c_values),
            "slopes": [None if not np.isfinite(s) else s for s in self.slopes],
        }

    def table_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "C"])
        for r, c in zip(self.r_values, self.c_values):
            w.writerow([repr(r), repr(c)])
        return buf.getvalue()


def default_radius_range(points, percentiles=DEFAULT_PERCENTILES):
    """Radius range from low percentiles of the pair distances.

    Zero-distance pairs (repeated points) are ignored when the lower
    percentile would otherwise be zero. Both ends are nudged just above the
    percentile distance so that, on lattice data such as Boolean
    configurations, the pairs at that distance are counted by the strict
    ``d < r`` test. If both percentiles fall on the same distance, the upper
    end moves to the next larger distance.
    """
    d = pairwise_distances(points)
    lo, hi = np.percentile(d, percentiles)
    if lo <= 0:
        pos = d[d > 0]
        if pos.size == 0:
            raise DimensionError("all points coincide")
        lo = pos.min()
    if hi <= lo:
        above = d[d > lo]
        if above.size == 0:
            raise DimensionError("all pair distances are equal")
        hi = above.min()
    return float(lo * _NUDGE), float(hi * _NUDGE)


def intrinsic_dimension(points, r0=None, rmax=None, steps=20):
    X = _check_points(points)
    if steps < 2:
        raise DimensionError("steps must be >= 2")
    if r0 is None or rmax is None:
        d0, d1 = default_radius_range(X)
        r0 = d0 if r0 is None else r0
        rmax = d1 if rmax is None else rmax
    if not 0 < r0 < rmax:
        raise DimensionError(f"need 0 < r0 < rmax, got r0={r0}, rmax={rmax}")
    r = np.geomspace(r0, rmax, steps)
    C = correlation_sums(X, r)
    with np.errstate(divide="ignore", invalid="ignore"):
        logc = np.log(C)
        slopes = np.diff(logc) / np.diff(np.log(r))
    keep = (C[:-1] > 0) & (C[1:] > 0) & np.isfinite(slopes)
    if not keep.any():
        raise DimensionError("no usable radius step: C(r) is zero across the grid")
    slopes = np.where(keep, slopes, np.nan)
    return DimensionEstimate(
        float(np.mean(slopes[keep])),
        tuple(float(v) for v in r),
        tuple(float(v) for v in C),
        tuple(float(s) for s in slopes),
    )
