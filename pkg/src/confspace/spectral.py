"""Recursive spectral bisection of a configuration set.

Each node approximates the first principal component by a line between two
far-apart "pole" rows (the FASTMAP heuristic, linear in the number of rows),
projects its rows onto that line and splits them at the median projection.
Recursion stops once a node holds fewer than ``multiplier * sqrt(N0)`` rows,
``N0`` being the size of the root.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._rng import derive_seed, make_rng
from .dataset import ConfigDataset


def as_points(data):
    """Float64 point matrix for a dataset, a list of configurations or an array."""
    if isinstance(data, ConfigDataset):
        return data.X.astype(np.float64)
    pts = np.asarray(data, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts


def distance(a, b):
    """Euclidean distance; on 0/1 vectors this is the square root of the Hamming count."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"arity mismatch: {a.shape} vs {b.shape}")
    d = a - b
    return math.sqrt(float(np.dot(d.ravel(), d.ravel())))


@dataclass(frozen=True, eq=False)
class PoleLine:
    west_index: int
    east_index: int
    west: np.ndarray
    east: np.ndarray
    c: float

    @property
    def degenerate(self):
        return self.c == 0.0


def _poles(X, seed):
    n = len(X)
    if n < 2:
        raise ValueError("need at least 2 rows to find poles")
    start = int(make_rng(seed).integers(n))
    d_start = _kernels.sq_dists_to(X, X[start])
    west = int(np.argmax(d_start))  # argmax returns the lowest index on ties
    d_west = _kernels.sq_dists_to(X, X[west])
    east = int(np.argmax(d_west))
    line = PoleLine(west, east, X[west].copy(), X[east].copy(), math.sqrt(d_west[east]))
    return line, d_west


def find_poles(points, seed):
    """West is the row farthest from a seeded random row; East is farthest from West.

    Uses exactly ``2 * len(points)`` distance evaluations.
    """
    line, _ = _poles(as_points(points), seed)
    return line


def project(x, line):
    """Position of ``x`` along the West->East line by the law of cosines.

    ``project(west) == 0`` and ``project(east) == c``.
    """
    if line.degenerate:
        raise ValueError("cannot project onto a degenerate pole line (c == 0)")
    x = np.asarray(x, dtype=np.float64)
    a2 = float(np.sum((line.west - x) ** 2))
    b2 = float(np.sum((line.east - x) ** 2))
    return (a2 + line.c**2 - b2) / (2.0 * line.c)


def _project_all(X, line, d_west):
    d_east = _kernels.sq_dists_to(X, line.east)
    return (d_west + line.c**2 - d_east) / (2.0 * line.c)


@dataclass(frozen=True)
class SpectralParams:
    leaf_threshold_multiplier: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if not self.leaf_threshold_multiplier > 0:
            raise ValueError("leaf_threshold_multiplier must be > 0")


@dataclass(eq=False)
class ClusterNode:
    indices: np.ndarray
    seed: int
    line: PoleLine | None = None
    children: tuple | None = None
    projections: np.ndarray | None = field(default=None, repr=False)

    @property
    def is_leaf(self):
        return self.children is None

    def __len__(self):
        return len(self.indices)

    def leaves(self):
        if self.is_leaf:
            yield self
        else:
            for child in self.children:
                yield from child.leaves()

    def depth(self):
        if self.is_leaf:
            return 0
        return 1 + max(c.depth() for c in self.children)

    def to_dict(self):
        d = {"size": len(self.indices), "seed": self.seed}
        if self.line is not None:
            d["west"] = int(self.indices[self.line.west_index])
            d["east"] = int(self.indices[self.line.east_index])
            d["c"] = self.line.c
        if self.is_leaf:
            d["rows"] = [int(i) for i in self.indices]
        else:
            d["children"] = [c.to_dict() for c in self.children]
        return d


@dataclass(eq=False)
class ClusterTree:
    """Root of a bisection plus the data it indexes.

    Node ``indices`` are row positions in ``data`` (a ConfigDataset or a point
    matrix).
    """

    data: object
    root: ClusterNode
    threshold: float
    params: SpectralParams

    def leaves(self):
        return list(self.root.leaves())

    @property
    def points(self):
        return as_points(self.data)

    def to_dict(self):
        return {
            "threshold": self.threshold,
            "leaf_threshold_multiplier": self.params.leaf_threshold_multiplier,
            "seed": self.params.seed,
            "n_leaves": len(self.leaves()),
            "root": self.root.to_dict(),
        }


def median_split(projections):
    """Stable order by (projection, position); left gets the first floor(n/2)."""
    n = len(projections)
    order = np.lexsort((np.arange(n), projections))
    half = n // 2
    return order[:half], order[half:]


def where_cluster(data, params=None):
    """Recursively bisect ``data`` at median FASTMAP projections.

    Every node keeps its row indices in ascending order, so position ties
    (pole selection, equal projections) resolve to the lowest original row.

    A node becomes a leaf when it has fewer rows than the threshold, a single
    row, or all its rows coincide (zero-length pole line).
    """
    params = params or SpectralParams()
    X = as_points(data)
    n0 = len(X)
    if n0 < 1:
        raise ValueError("cannot cluster an empty row set")
    threshold = params.leaf_threshold_multiplier * math.sqrt(n0)

    def build(idx, seed):
        node = ClusterNode(idx, seed)
        if len(idx) < threshold or len(idx) < 2:
            return node
        sub = X[idx]
        line, d_west = _poles(sub, seed)
        node.line = line
        if line.degenerate:
            return node
        proj = _project_all(sub, line, d_west)
        node.projections = proj
        left, right = median_split(proj)
        node.children = (
            build(np.sort(idx[left]), derive_seed(seed, 0)),
            build(np.sort(idx[right]), derive_seed(seed, 1)),
        )
        return node

    root = build(np.arange(n0), int(params.seed))
    return ClusterTree(data, root, threshold, params)
