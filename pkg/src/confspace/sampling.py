"""Sampling policies: which rows get their performance "measured".

Measuring is a lookup in the table; ``SamplePlan.evaluations`` is the number
of lookups a policy pays for and is the budget reported everywhere else.

Policies over a cluster tree:

* ``s1`` - one random row per leaf.
* ``s2`` - the two poles (East and West) of every leaf.
* ``s3`` - measure every leaf row, keep the fastest one.

Baselines over the raw row set:

* ``random`` - ``k`` distinct rows.
* ``progressive`` - ``rounds`` steps of ``n_features`` random rows.
* ``full`` - every row (the all-data baseline).
"""

from dataclasses import dataclass

import numpy as np

from ._rng import derive_seed, make_rng
from .spectral import SpectralParams, _poles, where_cluster

POLICIES = ("s1", "s2", "s3", "random", "progressive", "full")
TREE_POLICIES = ("s1", "s2", "s3")


class SamplingError(ValueError):
    pass


@dataclass(frozen=True)
class SamplePlan:
    policy: str
    indices: tuple
    evaluations: int

    def chosen(self, data):
        """The selected rows of ``data`` (a ConfigDataset) as a new dataset."""
        return data.subset(list(self.indices))

    def to_dict(self):
        return {
            "policy": self.policy,
            "indices": [int(i) for i in self.indices],
            "evaluations": int(self.evaluations),
        }


def _plan(policy, indices, evaluations=None):
    idx = tuple(int(i) for i in indices)
    return SamplePlan(policy, idx, len(idx) if evaluations is None else int(evaluations))


def sample_s1(tree, seed):
    picks = []
    for k, leaf in enumerate(tree.leaves()):
        rng = make_rng(derive_seed(seed, k))
        picks.append(leaf.indices[int(rng.integers(len(leaf)))])
    return _plan("s1", picks)


def sample_s2(tree):
    """East and West of every leaf, recomputed with the leaf's own seed.

    A single-row leaf contributes its only row; a leaf whose rows all
    coincide contributes its two lowest-indexed rows.
    """
    X = tree.points
    picks = []
    for leaf in tree.leaves():
        idx = leaf.indices
        if len(idx) == 1:
            picks.append(idx[0])
            continue
        line, _ = _poles(X[idx], leaf.seed)
        if line.degenerate:
            picks.extend(idx[:2])
        else:
            picks.extend((idx[line.west_index], idx[line.east_index]))
    return _plan("s2", picks)


def sample_s3(tree):
    y = getattr(tree.data, "y", None)
    if y is None:
        raise SamplingError("s3 needs performance values; cluster a ConfigDataset")
    idx = np.sort(np.concatenate([leaf.indices for leaf in tree.leaves()]))
    best = idx[int(np.argmin(y[idx]))]
    return _plan("s3", [best], evaluations=len(idx))


def sample_random_k(rows, k, seed):
    n = rows if isinstance(rows, int) else len(rows)
    if not 1 <= k <= n:
        raise SamplingError(f"k={k} outside [1, {n}]")
    pick = make_rng(seed).choice(n, size=k, replace=False)
    return _plan("random", np.sort(pick))


def sample_progressive_2n(rows, n_features, rounds=2, seed=0):
    """Cumulative random sample grown in steps of ``n_features`` rows.

    The sample after round ``r`` is the first ``r * n_features`` rows of one
    seeded permutation, so earlier rounds are prefixes of later ones.
    """
    n = rows if isinstance(rows, int) else len(rows)
    if rounds < 1 or n_features < 1:
        raise SamplingError("rounds and n_features must be >= 1")
    size = rounds * n_features
    if size > n:
        raise SamplingError(f"progressive sample of {size} rows exceeds the {n} available")
    order = make_rng(seed).permutation(n)
    return _plan("progressive", np.sort(order[:size]))


def sample_full(rows):
    n = rows if isinstance(rows, int) else len(rows)
    return _plan("full", range(n))


@dataclass(frozen=True)
class Policy:
    """A sampling policy with its parameters, applicable to any training table."""

    name: str = "s1"
    leaf_threshold_multiplier: float = 1.0
    k: int | None = None
    rounds: int = 2

    def __post_init__(self):
        if self.name not in POLICIES:
            raise SamplingError(f"unknown policy {self.name!r}; choose from {', '.join(POLICIES)}")
        if self.name == "random" and self.k is None:
            raise SamplingError("policy 'random' needs k")

    def plan(self, dataset, seed):
        """Select rows of ``dataset``; returns ``(SamplePlan, ClusterTree or None)``."""
        if self.name in TREE_POLICIES:
            params = SpectralParams(self.leaf_threshold_multiplier, derive_seed(seed, 1))
            tree = where_cluster(dataset, params)
            if self.name == "s1":
                return sample_s1(tree, derive_seed(seed, 2)), tree
            if self.name == "s2":
                return sample_s2(tree), tree
            return sample_s3(tree), tree
        if self.name == "random":
            return sample_random_k(len(dataset), self.k, seed), None
        if self.name == "progressive":
            return sample_progressive_2n(len(dataset), dataset.n_features, self.rounds, seed), None
        return sample_full(len(dataset)), None

    def to_dict(self):
        d = {"name": self.name}
        if self.name in TREE_POLICIES:
            d["leaf_threshold_multiplier"] = self.leaf_threshold_multiplier
        if self.name == "random":
            d["k"] = self.k
        if self.name == "progressive":
            d["rounds"] = self.rounds
        return d
