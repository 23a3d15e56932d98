"""Error measure, effect size, bootstrap test and Scott-Knott ranking."""

from dataclasses import dataclass

import numpy as np

from ._rng import derive_seed, make_rng

SMALL_EFFECT = 0.6


def mre(predicted, actual):
    """Magnitude of relative error in percent: ``|predicted - actual| / actual * 100``."""
    if actual <= 0:
        raise ValueError(f"actual must be > 0, got {actual}")
    return abs(predicted - actual) / actual * 100.0


def mean_mre(predicted, actual):
    predicted = np.asarray(predicted, dtype=np.float64)
    actual = np.asarray(actual, dtype=np.float64)
    if predicted.shape != actual.shape or actual.size == 0:
        raise ValueError("predicted and actual must be non-empty and the same shape")
    if (actual <= 0).any():
        raise ValueError("actual values must be > 0")
    return float(np.mean(np.abs(predicted - actual) / actual * 100.0))


def _nonempty(xs, ys):
    xs = np.asarray(xs, dtype=np.float64).ravel()
    ys = np.asarray(ys, dtype=np.float64).ravel()
    if xs.size == 0 or ys.size == 0:
        raise ValueError("both samples must be non-empty")
    return xs, ys


def a12(xs, ys):
    """Vargha-Delaney A: P(x > y) with half credit for ties."""
    xs, ys = _nonempty(xs, ys)
    gt = np.count_nonzero(xs[:, None] > ys[None, :])
    eq = np.count_nonzero(xs[:, None] == ys[None, :])
    return (gt + 0.5 * eq) / (xs.size * ys.size)


def bootstrap_significant(xs, ys, iterations=1000, confidence=0.95, seed=0):
    """Two-sided bootstrap test on the difference of means.

    Under the null both samples come from their pooled values; we resample
    each from the pool and call the observed difference significant when it
    falls outside the central ``confidence`` interval of the resampled
    differences.
    """
    xs, ys = _nonempty(xs, ys)
    if iterations < 100:
        raise ValueError("iterations must be >= 100")
    if not 0.0 < confidence < 1.0:
        raise ValueError("confidence must lie in (0, 1)")
    observed = xs.mean() - ys.mean()
    pool = np.concatenate([xs, ys])
    rng = make_rng(seed)
    bx = rng.choice(pool, size=(iterations, xs.size), replace=True).mean(axis=1)
    by = rng.choice(pool, size=(iterations, ys.size), replace=True).mean(axis=1)
    diffs = bx - by
    alpha = 1.0 - confidence
    lo, hi = np.quantile(diffs, [alpha / 2, 1 - alpha / 2])
    return bool(observed < lo or observed > hi)


def different(xs, ys, seed=0, iterations=1000, confidence=0.95, small=SMALL_EFFECT):
    """Significantly different and not merely a small effect."""
    a = a12(xs, ys)
    if max(a, 1.0 - a) < small:
        return False
    return bootstrap_significant(xs, ys, iterations, confidence, seed)


@dataclass(frozen=True)
class RankEntry:
    name: str
    rank: int
    mean: float
    std: float
    n: int
    evaluations: float | None = None


@dataclass(frozen=True)
class RankTable:
    entries: tuple

    def ranks(self):
        return {e.name: e.rank for e in self.entries}

    def to_dict(self):
        return {
            "entries": [
                {
                    "name": e.name,
                    "rank": e.rank,
                    "mean_mre": e.mean,
                    "std_mre": e.std,
                    "n": e.n,
                    "evaluations": e.evaluations,
                }
                for e in self.entries
            ]
        }

    def to_text(self):
        width = max([len("method")] + [len(e.name) for e in self.entries])
        lines = [f"{'rank':>4}  {'method':<{width}}  {'mean':>10}  {'std':>10}  {'evals':>8}"]
        for e in self.entries:
            ev = "-" if e.evaluations is None else f"{e.evaluations:.1f}"
            lines.append(f"{e.rank:>4}  {e.name:<{width}}  {e.mean:>10.3f}  {e.std:>10.3f}  {ev:>8}")
        return "\n".join(lines) + "\n"


def _best_cut(parts):
    """Cut index maximising the between-group sum of squares (first on ties)."""
    allv = np.concatenate(parts)
    mu = allv.mean()
    best_i, best_ss = None, -np.inf
    for i in range(1, len(parts)):
        left = np.concatenate(parts[:i])
        right = np.concatenate(parts[i:])
        ss = left.size * (left.mean() - mu) ** 2 + right.size * (right.mean() - mu) ** 2
        if ss > best_ss:
            best_i, best_ss = i, ss
    return best_i


def scott_knott(groups, seed=0, iterations=1000, confidence=0.95, small=SMALL_EFFECT, evaluations=None):
    """Rank treatments into groups that are statistically indistinguishable.

    Treatments are sorted by mean (ties keep input order). The ordered list
    is cut where the between-group sum of squares is largest; the cut stands
    only if the two halves differ by the bootstrap test and their A12 effect
    is at least ``small``. Accepted cuts are recursed into; ranks are dense,
    starting at 1 for the lowest means.
    """
    if not groups:
        raise ValueError("need at least one group")
    items = []
    for name, vals in groups.items():
        v = np.asarray(vals, dtype=np.float64).ravel()
        if v.size == 0:
            raise ValueError(f"group {name!r} is empty")
        items.append((str(name), v))
    order = sorted(range(len(items)), key=lambda i: (items[i][1].mean(), i))
    items = [items[i] for i in order]

    labels = [0] * len(items)
    counter = [0]

    def recurse(lo, hi, depth_seed):
        parts = [v for _, v in items[lo:hi]]
        if hi - lo > 1:
            cut = _best_cut(parts)
            left = np.concatenate(parts[:cut])
            right = np.concatenate(parts[cut:])
            if different(left, right, depth_seed, iterations, confidence, small):
                recurse(lo, lo + cut, derive_seed(depth_seed, 0))
                recurse(lo + cut, hi, derive_seed(depth_seed, 1))
                return
        counter[0] += 1
        for i in range(lo, hi):
            labels[i] = counter[0]

    recurse(0, len(items), int(seed))
    evaluations = evaluations or {}
    return RankTable(
        tuple(
            RankEntry(name, labels[i], float(v.mean()), float(v.std()), int(v.size), evaluations.get(name))
            for i, (name, v) in enumerate(items)
        )
    )
