"""Measured-configuration tables: loading, validation, export and splitting.

A table has one column per Boolean option (cells strictly ``0``/``1``) and a
performance column holding a finite, strictly positive score.
"""

import csv
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._rng import make_rng

DEFAULT_TARGET = "performance"


class DatasetError(ValueError):
    """Raised for malformed or invalid configuration tables."""


@dataclass(frozen=True)
class MeasuredConfig:
    bits: tuple
    performance: float


class ConfigDataset:
    """Immutable table of distinct Boolean configurations and their performance.

    ``X`` is an ``(N, n)`` uint8 matrix and ``y`` the matching float vector;
    both are read-only views. Row order is significant (splits and clustering
    use row positions).
    """

    def __init__(self, feature_names, X, y, name="dataset", target=DEFAULT_TARGET):
        names = tuple(str(f) for f in feature_names)
        X = np.array(X, dtype=np.int64, copy=True)
        y = np.array(y, dtype=np.float64, copy=True)
        if X.ndim != 2:
            try:
                X = X.reshape(len(y), len(names))
            except ValueError:
                raise DatasetError("row arity mismatch") from None
        _validate(names, X, y)
        self.feature_names = names
        self.name = str(name)
        self.target = str(target)
        self.X = X.astype(np.uint8)
        self.y = y
        self.X.setflags(write=False)
        self.y.setflags(write=False)
        self.duplicates_dropped = 0

    @classmethod
    def from_rows(cls, feature_names, rows, name="dataset", target=DEFAULT_TARGET):
        rows = list(rows)
        X = np.array([[int(bool(b)) for b in r.bits] for r in rows], dtype=np.int64)
        y = np.array([r.performance for r in rows], dtype=np.float64)
        return cls(feature_names, X.reshape(len(rows), len(feature_names)), y, name, target)

    def __len__(self):
        return len(self.y)

    @property
    def n_features(self):
        return len(self.feature_names)

    @property
    def rows(self):
        return [
            MeasuredConfig(tuple(bool(b) for b in x), float(p))
            for x, p in zip(self.X, self.y)
        ]

    def subset(self, indices, name=None):
        idx = np.asarray(indices, dtype=np.intp)
        return ConfigDataset(
            self.feature_names, self.X[idx], self.y[idx], name or self.name, self.target
        )

    def __eq__(self, other):
        if not isinstance(other, ConfigDataset):
            return NotImplemented
        return (
            self.feature_names == other.feature_names
            and self.target == other.target
            and np.array_equal(self.X, other.X)
            and np.array_equal(self.y, other.y)
        )

    __hash__ = None

    def __repr__(self):
        return f"ConfigDataset(name={self.name!r}, rows={len(self)}, features={self.n_features})"

    def to_csv(self, path_or_file):
        if hasattr(path_or_file, "write"):
            self._write_csv(path_or_file)
            return
        with open(path_or_file, "w", newline="") as fh:
            self._write_csv(fh)

    def _write_csv(self, fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(self.feature_names) + [self.target])
        for x, p in zip(self.X, self.y):
            w.writerow([int(b) for b in x] + [repr(float(p))])

    def to_json(self):
        return {
            "name": self.name,
            "feature_names": list(self.feature_names),
            "target": self.target,
            "rows": [
                {"config": [int(b) for b in x], "performance": float(p)}
                for x, p in zip(self.X, self.y)
            ],
        }

    @classmethod
    def from_json(cls, obj):
        rows = obj["rows"]
        names = obj["feature_names"]
        X = np.array([r["config"] for r in rows], dtype=np.int64).reshape(len(rows), len(names))
        y = np.array([r["performance"] for r in rows], dtype=np.float64)
        return cls(names, X, y, obj.get("name", "dataset"), obj.get("target", DEFAULT_TARGET))


def _validate(names, X, y):
    if not names:
        raise DatasetError("dataset has no feature columns")
    if any(not n for n in names):
        raise DatasetError("empty feature name")
    if len(set(names)) != len(names):
        raise DatasetError("duplicate feature names")
    if len(y) == 0:
        raise DatasetError("empty dataset")
    if X.shape != (len(y), len(names)):
        raise DatasetError(f"row arity mismatch: expected {len(names)} features")
    if not np.isin(X, (0, 1)).all():
        raise DatasetError("non-binary feature cell")
    if not np.isfinite(y).all():
        raise DatasetError("non-finite performance")
    if (y <= 0).any():
        raise DatasetError("non-positive performance")
    if len(np.unique(X, axis=0)) != len(X):
        raise DatasetError("duplicate configurations")


def load_csv(path, target=None, name=None):
    """Read a measured table from CSV.

    ``target`` names the performance column; by default it is the last
    column. Repeated configurations keep their first occurrence and a
    warning reports how many were dropped (see ``duplicates_dropped``).
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"missing file: {path}")
    with open(path, newline="") as fh:
        records = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not records:
        raise DatasetError("empty dataset: no header row")
    header = [h.strip() for h in records[0]]
    if len(header) < 2:
        raise DatasetError("need at least one feature column and a performance column")
    if target is None:
        t_col = len(header) - 1
    elif target in header:
        t_col = header.index(target)
    else:
        raise DatasetError(f"performance column {target!r} not in header")
    f_cols = [i for i in range(len(header)) if i != t_col]
    names = [header[i] for i in f_cols]

    bits, perf = [], []
    for lineno, rec in enumerate(records[1:], start=2):
        if len(rec) != len(header):
            raise DatasetError(f"line {lineno}: ragged row ({len(rec)} cells, expected {len(header)})")
        row = []
        for i in f_cols:
            cell = rec[i].strip()
            if cell not in ("0", "1"):
                raise DatasetError(f"line {lineno}: non-binary feature cell {cell!r} in {header[i]!r}")
            row.append(int(cell))
        try:
            p = float(rec[t_col])
        except ValueError:
            raise DatasetError(f"line {lineno}: non-numeric performance {rec[t_col]!r}") from None
        if not math.isfinite(p):
            raise DatasetError(f"line {lineno}: non-finite performance")
        if p <= 0:
            raise DatasetError(f"line {lineno}: non-positive performance {p!r}")
        bits.append(row)
        perf.append(p)
    if not bits:
        raise DatasetError("empty dataset: header only")

    X = np.array(bits, dtype=np.int64)
    y = np.array(perf, dtype=np.float64)
    _, first = np.unique(X, axis=0, return_index=True)
    keep = np.sort(first)
    dropped = len(X) - len(keep)
    if dropped:
        warnings.warn(f"{path.name}: collapsed {dropped} duplicate configuration(s)", stacklevel=2)
    ds = ConfigDataset(names, X[keep], y[keep], name or path.stem, header[t_col])
    ds.duplicates_dropped = dropped
    return ds


def load_json(path):
    with open(path) as fh:
        return ConfigDataset.from_json(json.load(fh))


@dataclass(frozen=True)
class SplitPair:
    train: ConfigDataset
    test: ConfigDataset
    fraction: float
    seed: int
    train_index: tuple
    test_index: tuple


def train_size(n, fraction):
    # the epsilon keeps e.g. 0.29 * 100 from flooring to 28
    return math.floor(fraction * n + 1e-9)


def shuffle_split(dataset, fraction, seed):
    """Shuffle rows with ``seed`` and cut off the first ``floor(fraction*N)`` as train.

    The same seed yields the same permutation for every fraction, so a sweep
    over fractions studies growing prefixes of one shuffled table.
    """
    if not 0.0 < fraction < 1.0:
        raise DatasetError(f"fraction must lie in (0, 1), got {fraction}")
    n = len(dataset)
    order = make_rng(seed).permutation(n)
    k = train_size(n, fraction)
    if k == 0 or k == n:
        raise DatasetError(f"fraction {fraction} of {n} rows leaves an empty side")
    tr, te = order[:k], order[k:]
    return SplitPair(
        dataset.subset(tr, f"{dataset.name}/train"),
        dataset.subset(te, f"{dataset.name}/test"),
        float(fraction),
        int(seed),
        tuple(int(i) for i in tr),
        tuple(int(i) for i in te),
    )
