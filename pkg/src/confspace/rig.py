"""Repeated train-fraction experiment.

For each repeat the table is shuffled once; for each fraction X the first X
of the shuffled rows form the training pool. A sampling policy picks which
training rows to measure, CART is fit on those, and the mean MRE over the
remaining rows is recorded.
"""

import csv
import io
from dataclasses import dataclass

import numpy as np

from ._rng import derive_seed
from .cart import CartParams, fit
from .dataset import shuffle_split
from .sampling import Policy
from .stats import mean_mre

DEFAULT_FRACTIONS = tuple(round(0.1 * i, 1) for i in range(1, 10))


@dataclass(frozen=True)
class FractionResult:
    fraction: float
    mre: tuple  # one mean MRE per repeat
    evaluations: tuple

    @property
    def mean_mre(self):
        return float(np.mean(self.mre))

    @property
    def std_mre(self):
        return float(np.std(self.mre))

    @property
    def mean_evaluations(self):
        return float(np.mean(self.evaluations))


@dataclass(frozen=True)
class RigReport:
    dataset: str
    policy: dict
    repeats: int
    base_seed: int
    seeds: tuple
    results: tuple

    @property
    def fractions(self):
        return [r.fraction for r in self.results]

    def at(self, fraction):
        for r in self.results:
            if abs(r.fraction - fraction) < 1e-9:
                return r
        raise KeyError(fraction)

    def elbow(self, tolerance=1.0):
        """Smallest fraction whose mean MRE is within ``tolerance`` points of the best."""
        best = min(r.mean_mre for r in self.results)
        for r in sorted(self.results, key=lambda r: r.fraction):
            if r.mean_mre <= best + tolerance:
                return r.fraction

    def to_dict(self, elbow_tolerance=1.0):
        return {
            "dataset": self.dataset,
            "policy": self.policy,
            "repeats": self.repeats,
            "base_seed": self.base_seed,
            "seeds": list(self.seeds),
            "elbow": self.elbow(elbow_tolerance),
            "elbow_tolerance": elbow_tolerance,
            "fractions": [
                {
                    "fraction": r.fraction,
                    "mean_mre": r.mean_mre,
                    "std_mre": r.std_mre,
                    "mean_evaluations": r.mean_evaluations,
                    "mre": list(r.mre),
                    "evaluations": list(r.evaluations),
                }
                for r in self.results
            ],
        }

    def to_text(self):
        lines = [
            f"dataset={self.dataset} policy={self.policy['name']} repeats={self.repeats} seed={self.base_seed}",
            f"{'X':>5}  {'mean_mre':>9}  {'std_mre':>9}  {'evals':>8}",
        ]
        for r in self.results:
            lines.append(f"{r.fraction:>5.2f}  {r.mean_mre:>9.3f}  {r.std_mre:>9.3f}  {r.mean_evaluations:>8.1f}")
        lines.append(f"elbow: X={self.elbow()}")
        return "\n".join(lines) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["fraction", "mean_mre", "std_mre", "mean_evaluations"])
        for r in self.results:
            w.writerow([r.fraction, repr(r.mean_mre), repr(r.std_mre), repr(r.mean_evaluations)])
        return buf.getvalue()


def run_once(dataset, policy, fraction, seed, cart_params=None):
    """One shuffle/sample/fit/score pass; returns ``(mean MRE, evaluations)``."""
    split = shuffle_split(dataset, fraction, seed)
    plan, _ = policy.plan(split.train, derive_seed(seed, int(round(fraction * 1000))))
    sample = plan.chosen(split.train)
    model = fit(sample, params=cart_params)
    err = mean_mre(model.predict_many(split.test.X), split.test.y)
    return err, plan.evaluations


def run_rig(dataset, policy=None, fractions=DEFAULT_FRACTIONS, repeats=20, base_seed=0, cart_params=None):
    policy = policy or Policy("s1")
    cart_params = cart_params or CartParams()
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    fractions = [float(f) for f in fractions]
    if not fractions or any(not 0.0 < f < 1.0 for f in fractions):
        raise ValueError("fractions must be a non-empty list in (0, 1)")
    if len(set(fractions)) != len(fractions):
        raise ValueError("duplicate fractions")

    seeds = tuple(derive_seed(base_seed, r) for r in range(repeats))
    per = {f: ([], []) for f in fractions}
    for seed in seeds:
        for f in fractions:
            err, ev = run_once(dataset, policy, f, seed, cart_params)
            per[f][0].append(err)
            per[f][1].append(ev)
    results = tuple(FractionResult(f, tuple(per[f][0]), tuple(per[f][1])) for f in fractions)
    return RigReport(dataset.name, policy.to_dict(), repeats, int(base_seed), seeds, results)
