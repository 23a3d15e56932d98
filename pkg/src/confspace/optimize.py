"""Differential evolution over Boolean configurations with a surrogate.

Binary DE: for target ``t`` and three distinct donors ``a, b, c`` the mutant
is ``a`` with each bit where ``b`` and ``c`` disagree flipped with
probability ``F``; the trial takes mutant bits with probability ``CR`` (and
at one forced position), target bits otherwise. Trials that violate the
validity predicate are discarded without asking the surrogate. A valid
trial replaces its target for the next generation only if its predicted
performance is strictly lower.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from ._rng import make_rng


class OptimizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class DeParams:
    population: int = 30
    generations: int = 50
    crossover_rate: float = 0.7
    differential_weight: float = 0.5
    seed: int = 0
    max_init_attempts: int | None = None  # default: 100 * population

    def __post_init__(self):
        if self.population < 4:
            raise ValueError("population must be >= 4")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must lie in [0, 1]")
        if self.differential_weight < 0:
            raise ValueError("differential_weight must be >= 0")


def always_valid(config):
    return True


@dataclass(frozen=True)
class ClauseValidity:
    """Conjunction of ``bit i must equal v`` clauses."""

    clauses: tuple = ()

    def __call__(self, config):
        return all(bool(config[i]) == v for i, v in self.clauses)

    @classmethod
    def from_json(cls, obj, arity=None):
        if isinstance(obj, dict):
            obj = obj.get("clauses", [])
        clauses = []
        for c in obj:
            bit, value = int(c["bit"]), int(c["value"])
            if value not in (0, 1):
                raise ValueError(f"clause value must be 0 or 1, got {value}")
            if bit < 0 or (arity is not None and bit >= arity):
                raise ValueError(f"clause bit {bit} out of range")
            clauses.append((bit, bool(value)))
        return cls(tuple(clauses))

    @classmethod
    def load(cls, path, arity=None):
        with open(path) as fh:
            return cls.from_json(json.load(fh), arity)

    def to_json(self):
        return {"clauses": [{"bit": i, "value": int(v)} for i, v in self.clauses]}


@dataclass
class OptimizationResult:
    best_config: np.ndarray
    predicted_performance: float
    surrogate_calls: int
    history: list = field(default_factory=list)
    rejected: int = 0

    def to_dict(self):
        return {
            "best_config": [int(b) for b in self.best_config],
            "predicted_performance": float(self.predicted_performance),
            "surrogate_calls": int(self.surrogate_calls),
            "rejected_invalid": int(self.rejected),
            "history": [float(h) for h in self.history],
        }


def _initial_population(arity, validity, params, rng):
    cap = params.max_init_attempts or 100 * params.population
    found = []
    for _ in range(cap):
        cand = rng.integers(0, 2, size=arity, dtype=np.uint8)
        if validity(cand):
            found.append(cand)
            if len(found) == params.population:
                break
    if not found:
        raise OptimizationError(f"no valid configuration found within {cap} attempts")
    # too few distinct valid draws: repeat the ones we have
    while len(found) < params.population:
        found.append(found[len(found) % len(found)].copy())
    return np.array(found, dtype=np.uint8)


def de_optimize(surrogate, arity, validity=None, params=None):
    """Minimise ``surrogate`` over valid 0/1 vectors of length ``arity``.

    ``surrogate`` is any callable on a uint8 vector (a fitted
    :class:`~confspace.cart.RegressionTree` works directly).
    """
    if arity < 1:
        raise ValueError("arity must be >= 1")
    validity = validity or always_valid
    params = params or DeParams()
    rng = make_rng(params.seed)
    P = params.population
    F = min(1.0, params.differential_weight)

    pop = _initial_population(arity, validity, params, rng)
    fit = np.array([float(surrogate(x)) for x in pop])
    calls = P
    rejected = 0
    history = [float(fit.min())]

    for _ in range(params.generations):
        nxt_pop, nxt_fit = pop.copy(), fit.copy()
        for i in range(P):
            others = np.delete(np.arange(P), i)
            a, b, c = pop[rng.choice(others, size=3, replace=False)]
            flip = (b ^ c) & (rng.random(arity) < F)
            mutant = a ^ flip.astype(np.uint8)
            take = rng.random(arity) < params.crossover_rate
            take[rng.integers(arity)] = True
            trial = np.where(take, mutant, pop[i]).astype(np.uint8)
            if np.array_equal(trial, pop[i]):
                continue
            if not validity(trial):
                rejected += 1
                continue
            f = float(surrogate(trial))
            calls += 1
            if f < fit[i]:
                nxt_pop[i], nxt_fit[i] = trial, f
        pop, fit = nxt_pop, nxt_fit
        history.append(float(fit.min()))

    best = int(np.argmin(fit))
    return OptimizationResult(pop[best].copy(), float(fit[best]), calls, history, rejected)


def exhaustive_argmin(surrogate, arity, validity=None):
    """Brute-force optimum over all 2**arity configurations (small arity only)."""
    validity = validity or always_valid
    best_x, best_f = None, np.inf
    for code in range(2**arity):
        x = np.array([(code >> (arity - 1 - j)) & 1 for j in range(arity)], dtype=np.uint8)
        if not validity(x):
            continue
        f = float(surrogate(x))
        if f < best_f:
            best_x, best_f = x, f
    return best_x, best_f
