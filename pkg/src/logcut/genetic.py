"""Seeded real-coded genetic algorithm for maximising black-box objectives.

Operators: tournament-of-2 selection from the fittest ``parents_fraction``
of the population, per-gene uniform crossover, per-gene uniform-reset
mutation, and ``elitism_count`` survivors copied unchanged. Every random
draw for child ``i`` of generation ``g`` comes from a stream keyed by
``(seed, g, i)``, so running the fitness calls concurrently does not change
the result.
"""
from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = ["GAConfig", "RunResult", "optimize", "with_noise"]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GAConfig:
    population: int = 14
    max_iterations: int = 200
    mutation_prob: float = 0.1
    crossover_prob: float = 0.5
    elitism_count: int = 1
    parents_fraction: float = 0.3
    bounds: tuple[tuple[float, float], ...] | None = None
    seed: int = 0
    stall_limit: int | None = None

    def __post_init__(self):
        if self.population < 2:
            raise ValueError("population must be >= 2")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError("mutation_prob must lie in [0, 1]")
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ValueError("crossover_prob must lie in [0, 1]")
        if not 0 <= self.elitism_count < self.population:
            raise ValueError("elitism_count must satisfy 0 <= elitism_count < population")
        if not 0.0 < self.parents_fraction <= 1.0:
            raise ValueError("parents_fraction must lie in (0, 1]")
        if self.stall_limit is not None and self.stall_limit < 1:
            raise ValueError("stall_limit must be >= 1")
        if self.bounds is not None:
            b = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
            if any(not lo < hi for lo, hi in b):
                raise ValueError("every bound needs lo < hi")
            object.__setattr__(self, "bounds", b)

    def box(self, dim: int) -> np.ndarray:
        """``(dim, 2)`` array of bounds; default ``[0, 2*pi]`` per variable."""
        if self.bounds is None:
            return np.tile([0.0, TWO_PI], (dim, 1))
        if len(self.bounds) == 1:
            return np.tile(self.bounds[0], (dim, 1))
        if len(self.bounds) != dim:
            raise ValueError(f"config has {len(self.bounds)} bounds for {dim} variables")
        return np.array(self.bounds, dtype=float)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bounds"] = None if self.bounds is None else [list(b) for b in self.bounds]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GAConfig":
        d = dict(d)
        if d.get("bounds") is not None:
            d["bounds"] = tuple(tuple(b) for b in d["bounds"])
        return cls(**d)


@dataclass
class RunResult:
    best_xs: np.ndarray
    best_objective: float
    history: list[float] = field(default_factory=list)
    evaluations: int = 0
    nan_evaluations: int = 0

    def to_dict(self) -> dict:
        return {
            "best_xs": [float(v) for v in self.best_xs],
            "best_objective": float(self.best_objective),
            "history": [float(v) for v in self.history],
            "evaluations": self.evaluations,
            "nan_evaluations": self.nan_evaluations,
        }


def optimize(objective: Callable[[np.ndarray], float], config: GAConfig, dim: int | None = None,
             workers: int = 1) -> RunResult:
    """Maximise ``objective`` over the box given by ``config``.

    Internally the negated objective is minimised. The whole population,
    elites included, is re-evaluated every generation so a noise-inflated
    score never outlives its generation. ``best_xs``/``best_objective``
    track the best value ever observed. NaN fitness counts as ``-inf`` and
    is tallied in ``nan_evaluations``.
    """
    if dim is None:
        if config.bounds is None:
            raise ValueError("pass dim or give per-variable bounds in the config")
        dim = len(config.bounds)
    if dim < 1:
        raise ValueError("dim must be >= 1")
    box = config.box(dim)
    lo, hi = box[:, 0], box[:, 1]
    pop_size = config.population
    n_elite = config.elitism_count
    pool_size = max(2, math.ceil(config.parents_fraction * pop_size))
    pool_size = min(pool_size, pop_size)
    seed = config.seed

    nan_count = 0
    evaluations = 0
    executor = ThreadPoolExecutor(workers) if workers > 1 else None

    def evaluate(pop: np.ndarray) -> np.ndarray:
        nonlocal nan_count, evaluations
        rows = [row.copy() for row in pop]
        raw = list(executor.map(objective, rows)) if executor else [objective(r) for r in rows]
        values = np.array(raw, dtype=float)
        bad = np.isnan(values)
        nan_count += int(bad.sum())
        evaluations += len(rows)
        # minimise the negated objective
        return np.where(bad, np.inf, -values)

    try:
        pop = np.array([np.random.default_rng([seed, 0, i]).uniform(lo, hi) for i in range(pop_size)])
        cost = evaluate(pop)
        best_i = int(np.argmin(cost))
        best_cost, best_x = cost[best_i], pop[best_i].copy()
        history: list[float] = []
        stall = 0
        for gen in range(1, config.max_iterations + 1):
            order = np.argsort(cost, kind="stable")
            pool = order[:pool_size]
            children = [pop[order[k]].copy() for k in range(n_elite)]
            for i in range(pop_size - n_elite):
                rng = np.random.default_rng([seed, gen, i])
                a, b = (_tournament(rng, pool, cost) for _ in range(2))
                take_b = rng.random(dim) < config.crossover_prob
                child = np.where(take_b, pop[b], pop[a])
                mutate = rng.random(dim) < config.mutation_prob
                child = np.where(mutate, rng.uniform(lo, hi), child)
                children.append(np.clip(child, lo, hi))
            pop = np.array(children)
            cost = evaluate(pop)
            i = int(np.argmin(cost))
            if cost[i] < best_cost:
                best_cost, best_x = cost[i], pop[i].copy()
                stall = 0
            else:
                stall += 1
            history.append(float(-best_cost))
            if config.stall_limit is not None and stall >= config.stall_limit:
                break
    finally:
        if executor:
            executor.shutdown()

    return RunResult(best_x, float(-best_cost), history, evaluations, nan_count)


def _tournament(rng: np.random.Generator, pool: np.ndarray, cost: np.ndarray) -> int:
    i, j = rng.choice(pool, size=2, replace=True)
    return int(i if cost[i] <= cost[j] else j)


def with_noise(objective: Callable[[np.ndarray], float], level: float,
               seed: int) -> Callable[[np.ndarray], float]:
    """Wrap ``objective`` with multiplicative noise ``1 + level * U(-1, 1)``.

    Call ``k`` draws from a stream seeded by ``(seed, k)``.
    """
    if level < 0:
        raise ValueError("noise level must be >= 0")
    if level == 0:
        return objective
    counter = 0
    lock = threading.Lock()

    def noisy(x: Sequence[float]) -> float:
        nonlocal counter
        with lock:
            k = counter
            counter += 1
        u = np.random.default_rng([seed, k]).uniform(-1.0, 1.0)
        return objective(x) * (1.0 + level * u)

    return noisy
