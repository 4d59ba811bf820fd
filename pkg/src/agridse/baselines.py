"""Comparison optimizers over the same fleet vectors and objective as the exact solver.

Every optimizer minimizes :meth:`Evaluator.penalized`, i.e. the weighted
objective plus ``lambda`` times the relative constraint violation, so they
can wander through infeasible fleets.  Each run spends at most
``evals`` objective evaluations and returns its best distinct fleets; every
returned design is tagged with its constraint and SAT verdicts, and
infeasible ones are kept rather than dropped.

All randomness comes from ``numpy.random.default_rng(seed)``, so a fixed
seed and fixed parameters reproduce a run exactly.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .constraints import FleetDesign
from .objective import Evaluator

DEFAULT_EVALS = 5000
DEFAULT_POOL = 20

SA = "sa"
GA = "ga"
RANDOM = "random"
DISCRETE = "discrete"
LENGLER = "lengler"
PORTFOLIO = "portfolio"


@dataclass(frozen=True)
class BaselineEntry:
    design: FleetDesign
    x: tuple[int, ...]
    penalized: float
    objective: int            # scaled integer objective, as in the exact solver
    feasible: bool
    sat_valid: bool | None = None


@dataclass
class BaselineRun:
    optimizer_name: str
    seed: int | None
    evaluation_budget: int
    entries: list[BaselineEntry]
    evaluations: int = 0
    wall_time: float = field(default=0.0, compare=False)

    @property
    def pool(self) -> list[FleetDesign]:
        return [e.design for e in self.entries]

    @property
    def best(self) -> BaselineEntry:
        return self.entries[0]

    def best_feasible_objective(self) -> int | None:
        vals = [e.objective for e in self.entries if e.feasible]
        return min(vals) if vals else None


class _Exhausted(Exception):
    pass


class _Tracker:
    """Counts evaluations and remembers every distinct vector seen."""

    def __init__(self, ev: Evaluator, budget: int):
        if budget < 1:
            raise ValueError("evaluation budget must be at least 1")
        self.ev = ev
        self.budget = budget
        self.used = 0
        self.seen: dict[tuple[int, ...], float] = {}

    def __call__(self, x: tuple[int, ...]) -> float:
        if self.used >= self.budget:
            raise _Exhausted
        self.used += 1
        v = self.seen.get(x)
        if v is None:
            v = self.ev.penalized(x)
            self.seen[x] = v
        return v

    def best(self, k: int) -> list[tuple[tuple[int, ...], float]]:
        order = sorted(enumerate(self.seen.items()), key=lambda t: (t[1][1], t[0]))
        return [item for _, item in order[:k]]


def _finish(name: str, seed, tracker: _Tracker, pool_size: int, started: float,
            verify_sat: bool = True, candidates=None) -> BaselineRun:
    from .sat.verify import verify

    ev = tracker.ev
    picked = candidates if candidates is not None else tracker.best(pool_size)
    entries = []
    for x, pen in picked:
        design = ev.design(x)
        feas = ev.is_feasible(x)
        sat = verify(design, ev.scen, bounds=[ev.bounds[i] for i in _line_indices(ev, x)]).valid \
            if verify_sat else None
        entries.append(BaselineEntry(design, x, pen, ev.objective(x), feas, sat))
    return BaselineRun(name, seed, tracker.budget, entries, tracker.used, time.perf_counter() - started)


def _line_indices(ev: Evaluator, x) -> list[int]:
    # indices of the design's lines, in the canonical line order of FleetDesign
    idx = [i for i, v in enumerate(x) if v]
    return sorted(idx, key=lambda i: ev.configs[i].key)


class _Space:
    """Sampling and neighbourhood moves over bounded integer vectors."""

    def __init__(self, ev: Evaluator, rng: np.random.Generator):
        self.ev = ev
        self.rng = rng
        self.ub = list(ev.bounds)
        self.n = len(self.ub)
        self.active = [i for i, u in enumerate(self.ub) if u > 0]
        # configurations that differ from i in exactly one component choice
        parts = [(c.chassis.id, c.motor.id, (c.battery.id, c.battery_count),
                  c.tire.id if c.tire else None, c.compute.id) for c in ev.configs]
        self.swaps = [[j for j in range(self.n) if j != i and self.ub[j] > 0
                       and sum(a != b for a, b in zip(parts[i], parts[j])) == 1]
                      for i in range(self.n)]

    def zeros(self) -> list[int]:
        return [0] * self.n

    def sample(self, max_lines: int = 3) -> tuple[int, ...]:
        """A few active lines with uniform counts; every bounded vector with at most
        ``max_lines`` non-zero entries has positive probability."""
        x = self.zeros()
        if not self.active:
            return tuple(x)
        k = int(self.rng.integers(1, min(max_lines, len(self.active)) + 1))
        for i in self.rng.choice(self.active, size=k, replace=False):
            x[int(i)] = int(self.rng.integers(1, self.ub[int(i)] + 1))
        return tuple(x)

    def sample_box(self) -> tuple[int, ...]:
        return tuple(int(self.rng.integers(0, u + 1)) for u in self.ub)

    def step(self, x: list[int], i: int, size: int = 1) -> None:
        if self.ub[i] == 0:
            return
        if x[i] == 0:
            x[i] = min(size, self.ub[i])
        elif x[i] == self.ub[i]:
            x[i] = max(0, x[i] - size)
        else:
            x[i] = min(self.ub[i], max(0, x[i] + (size if self.rng.random() < 0.5 else -size)))

    def neighbor(self, x: tuple[int, ...]) -> tuple[int, ...]:
        y = list(x)
        used = [i for i, v in enumerate(x) if v]
        if used and self.rng.random() < 0.5:
            i = used[int(self.rng.integers(len(used)))]
            if self.swaps[i]:
                j = self.swaps[i][int(self.rng.integers(len(self.swaps[i])))]
                if y[j] < self.ub[j]:
                    y[i] -= 1
                    y[j] += 1
                    return tuple(y)
        if self.active:
            # bias toward lines already in use so sparse fleets get refined
            pool = used if used and self.rng.random() < 0.5 else self.active
            self.step(y, pool[int(self.rng.integers(len(pool)))])
        return tuple(y)


# ---------------------------------------------------------------------------
# optimizers

def simulated_annealing(ev: Evaluator, seed: int = 0, evals: int = DEFAULT_EVALS,
                        t0: float = 1.0, t_end: float = 1e-3, pool_size: int = DEFAULT_POOL,
                        verify_sat: bool = True) -> BaselineRun:
    """Geometric cooling from ``t0`` to ``t_end``; ``t0 == 0`` accepts no worse move."""
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    space = _Space(ev, rng)
    f = _Tracker(ev, evals)
    try:
        x = space.sample()
        cur = f(x)
        temp = t0
        factor = (t_end / t0) ** (1 / max(1, evals - 1)) if t0 > 0 and t_end > 0 else 0.0
        while True:
            y = space.neighbor(x)
            fy = f(y)
            if fy <= cur or (temp > 0 and rng.random() < math.exp(-(fy - cur) / temp)):
                x, cur = y, fy
            temp *= factor
    except _Exhausted:
        pass
    return _finish(SA, seed, f, pool_size, started, verify_sat)


def genetic_algorithm(ev: Evaluator, seed: int = 0, pop: int = 40, gens: int | None = None,
                      evals: int = DEFAULT_EVALS, tournament: int = 3, crossover_rate: float = 0.9,
                      mutation_rate: float | None = None, pool_size: int = DEFAULT_POOL,
                      verify_sat: bool = True) -> BaselineRun:
    """Integer chromosomes, tournament selection, one-point crossover, per-gene mutation, one elite.

    ``gens`` defaults to as many generations as the evaluation budget allows.
    """
    started = time.perf_counter()
    if pop < 1:
        raise ValueError("population must be at least 1")
    rng = np.random.default_rng(seed)
    space = _Space(ev, rng)
    f = _Tracker(ev, evals)
    n = space.n
    rate = mutation_rate if mutation_rate is not None else 1 / n
    if gens is None:
        gens = max(0, (evals - pop) // max(1, pop - 1))

    def pick(fit):
        idx = rng.integers(0, len(fit), size=min(tournament, len(fit)))
        return int(min(idx, key=lambda i: (fit[i], i)))

    try:
        population = []
        fitness = []
        for _ in range(pop):
            x = space.sample()
            population.append(x)
            fitness.append(f(x))
        for _ in range(gens):
            elite = min(range(len(fitness)), key=lambda i: (fitness[i], i))
            nxt, nfit = [population[elite]], [fitness[elite]]
            while len(nxt) < pop:
                a, b = population[pick(fitness)], population[pick(fitness)]
                if n > 1 and rng.random() < crossover_rate:
                    cut = int(rng.integers(1, n))
                    child = list(a[:cut] + b[cut:])
                else:
                    child = list(a)
                for i in np.nonzero(rng.random(n) < rate)[0]:
                    space.step(child, int(i), int(rng.integers(1, 3)))
                child = tuple(child)
                nxt.append(child)
                nfit.append(f(child))
            population, fitness = nxt, nfit
    except _Exhausted:
        pass
    return _finish(GA, seed, f, pool_size, started, verify_sat)


def random_search(ev: Evaluator, seed: int = 0, n: int = DEFAULT_EVALS, pool_size: int = DEFAULT_POOL,
                  sampler: str = "sparse", verify_sat: bool = True) -> BaselineRun:
    """``n`` independent samples; ``sampler="box"`` draws every count uniformly instead."""
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    space = _Space(ev, rng)
    draw: Callable[[], tuple[int, ...]] = space.sample if sampler == "sparse" else space.sample_box
    if sampler not in ("sparse", "box"):
        raise ValueError(f"unknown sampler {sampler!r}")
    f = _Tracker(ev, n)
    try:
        while True:
            f(draw())
    except _Exhausted:
        pass
    return _finish(RANDOM, seed, f, pool_size, started, verify_sat)


def discrete_search(ev: Evaluator, evals: int = DEFAULT_EVALS, seed: int | None = None,
                    verify_sat: bool = True) -> BaselineRun:
    """Cyclic coordinate descent from the all-zero vector; emits only its terminal point.

    Each coordinate is set to its best value with the others held fixed;
    sweeps repeat until one full pass brings no strict improvement.
    """
    started = time.perf_counter()
    f = _Tracker(ev, evals)
    x = [0] * ev.dimension
    best = None
    try:
        best = f(tuple(x))
        improved = True
        while improved:
            improved = False
            for i, u in enumerate(ev.bounds):
                keep = x[i]
                try:
                    for v in range(u + 1):
                        if v == keep:
                            continue
                        x[i] = v
                        val = f(tuple(x))
                        if val < best:
                            best, keep, improved = val, v, True
                finally:
                    x[i] = keep  # an unevaluated trial value never becomes the terminal point
    except _Exhausted:
        pass
    terminal = tuple(x)
    if best is None:
        return BaselineRun(DISCRETE, seed, evals, [], f.used, time.perf_counter() - started)
    return _finish(DISCRETE, seed, f, 1, started, verify_sat, candidates=[(terminal, f.seen[terminal])])


def one_plus_one_lengler(ev: Evaluator, seed: int = 0, n: int = DEFAULT_EVALS, p0: float = 0.5,
                         pool_size: int = DEFAULT_POOL, verify_sat: bool = True) -> BaselineRun:
    """(1+1) evolution strategy whose per-gene mutation rate decays linearly from ``p0`` to ``1/d``."""
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    space = _Space(ev, rng)
    f = _Tracker(ev, n)
    d = space.n
    floor = 1 / d
    try:
        parent = space.sample()
        best = f(parent)
        t = 0
        while True:
            frac = t / max(1, n - 1)
            rate = max(floor, p0 - (p0 - floor) * frac) if p0 > floor else floor
            child = list(parent)
            hits = np.nonzero(rng.random(d) < rate)[0]
            if len(hits) == 0:
                hits = [int(rng.integers(d))]
            for i in hits:
                space.step(child, int(i), int(rng.geometric(0.5)))
            child = tuple(child)
            val = f(child)
            if val <= best:
                parent, best = child, val
            t += 1
    except _Exhausted:
        pass
    return _finish(LENGLER, seed, f, pool_size, started, verify_sat)


def portfolio(ev: Evaluator, seed: int = 0, n: int = DEFAULT_EVALS, pool_size: int = DEFAULT_POOL,
              verify_sat: bool = True) -> BaselineRun:
    """Split the budget evenly over SA, GA, random search and (1+1); merge their pools."""
    started = time.perf_counter()
    members = [
        lambda k: simulated_annealing(ev, seed, evals=k, pool_size=pool_size, verify_sat=False),
        lambda k: genetic_algorithm(ev, seed, pop=min(40, k), evals=k, pool_size=pool_size, verify_sat=False),
        lambda k: random_search(ev, seed, n=k, pool_size=pool_size, verify_sat=False),
        lambda k: one_plus_one_lengler(ev, seed, n=k, pool_size=pool_size, verify_sat=False),
    ]
    shares = [n // len(members) + (1 if i < n % len(members) else 0) for i in range(len(members))]
    merged: dict[tuple[int, ...], float] = {}
    used = 0
    for run_member, share in zip(members, shares):
        if share == 0:
            continue
        run = run_member(share)
        used += run.evaluations
        for e in run.entries:
            merged.setdefault(e.x, e.penalized)
    tracker = _Tracker(ev, max(1, n))
    tracker.used = used
    ranked = sorted(enumerate(merged.items()), key=lambda t: (t[1][1], t[0]))
    picked = [item for _, item in ranked[:pool_size]]
    return _finish(PORTFOLIO, seed, tracker, pool_size, started, verify_sat, candidates=picked)


BASELINES: dict[str, Callable[..., BaselineRun]] = {
    SA: lambda ev, seed, evals: simulated_annealing(ev, seed, evals=evals),
    GA: lambda ev, seed, evals: genetic_algorithm(ev, seed, evals=evals),
    RANDOM: lambda ev, seed, evals: random_search(ev, seed, n=evals),
    DISCRETE: lambda ev, seed, evals: discrete_search(ev, evals=evals, seed=seed),
    LENGLER: lambda ev, seed, evals: one_plus_one_lengler(ev, seed, n=evals),
    PORTFOLIO: lambda ev, seed, evals: portfolio(ev, seed, n=evals),
}


def run_baseline(name: str, ev: Evaluator, seed: int = 0, evals: int = DEFAULT_EVALS) -> BaselineRun:
    try:
        fn = BASELINES[name]
    except KeyError:
        raise ValueError(f"unknown optimizer {name!r}; choose from {sorted(BASELINES)}") from None
    return fn(ev, seed, evals)
