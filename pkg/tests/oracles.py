"""Independent reference computations for the exact solver."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction as F

from agridse.objective import LITERAL, unit_bounds
from toys import random_instance


def exact_coefficients(configs, weights, mode=LITERAL):
    """Per-unit objective computed from scratch with rationals."""
    def mm(vals):
        lo, hi = min(vals), max(vals)
        return [F(0) if hi == lo else F(v - lo, hi - lo) for v in vals]

    cost = mm([c.metrics.unit_cost_cents for c in configs])
    area = mm([c.metrics.area_m2 for c in configs])
    # grams, rounded half up; weights read as the decimals they print as
    pay = mm([math.floor(F(repr(c.metrics.max_payload_kg)) * 1000 + F(1, 2)) for c in configs])
    ws = [F(repr(w)) if isinstance(w, float) else F(w) for w in weights.as_tuple()]
    a, b, g = (w / sum(ws) for w in ws)
    s = 1 if mode == LITERAL else -1
    return [a * c + s * b * ar - g * p for c, ar, p in zip(cost, area, pay)]


def brute_force(configs, scen, weights, mode=LITERAL):
    coef = exact_coefficients(configs, weights, mode)
    ubs = unit_bounds(configs, scen)
    cost = [c.metrics.unit_cost_cents + scen.extra_cost_cents for c in configs]
    area = [c.metrics.area_m2 for c in configs]
    out = []
    for x in itertools.product(*(range(u + 1) for u in ubs)):
        if (sum(c * v for c, v in zip(cost, x)) + scen.fixed_cost_cents <= scen.budget_cents
                and sum(a * v for a, v in zip(area, x)) >= scen.farm_size_m2):
            out.append((sum(c * v for c, v in zip(coef, x)), x))
    out.sort()
    return out


def small_instances(count, seed, max_vectors=20000):
    """Random toy instances whose whole fleet space has at most ``max_vectors`` points."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        configs, scen = random_instance(rng)
        size = 1
        for u in unit_bounds(configs, scen):
            size *= u + 1
        if size > max_vectors:
            continue
        made += 1
        yield configs, scen, rng


def brute_force_min(configs, scen, weights, mode=LITERAL):
    """Exact minimum over every fleet vector; ``None`` when nothing is feasible.

    A float64 sweep over the whole grid shortlists the vectors within a small
    tolerance of the float minimum, then exact rationals pick among them.
    """
    import numpy as np

    coef = exact_coefficients(configs, weights, mode)
    ubs = unit_bounds(configs, scen)
    grids = np.meshgrid(*(np.arange(u + 1, dtype=np.int64) for u in ubs), indexing="ij")
    cost = sum(g * (c.metrics.unit_cost_cents + scen.extra_cost_cents) for g, c in zip(grids, configs))
    area = sum(g * c.metrics.area_m2 for g, c in zip(grids, configs))
    obj = sum(g * float(q) for g, q in zip(grids, coef))
    ok = (cost + scen.fixed_cost_cents <= scen.budget_cents) & (area >= scen.farm_size_m2)
    if not ok.any():
        return None
    best = obj[ok].min()
    near = np.argwhere(ok & (obj <= best + 1e-9 * max(1.0, abs(best))))
    return min(sum(q * int(v) for q, v in zip(coef, idx)) for idx in near)


def large_instances(count, seed, lo=10**4, hi=10**6):
    """Instances with 3 to 6 configurations and between ``lo`` and ``hi`` fleet vectors."""
    from toys import toy_config, toy_scenario

    rng = random.Random(seed)
    made = 0
    while made < count:
        n = rng.randint(3, 6)
        configs = [toy_config(i, rng.randint(100, 5000), rng.randint(10, 400),
                              round(rng.uniform(0, 20), 3)) for i in range(n)]
        mean_cost = sum(c.metrics.unit_cost_cents for c in configs) / n
        mean_area = sum(c.metrics.area_m2 for c in configs) / n
        scen = toy_scenario(int(mean_cost * rng.uniform(4, 15)), int(mean_area * rng.uniform(2, 8)) + 1,
                            comm_cents=rng.choice([0, 0, 50]))
        size = math.prod(u + 1 for u in unit_bounds(configs, scen))
        if lo <= size <= hi:
            made += 1
            yield configs, scen, size
