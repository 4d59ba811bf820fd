"""Weighted objective shared by the exact solver and every baseline.

Per-configuration metrics are min-max normalized over the enumerated
candidate set and combined as ``alpha*cost + beta*area - gamma*payload``.
Coefficients are kept as exact rationals and then scaled to a common integer
denominator, so objective values of whole fleets are plain integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .constraints import FleetDesign, Scenario, make_design
from .derive import Configuration

LITERAL = "literal"
FLIPPED_BETA = "flipped-beta"
OBJECTIVE_MODES = (LITERAL, FLIPPED_BETA)
PENALTY_LAMBDA = 10.0
UNIT_MARGIN = 2


def _frac(v) -> Fraction:
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


@dataclass(frozen=True)
class ObjectiveWeights:
    alpha: float = 0.611   # cost
    beta: float = 0.278    # area coverage
    gamma: float = 0.111   # payload

    def __post_init__(self):
        ws = (self.alpha, self.beta, self.gamma)
        if any(w < 0 for w in ws) or not any(w > 0 for w in ws):
            raise ValueError(f"weights must be non-negative and not all zero, got {ws}")

    def normalized(self) -> tuple[Fraction, Fraction, Fraction]:
        ws = tuple(_frac(w) for w in (self.alpha, self.beta, self.gamma))
        total = sum(ws)
        return tuple(w / total for w in ws)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)

    def label(self) -> str:
        return ",".join(f"{float(w):.4g}" for w in self.as_tuple())


def roc_weights_exact(n: int) -> tuple[Fraction, ...]:
    """Rank order centroid weights, most important first: w_k = (1/n) * sum_{j>=k} 1/j."""
    if n < 1:
        raise ValueError("need at least one ranked criterion")
    return tuple(sum(Fraction(1, j) for j in range(k, n + 1)) / n for k in range(1, n + 1))


def roc_weights(n: int, ranking: Sequence[str] | None = None):
    """ROC weights as floats.

    With a ``ranking`` over ``cost``, ``area`` and ``payload`` (most
    important first) an :class:`ObjectiveWeights` is returned instead.
    """
    ws = [float(w) for w in roc_weights_exact(n)]
    if ranking is None:
        return tuple(ws)
    ranking = list(ranking)
    if len(ranking) != n or sorted(ranking) != ["area", "cost", "payload"]:
        raise ValueError("ranking must order exactly 'cost', 'area' and 'payload'")
    by_name = dict(zip(ranking, ws))
    return ObjectiveWeights(by_name["cost"], by_name["area"], by_name["payload"])


ROC_DEFAULT = roc_weights(3, ("cost", "area", "payload"))


@dataclass(frozen=True)
class NormalizedMetrics:
    cost: Fraction
    area: Fraction
    payload: Fraction


def _minmax(values: Sequence[int]) -> list[Fraction]:
    lo, hi = min(values), max(values)
    if hi == lo:
        return [Fraction(0)] * len(values)
    return [Fraction(v - lo, hi - lo) for v in values]


def normalize(configs: Sequence[Configuration]) -> list[NormalizedMetrics]:
    """Min-max normalize cost, area and payload over the candidate set."""
    if not configs:
        return []
    cost = _minmax([c.metrics.unit_cost_cents for c in configs])
    area = _minmax([c.metrics.area_m2 for c in configs])
    payload = _minmax([c.metrics.payload_g for c in configs])
    return [NormalizedMetrics(*t) for t in zip(cost, area, payload)]


def objective_coefficients(norm: Sequence[NormalizedMetrics], weights: ObjectiveWeights,
                           mode: str = LITERAL) -> tuple[list[int], int]:
    """Integer per-unit coefficients and the common scale they were multiplied by."""
    if mode not in OBJECTIVE_MODES:
        raise ValueError(f"unknown objective mode {mode!r}")
    a, b, g = weights.normalized()
    sign = 1 if mode == LITERAL else -1
    exact = [a * m.cost + sign * b * m.area - g * m.payload for m in norm]
    scale = 1
    for q in exact:
        scale = scale * q.denominator // math.gcd(scale, q.denominator)
    return [int(q * scale) for q in exact], scale


def unit_bounds(configs: Sequence[Configuration], scen: Scenario, margin: int = UNIT_MARGIN) -> list[int]:
    """Per-configuration unit cap: min(ceil(B / C_i), ceil(S / A_i) + margin)."""
    out = []
    for cfg in configs:
        cost = cfg.metrics.unit_cost_cents + scen.extra_cost_cents
        by_budget = -(-scen.budget_cents // cost) if cost > 0 else 0
        area = cfg.metrics.area_m2
        if area > 0:
            out.append(max(0, min(by_budget, -(-scen.farm_size_m2 // area) + margin)))
        else:
            out.append(max(0, by_budget))
    return out


def _items(x) -> list[tuple[int, int]]:
    if isinstance(x, Mapping):
        return [(i, int(v)) for i, v in x.items() if v]
    return [(i, int(v)) for i, v in enumerate(x) if v]


class Evaluator:
    """Objective, constraint and penalty evaluation over fleet vectors.

    A fleet vector assigns a unit count to each configuration index; it may be
    a dense sequence or a sparse ``{index: count}`` mapping.
    """

    def __init__(self, configs: Sequence[Configuration], scen: Scenario,
                 weights: ObjectiveWeights = ROC_DEFAULT, mode: str = LITERAL,
                 bounds: Sequence[int] | None = None, margin: int = UNIT_MARGIN,
                 norm: Sequence[NormalizedMetrics] | None = None):
        if not configs:
            raise ValueError("no configurations to evaluate")
        self.configs = list(configs)
        self.scen = scen
        self.weights = weights
        self.mode = mode
        self.norm = list(norm) if norm is not None else normalize(self.configs)
        self.coef, self.scale = objective_coefficients(self.norm, weights, mode)
        self.unit_cost = [c.metrics.unit_cost_cents + scen.extra_cost_cents for c in self.configs]
        self.area = [c.metrics.area_m2 for c in self.configs]
        self.bounds = list(bounds) if bounds is not None else unit_bounds(self.configs, scen, margin)
        self.budget_avail = scen.budget_cents - scen.fixed_cost_cents

    @property
    def dimension(self) -> int:
        return len(self.configs)

    def objective(self, x) -> int:
        return sum(self.coef[i] * v for i, v in _items(x))

    def objective_value(self, x) -> float:
        return self.objective(x) / self.scale

    def total_cost(self, x) -> int:
        return sum(self.unit_cost[i] * v for i, v in _items(x)) + self.scen.fixed_cost_cents

    def total_area(self, x) -> int:
        return sum(self.area[i] * v for i, v in _items(x))

    def is_feasible(self, x) -> bool:
        return (self.total_cost(x) <= self.scen.budget_cents
                and self.total_area(x) >= self.scen.farm_size_m2)

    def violation(self, x) -> float:
        """Relative budget overrun plus relative coverage shortfall."""
        over = max(0, self.total_cost(x) - self.scen.budget_cents) / self.scen.budget_cents
        short = max(0, self.scen.farm_size_m2 - self.total_area(x)) / self.scen.farm_size_m2
        return over + short

    def penalized(self, x, lam: float = PENALTY_LAMBDA) -> float:
        return self.objective_value(x) + lam * self.violation(x)

    def design(self, x) -> FleetDesign:
        return make_design([(self.configs[i], v) for i, v in _items(x)], self.scen)

    def sparse(self, x) -> dict[int, int]:
        return dict(_items(x))
