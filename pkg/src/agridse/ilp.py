"""Exact fleet selection by depth-first branch and bound.

The integer program is

    minimize    sum_i coef_i * x_i
    subject to  sum_i cost_i * x_i + fixed <= B
                sum_i area_i * x_i >= S
                0 <= x_i <= ub_i, x_i integer

with integer data throughout.  ``solve`` returns the ``pool_limit`` best
distinct fleet vectors, which is what re-solving with a no-good cut after
each optimum would produce, but in one search.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .catalog import BOTH, ROVER, ComponentCatalog, Sensor
from .constraints import (
    BATTERY,
    COMPUTE_KIND,
    COVERAGE,
    BUDGET,
    FLIGHT_TIME,
    PAYLOAD,
    PLATFORM,
    POWER,
    SIZE_MATCH,
    FleetDesign,
    Scenario,
    check_flight_time,
)
from .derive import Configuration, with_metrics
from .errors import InfeasibleError
from .objective import (
    LITERAL,
    ROC_DEFAULT,
    UNIT_MARGIN,
    Evaluator,
    NormalizedMetrics,
    ObjectiveWeights,
    normalize,
)

log = logging.getLogger(__name__)

DEFAULT_POOL_LIMIT = 20
DEFAULT_GRID = 11


# ---------------------------------------------------------------------------
# enumeration

def scenario_sensors(catalog: ComponentCatalog, scen: Scenario) -> tuple[Sensor, ...]:
    """Union of the sensors every application needs, sorted by id."""
    found = {}
    for app in scen.apps:
        for sid in app.sensors:
            if sid not in found:
                found[sid] = catalog.sensor(sid)
    return tuple(found[k] for k in sorted(found))


def enumerate_configurations(catalog: ComponentCatalog, scen: Scenario, strict: bool = False) -> list[Configuration]:
    """Every component combination that passes the per-vehicle rules, with metrics filled in."""
    sensors = scenario_sensors(catalog, scen)

    raw = []
    for ch in catalog.chassis_options:
        kind = ch.vehicle_kind
        motors = [m for m in catalog.motor_options if m.vehicle_kind in (BOTH, kind)]
        batteries = [b for b in catalog.battery_options if b.vehicle_kind in (BOTH, kind)]
        tires = catalog.tire_options if kind == ROVER else (None,)
        for m, b, n_batt, t, cu in itertools.product(motors, batteries, catalog.battery_counts,
                                                     tires, catalog.compute_options):
            raw.append(with_metrics(Configuration(
                chassis=ch, motor=m, motor_count=ch.motor_count, battery=b, battery_count=n_batt,
                compute=cu, tire=t, tire_count=ch.tire_count if t is not None else 0,
                sensors=sensors, apps_extra_mass_kg=scen.apps_extra_mass_kg,
                kappa=catalog.kappa(kind)), strict=strict))

    platforms = scen.platforms
    kinds = scen.compute_kinds
    stages = [
        (PLATFORM, lambda c: c.vehicle_kind in platforms),
        (COMPUTE_KIND, lambda c: c.compute.kind in kinds),
        (SIZE_MATCH, lambda c: c.motor.size_class == c.chassis.size_class),
        (BATTERY, lambda c: c.battery_count >= 1),
        (PAYLOAD, lambda c: c.metrics.max_payload_kg >= 0),
        (POWER, lambda c: c.metrics.runtime_hours > 0),
        (FLIGHT_TIME, lambda c: check_flight_time(c, scen)),
    ]
    survivors = raw
    for rule, keep in stages:
        survivors = [c for c in survivors if keep(c)]
        if not survivors:
            raise InfeasibleError(f"no configuration survives the {rule!r} rule "
                                  f"({len(raw)} combinations generated)", rule=rule)
    return survivors


# ---------------------------------------------------------------------------
# solution pool

@dataclass(frozen=True)
class PoolEntry:
    design: FleetDesign
    x: dict
    objective: int           # scaled integer objective
    objective_value: float   # objective / scale
    weights: ObjectiveWeights
    sat_valid: bool | None = None


@dataclass
class ExplorationLog:
    nodes: int = 0
    leaves: int = 0
    pruned_bound: int = 0
    pruned_coverage: int = 0
    pruned_budget: int = 0
    solves: int = 0

    def merge(self, other: "ExplorationLog") -> None:
        for f in ("nodes", "leaves", "pruned_bound", "pruned_coverage", "pruned_budget", "solves"):
            setattr(self, f, getattr(self, f) + getattr(other, f))

    def report(self) -> str:
        return (f"solves={self.solves} nodes={self.nodes} leaves={self.leaves} "
                f"pruned(bound={self.pruned_bound}, coverage={self.pruned_coverage}, "
                f"budget={self.pruned_budget})")


@dataclass
class SolvePool:
    entries: list[PoolEntry]
    log: ExplorationLog = field(default_factory=ExplorationLog)
    scale: int = 1

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def designs(self) -> list[FleetDesign]:
        return [e.design for e in self.entries]

    @property
    def best(self) -> PoolEntry:
        return self.entries[0]


# ---------------------------------------------------------------------------
# branch and bound

def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


_UNREACHABLE = 1 << 200  # coverage cannot be met; prunes the node


class _Search:
    def __init__(self, ev: Evaluator, pool_limit: int):
        self.ev = ev
        self.k = pool_limit
        n = ev.dimension
        # negative-coefficient lines first in knapsack order (objective per cent),
        # then the rest in covering order (objective per square metre)
        def rank(i):
            c, w, a = ev.coef[i], ev.unit_cost[i], ev.area[i]
            if c < 0:
                return (0, Fraction(c, w), w, i)
            return (1, Fraction(c, a) if a > 0 else Fraction(c + 1), w, i)
        self.order = sorted(range(n), key=rank)
        o = self.order
        self.c = [ev.coef[i] for i in o]
        self.w = [ev.unit_cost[i] for i in o]
        self.a = [ev.area[i] for i in o]
        self.u = [ev.bounds[i] for i in o]
        self.S = ev.scen.farm_size_m2
        self.n = n

        # suffix aggregates: area of negative lines at their caps, total area at
        # caps, and the cheapest cents per square metre
        self.neg_area = [0] * (n + 1)
        self.max_area = [0] * (n + 1)
        self.cost_ratio: list[tuple[int, int] | None] = [None] * (n + 1)
        for j in range(n - 1, -1, -1):
            c, a, w, u = self.c[j], self.a[j], self.w[j], self.u[j]
            self.neg_area[j] = self.neg_area[j + 1] + (a * u if c < 0 else 0)
            self.max_area[j] = self.max_area[j + 1] + a * u
            cr = self.cost_ratio[j + 1]
            if a > 0 and u > 0 and (cr is None or w * cr[1] < cr[0] * a):
                cr = (w, a)
            self.cost_ratio[j] = cr

        # negative-coefficient lines of each suffix, best objective gain per cent first
        self.neg_lines: list[list[tuple[int, int, int]]] = [[] for _ in range(n + 1)]
        for j in range(n - 1, -1, -1):
            lines = self.neg_lines[j + 1]
            if self.c[j] < 0 and self.u[j] > 0:
                lines = sorted(lines + [(self.c[j], self.w[j], self.u[j])],
                               key=lambda t: Fraction(t[0], t[1]))
            self.neg_lines[j] = lines

        self.pos_lines: list[list[tuple[int, int, int]]] = [[] for _ in range(n + 1)]
        for j in range(n - 1, -1, -1):
            lines = self.pos_lines[j + 1]
            if self.c[j] >= 0 and self.a[j] > 0 and self.u[j] > 0:
                lines = sorted(lines + [(self.c[j], self.a[j], self.u[j])],
                               key=lambda t: Fraction(t[0], t[1]))
            self.pos_lines[j] = lines

        self.heap: list[tuple[int, int, tuple]] = []   # (-objective, -seq, key)
        self.found: dict[tuple, tuple[int, int]] = {}  # key -> (objective, seq)
        self.seq = 0
        self.log = ExplorationLog(solves=1)

    def kth(self):
        return -self.heap[0][0] if len(self.heap) >= self.k else None

    def record(self, obj: int, chosen: tuple) -> None:
        self.log.leaves += 1
        if chosen in self.found:
            return
        if len(self.heap) >= self.k:
            if obj >= -self.heap[0][0]:
                return
            _, _, dropped = heapq.heappop(self.heap)
            del self.found[dropped]
        self.seq += 1
        heapq.heappush(self.heap, (-obj, -self.seq, chosen))
        self.found[chosen] = (obj, self.seq)

    def seed(self) -> None:
        # single-configuration fleets give early incumbents
        avail = self.ev.budget_avail
        for j in range(self.n):
            if self.a[j] <= 0:
                continue
            units = _ceil_div(self.S, self.a[j])
            if units <= self.u[j] and units * self.w[j] <= avail:
                self.record(self.c[j] * units, ((j, units),))

    def run(self) -> None:
        self.seed()
        self._dfs(0, 0, self.ev.budget_avail, 0, ())

    def _pos_bound(self, k: int, rest: int) -> int:
        """Cheapest objective for non-negative lines from ``k`` on to cover ``rest`` m^2.

        Fractional covering relaxation with unit caps, rounded up.
        """
        total = 0
        for c, a, u in self.pos_lines[k]:
            if a * u >= rest:
                return total + _ceil_div(c * rest, a)
            total += c * u
            rest -= a * u
        return total + _UNREACHABLE

    def _neg_bound(self, k: int, rem: int, tight: bool = True) -> int:
        """Lowest objective the negative lines from ``k`` on can reach within ``rem`` cents.

        Fractional knapsack relaxation.  With ``tight`` it is sharpened at the
        break line: that line either takes ``floor`` units (rest filled
        fractionally by the next line) or one more unit (paid for by
        fractionally dropping earlier lines).  Rounded up to an integer.
        """
        lines = self.neg_lines[k]
        total = 0
        for s, (c, w, u) in enumerate(lines):
            if w * u <= rem:
                total += c * u
                rem -= w * u
                continue
            if not tight:
                return total - (-c * rem) // w
            q, r = divmod(rem, w)
            # branch 1: q units of the break line, next line fills r fractionally
            b1 = total + c * q
            if s + 1 < len(lines):
                c1, w1, _ = lines[s + 1]
                b1_num, b1_den = b1 * w1 + c1 * r, w1
            else:
                b1_num, b1_den = b1, 1
            # branch 2: q+1 units, freeing (w - r) cents from earlier lines,
            # cheapest objective loss per cent first
            need = w - r
            b2 = total + c * (q + 1)
            b2_num = b2_den = None
            for c0, w0, u0 in reversed(lines[:s]):
                if w0 * u0 >= need:
                    b2_num, b2_den = b2 * w0 - c0 * need, w0
                    break
                b2 -= c0 * u0
                need -= w0 * u0
            lb1 = -((-b1_num) // b1_den)
            if b2_num is None:
                return lb1  # branch 2 cannot fit in the budget
            return min(lb1, -((-b2_num) // b2_den))
        return total

    def _dfs(self, k: int, obj: int, rem: int, cov: int, chosen: tuple) -> None:
        self.log.nodes += 1
        short = self.S - cov
        if k == self.n:
            if short <= 0:
                self.record(obj, chosen)
            return
        if short > 0:
            if self.max_area[k] < short:
                self.log.pruned_coverage += 1
                return
            w, a = self.cost_ratio[k]
            if rem * a < short * w:
                self.log.pruned_budget += 1
                return
        kth = self.kth()
        if kth is not None:
            lb = obj + self._neg_bound(k, rem)
            rest = short - self.neg_area[k]
            if rest > 0:
                lb += self._pos_bound(k, rest)
            if lb >= kth:
                self.log.pruned_bound += 1
                return
        c, w, a = self.c[k], self.w[k], self.a[k]
        top = min(self.u[k], rem // w)
        for v in range(top, -1, -1):
            if c < 0:
                # This line has the best objective per cent of the suffix, so the
                # plain relaxation only worsens as v drops: stop at the first prune.
                kth = self.kth()
                if kth is not None:
                    lb = obj + c * v + self._neg_bound(k + 1, rem - w * v, tight=False)
                    rest = short - a * v - self.neg_area[k + 1]
                    if rest > 0:
                        lb += self._pos_bound(k + 1, rest)
                    if lb >= kth:
                        self.log.pruned_bound += 1
                        break
            if v:
                self._dfs(k + 1, obj + c * v, rem - w * v, cov + a * v, chosen + ((k, v),))
            else:
                self._dfs(k + 1, obj, rem, cov, chosen)

    def results(self) -> list[tuple[int, dict]]:
        ranked = sorted(self.found.items(), key=lambda kv: kv[1])
        out = []
        for chosen, (obj, _) in ranked:
            out.append((obj, {self.order[j]: v for j, v in chosen}))
        return out


def solve(configs: Sequence[Configuration], scen: Scenario, weights: ObjectiveWeights = ROC_DEFAULT,
          pool_limit: int = DEFAULT_POOL_LIMIT, mode: str = LITERAL,
          bounds: Sequence[int] | None = None, margin: int = UNIT_MARGIN,
          norm: Sequence[NormalizedMetrics] | None = None) -> SolvePool:
    """Exact optimum of the weighted objective plus the next-best distinct fleets.

    Raises InfeasibleError with per-constraint diagnostics when no fleet
    satisfies both budget and coverage.
    """
    if not configs:
        raise InfeasibleError("no configurations to choose from")
    if pool_limit < 1:
        raise ValueError("pool_limit must be at least 1")
    ev = Evaluator(configs, scen, weights, mode, bounds=bounds, margin=margin, norm=norm)
    search = _Search(ev, pool_limit)
    limit = sys.getrecursionlimit()
    if limit < ev.dimension + 100:
        sys.setrecursionlimit(ev.dimension + 100)
    search.run()
    results = search.results()
    if not results:
        raise _infeasible(ev)
    entries = [PoolEntry(design=ev.design(x), x=x, objective=obj, objective_value=obj / ev.scale,
                         weights=weights) for obj, x in results]
    return SolvePool(entries, search.log, ev.scale)


def _infeasible(ev: Evaluator) -> InfeasibleError:
    S = ev.scen.farm_size_m2
    max_area = sum(a * u for a, u in zip(ev.area, ev.bounds))
    cheapest = None
    for i, a in enumerate(ev.area):
        if a > 0:
            cost = _ceil_div(S, a) * ev.unit_cost[i] + ev.scen.fixed_cost_cents
            cheapest = cost if cheapest is None else min(cheapest, cost)
    diagnostics = {"farm_size_m2": S, "max_coverage_within_unit_bounds": max_area,
                   "budget_cents": ev.scen.budget_cents,
                   "cheapest_single_configuration_fleet_cents": cheapest}
    if max_area < S:
        return InfeasibleError(f"coverage: at most {max_area} m2 reachable, farm is {S} m2",
                               rule=COVERAGE, diagnostics=diagnostics)
    return InfeasibleError("budget: no fleet covers the farm within the budget",
                           rule=BUDGET, diagnostics=diagnostics)


# ---------------------------------------------------------------------------
# weight sweep

def simplex_grid(resolution: int) -> list[ObjectiveWeights]:
    """All (alpha, beta, gamma) on a simplex lattice with ``resolution`` points per edge."""
    if resolution < 2:
        raise ValueError("grid resolution must be at least 2")
    n = resolution - 1
    grid = []
    for i in range(n, -1, -1):
        for j in range(n - i, -1, -1):
            grid.append(ObjectiveWeights(Fraction(i, n), Fraction(j, n), Fraction(n - i - j, n)))
    return grid


def weight_sweep(configs: Sequence[Configuration], scen: Scenario, grid_resolution: int = DEFAULT_GRID,
                 pool_limit: int = 1, mode: str = LITERAL, verify: bool = True) -> SolvePool:
    """Solve at every grid point and merge the pools.

    Members are deduplicated by fleet and checked by the SAT verifier; a
    design the verifier rejects is logged and left out.
    """
    from .sat.verify import verify as sat_verify

    norm = normalize(configs)
    merged: dict[tuple, PoolEntry] = {}
    total = ExplorationLog()
    scale = 1
    last_error: InfeasibleError | None = None
    for w in simplex_grid(grid_resolution):
        try:
            pool = solve(configs, scen, w, pool_limit=pool_limit, mode=mode, norm=norm)
        except InfeasibleError as exc:
            log.warning("grid point %s: %s", w.label(), exc)
            last_error = exc
            continue
        total.merge(pool.log)
        scale = pool.scale
        for e in pool.entries:
            merged.setdefault(e.design.key, e)
    emitted = []
    for e in merged.values():
        if verify:
            ok = sat_verify(e.design, scen).valid
            if not ok:
                log.warning("design %s rejected by SAT verification", e.design.design_id)
                continue
            e = PoolEntry(e.design, e.x, e.objective, e.objective_value, e.weights, sat_valid=True)
        emitted.append(e)
    if not emitted:
        if last_error is not None:
            raise last_error
        raise InfeasibleError("no grid point produced a verified fleet")
    return SolvePool(emitted, total, scale)
