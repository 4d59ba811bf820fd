"""Scenarios, fleet designs and the feasibility rules they must satisfy.

Money is integer cents and areas are integer square metres throughout, so
every comparison here is exact and matches the SAT encoding bit for bit.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .catalog import (
    DRONE,
    ApplicationProfile,
    CommMethod,
    ComponentCatalog,
    CropProfile,
    EdgeServer,
    bundled_path,
    cents_to_str,
    compatible_platforms,
    required_compute_kinds,
    to_cents,
)
from .derive import Configuration, round_half_up
from .errors import InfeasibleError, SchemaError, ValidationError

F_MIN_HOURS = 0.2

BUDGET = "budget"
COVERAGE = "coverage"
BATTERY = "battery"
SIZE_MATCH = "size_match"
PAYLOAD = "payload"
FLIGHT_TIME = "flight_time"
POWER = "power"
PLATFORM = "platform"
COMPUTE_KIND = "compute_kind"


# ---------------------------------------------------------------------------
# communication

def comm_cells(farm_size_m2, comm: CommMethod) -> int:
    """Cells needed to cover the farm: ceil(sqrt(S) / (range_km * 1000)), at least 1."""
    if comm.range_km <= 0:
        raise ValueError("communication range must be positive")
    if farm_size_m2 <= 0:
        return 1
    r = comm.range_km
    cell = (Fraction(repr(r)) if isinstance(r, float) else Fraction(r)) * 1000
    s = Fraction(farm_size_m2)
    l = max(1, math.ceil(math.sqrt(farm_size_m2) / float(cell)))
    # settle the float guess exactly: smallest l with (l * cell)^2 >= S
    while l > 1 and ((l - 1) * cell) ** 2 >= s:
        l -= 1
    while (l * cell) ** 2 < s:
        l += 1
    return l


def comm_cost_cents(cells: int, comm: CommMethod) -> int:
    return cells * comm.cost_per_cell_cents


def select_comm(options: Iterable[CommMethod], farm_size_m2) -> CommMethod:
    """Cheapest total communication cost; ties go to the longer range, then id."""
    options = list(options)
    if not options:
        raise ValidationError("no communication methods available")
    return min(options, key=lambda c: (comm_cost_cents(comm_cells(farm_size_m2, c), c), -c.range_km, c.id))


# ---------------------------------------------------------------------------
# scenario

@dataclass(frozen=True)
class Scenario:
    name: str
    budget_cents: int
    farm_size_m2: int
    crop: CropProfile
    apps: tuple[ApplicationProfile, ...]
    comm: CommMethod
    edge_server: EdgeServer | None = None
    f_min_hours: float = F_MIN_HOURS

    def __post_init__(self):
        if self.budget_cents <= 0:
            raise ValidationError("budget must be positive")
        if self.farm_size_m2 <= 0:
            raise ValidationError("farm size must be positive")
        if not self.apps:
            raise ValidationError("scenario needs at least one application")

    @property
    def extra_cost_cents(self) -> int:
        """Application-specific part cost charged per unit."""
        return sum(a.extra_cost_cents for a in self.apps)

    @property
    def apps_extra_mass_kg(self) -> float:
        return sum(a.extra_mass_kg for a in self.apps)

    @property
    def comm_cells(self) -> int:
        return comm_cells(self.farm_size_m2, self.comm)

    @property
    def comm_cost_cents(self) -> int:
        return comm_cost_cents(self.comm_cells, self.comm)

    @property
    def edge_cost_cents(self) -> int:
        return self.edge_server.cost_cents if self.edge_server is not None else 0

    @property
    def fixed_cost_cents(self) -> int:
        return self.edge_cost_cents + self.comm_cost_cents

    @property
    def platforms(self) -> frozenset[str]:
        return compatible_platforms(self.crop, self.apps)

    @property
    def compute_kinds(self) -> frozenset[str]:
        return required_compute_kinds(self.apps)[0]

    @property
    def needs_edge_server(self) -> bool:
        return required_compute_kinds(self.apps)[1]


def build_scenario(catalog: ComponentCatalog, *, budget, farm_size_m2, crop: str,
                   applications: Iterable[str], comm_override: str | None = None,
                   name: str = "scenario", f_min_hours: float = F_MIN_HOURS) -> Scenario:
    """Resolve names against the catalog and pick the communication method and edge server."""
    apps = tuple(catalog.application(a) for a in applications)
    if not apps:
        raise ValidationError("scenario needs at least one application")
    crop_profile = catalog.crop(crop)
    size = round_half_up(Fraction(str(farm_size_m2)))
    budget_cents = to_cents(budget, "budget")
    comm = catalog.comm(comm_override) if comm_override else select_comm(catalog.comm_options, size)
    _, needs_edge = required_compute_kinds(apps)
    edge = None
    if needs_edge:
        if not catalog.edge_servers:
            raise ValidationError("off-board applications need an edge server but the catalog lists none")
        edge = min(catalog.edge_servers, key=lambda e: (e.cost_cents, e.id))
    return Scenario(name=name, budget_cents=budget_cents, farm_size_m2=size, crop=crop_profile,
                    apps=apps, comm=comm, edge_server=edge, f_min_hours=f_min_hours)


def scenario_from_dict(doc: Mapping, catalog: ComponentCatalog, name: str = "scenario") -> Scenario:
    if not isinstance(doc, dict):
        raise SchemaError("scenario document must be an object")
    for key in ("budget", "farm_size_m2", "crop", "applications"):
        if key not in doc:
            raise SchemaError("missing scenario field", field=key)
    apps = doc["applications"]
    if not isinstance(apps, list) or not apps or not all(isinstance(a, str) for a in apps):
        raise SchemaError("expected a non-empty list of application ids", field="applications")
    if not isinstance(doc["crop"], str):
        raise SchemaError("expected a crop name", field="crop")
    for key in ("budget", "farm_size_m2"):
        if isinstance(doc[key], bool) or not isinstance(doc[key], (int, float, Decimal)):
            raise SchemaError("expected a number", field=key)
    return build_scenario(catalog, budget=doc["budget"], farm_size_m2=doc["farm_size_m2"],
                          crop=doc["crop"], applications=apps,
                          comm_override=doc.get("comm_override"),
                          name=str(doc.get("name", name)))


def load_scenario(path_or_name: str | os.PathLike, catalog: ComponentCatalog) -> Scenario:
    """Load a scenario file; a bare bundled name such as ``case_study_1`` also works."""
    path = Path(path_or_name)
    if not path.exists() and bundled_path(str(path_or_name)).exists():
        path = bundled_path(str(path_or_name))
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc.msg}", line=exc.lineno) from None
    return scenario_from_dict(doc, catalog, name=path.stem)


# ---------------------------------------------------------------------------
# fleet designs

@dataclass(frozen=True)
class FleetDesign:
    """Unit counts per configuration plus the shared edge and communication costs."""

    lines: tuple[tuple[Configuration, int], ...]
    edge_cost_cents: int = 0
    comm_cost_cents: int = 0
    extra_cost_cents: int = 0  # application parts, per unit

    @property
    def total_units(self) -> int:
        return sum(x for _, x in self.lines)

    @property
    def vehicle_cost_cents(self) -> int:
        return sum((cfg.metrics.unit_cost_cents + self.extra_cost_cents) * x for cfg, x in self.lines)

    @property
    def total_cost_cents(self) -> int:
        return self.vehicle_cost_cents + self.edge_cost_cents + self.comm_cost_cents

    @property
    def total_coverage_m2(self) -> int:
        return sum(cfg.metrics.area_m2 * x for cfg, x in self.lines)

    @property
    def total_payload_kg(self) -> float:
        return sum(cfg.metrics.max_payload_kg * x for cfg, x in self.lines)

    @property
    def runtime_hours(self) -> float:
        """Fleet endurance: the shortest runtime of any line."""
        return min((cfg.metrics.runtime_hours for cfg, _ in self.lines), default=0.0)

    @property
    def key(self) -> tuple[tuple[str, int], ...]:
        return tuple((cfg.key, x) for cfg, x in self.lines)

    @property
    def design_id(self) -> str:
        text = ";".join(f"{k}*{x}" for k, x in self.key)
        return "d" + hashlib.sha1(text.encode()).hexdigest()[:10]


def make_design(lines: Iterable[tuple[Configuration, int]], scen: Scenario) -> FleetDesign:
    """Canonical design: zero counts dropped, duplicates merged, lines sorted by key."""
    merged: dict[str, list] = {}
    for cfg, x in lines:
        if x < 0:
            raise ValueError("unit counts must be non-negative")
        if x == 0:
            continue
        if cfg.key in merged:
            merged[cfg.key][1] += x
        else:
            merged[cfg.key] = [cfg, x]
    ordered = tuple((cfg, x) for _, (cfg, x) in sorted(merged.items()))
    return FleetDesign(ordered, edge_cost_cents=scen.edge_cost_cents,
                       comm_cost_cents=scen.comm_cost_cents, extra_cost_cents=scen.extra_cost_cents)


# ---------------------------------------------------------------------------
# checks

@dataclass(frozen=True)
class Check:
    rule: str
    passed: bool
    margin: float = 0   # slack (budget, cents) or surplus (coverage, m^2)
    detail: str = ""


def check_budget(design: FleetDesign, scen: Scenario) -> Check:
    total = design.total_cost_cents
    slack = scen.budget_cents - total
    return Check(BUDGET, slack >= 0, slack,
                 f"total {cents_to_str(total)} vs budget {cents_to_str(scen.budget_cents)}")


def check_coverage(design: FleetDesign, scen: Scenario) -> Check:
    total = design.total_coverage_m2
    surplus = total - scen.farm_size_m2
    return Check(COVERAGE, surplus >= 0, surplus, f"coverage {total} m2 vs farm {scen.farm_size_m2} m2")


def check_structure(cfg: Configuration) -> list[str]:
    """Violated structural rules of one build (empty when valid)."""
    violated = []
    if cfg.battery_count < 1:
        violated.append(BATTERY)
    if cfg.motor.size_class != cfg.chassis.size_class:
        violated.append(SIZE_MATCH)
    if cfg.metrics.max_payload_kg < 0:
        violated.append(PAYLOAD)
    return violated


def check_flight_time(cfg: Configuration, scen: Scenario | None = None) -> bool:
    """Drones must fly at least the minimum time; rovers pass vacuously."""
    if cfg.vehicle_kind != DRONE:
        return True
    f_min = scen.f_min_hours if scen is not None else F_MIN_HOURS
    return cfg.metrics.runtime_hours >= f_min


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    violations: tuple[str, ...]
    details: tuple[str, ...] = field(default=(), compare=False)


def feasible(design: FleetDesign, scen: Scenario) -> Verdict:
    """Evaluate every rule and report all the violated ones."""
    violations: list[str] = []
    details: list[str] = []

    def fail(rule, detail):
        if rule not in violations:
            violations.append(rule)
        details.append(f"{rule}: {detail}")

    b = check_budget(design, scen)
    if not b.passed:
        fail(BUDGET, b.detail)
    c = check_coverage(design, scen)
    if not c.passed:
        fail(COVERAGE, c.detail)
    try:
        platforms = scen.platforms
    except InfeasibleError as exc:
        platforms = frozenset()
        fail(PLATFORM, str(exc))
    kinds = scen.compute_kinds
    for cfg, _ in design.lines:
        for rule in check_structure(cfg):
            fail(rule, cfg.key)
        if not check_flight_time(cfg, scen):
            fail(FLIGHT_TIME, f"{cfg.key} runs {cfg.metrics.runtime_hours:.4f} h")
        if cfg.metrics.runtime_hours <= 0:
            fail(POWER, cfg.key)
        if platforms and cfg.vehicle_kind not in platforms:
            fail(PLATFORM, f"{cfg.vehicle_kind} not allowed for crop {scen.crop.crop!r} "
                           f"with the chosen applications")
        if cfg.compute.kind not in kinds:
            fail(COMPUTE_KIND, f"{cfg.compute.kind} not allowed; need one of {sorted(kinds)}")
    return Verdict(not violations, tuple(violations), tuple(details))
