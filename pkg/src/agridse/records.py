"""Output rows and files: frontier CSV, verification and timing tables, design JSON.

Column order of every CSV written here is fixed by the ``*_COLUMNS``
constants.  Currency is printed with two decimals, areas as integers and
hours with four decimals.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .catalog import ROVER, ComponentCatalog, cents_to_str
from .constraints import FleetDesign, Scenario, make_design
from .derive import Configuration, with_metrics
from .errors import SchemaError
from .ilp import scenario_sensors
from .objective import ObjectiveWeights

FRONTIER_COLUMNS = ("method", "design_id", "unit_cost", "total_cost", "unit_payload_kg",
                    "total_payload_kg", "total_coverage_m2", "runtime_hours", "sat_valid", "weights")
VERIFICATION_COLUMNS = ("method", "total", "valid", "invalid")
DESIGN_FORMAT = 1


def _money(cents: float) -> str:
    return f"{cents / 100:.2f}"


def weights_field(w: ObjectiveWeights) -> str:
    return ";".join(f"{float(v):.4f}" for v in w.normalized())


@dataclass(frozen=True)
class EvaluationRecord:
    """One (method, design) row of the frontier table.

    ``unit_cost`` and ``unit_payload_kg`` are per-vehicle averages over the
    fleet, so single-line fleets report the configuration's own values.
    """

    method: str
    design_id: str
    unit_cost: str
    total_cost: str
    unit_payload_kg: str
    total_payload_kg: str
    total_coverage_m2: str
    runtime_hours: str
    sat_valid: str
    weights: str

    @classmethod
    def from_design(cls, method: str, design: FleetDesign, sat_valid: bool,
                    weights: ObjectiveWeights) -> "EvaluationRecord":
        units = design.total_units
        payload = design.total_payload_kg
        for v in (payload, design.runtime_hours):
            if not math.isfinite(v):
                raise ValueError(f"non-finite metric in design {design.design_id}")
        return cls(
            method=method,
            design_id=design.design_id,
            unit_cost=_money(design.vehicle_cost_cents / units if units else 0),
            total_cost=_money(design.total_cost_cents),
            unit_payload_kg=f"{payload / units if units else 0.0:.4f}",
            total_payload_kg=f"{payload:.4f}",
            total_coverage_m2=str(design.total_coverage_m2),
            runtime_hours=f"{design.runtime_hours:.4f}",
            sat_valid="true" if sat_valid else "false",
            weights=weights_field(weights),
        )


def frontier_csv(records: Iterable[EvaluationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FRONTIER_COLUMNS)
    w.writerows(astuple(r) for r in records)
    return buf.getvalue()


def read_frontier(path: str | os.PathLike) -> list[EvaluationRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != FRONTIER_COLUMNS:
        raise SchemaError(f"{path}: unexpected frontier header", line=1)
    out = []
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != len(FRONTIER_COLUMNS):
            raise SchemaError(f"{path}: expected {len(FRONTIER_COLUMNS)} fields", line=n)
        out.append(EvaluationRecord(*row))
    return out


# ---------------------------------------------------------------------------
# plain-text tables

def _align(table: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in table) for i in range(len(table[0]))]
    return ["  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))).rstrip()
            for r in table]


def verification_table(counts: Sequence[tuple[str, int, int]]) -> str:
    """``counts`` holds (method, valid, invalid); Total is their sum."""
    table = [[c.capitalize() for c in VERIFICATION_COLUMNS]]
    for method, valid, invalid in counts:
        table.append([method, str(valid + invalid), str(valid), str(invalid)])
    return "\n".join(_align(table)) + "\n"


def parse_verification_table(text: str) -> list[tuple[str, int, int, int]]:
    rows = []
    for line in text.splitlines()[1:]:
        if line.strip():
            name, total, valid, invalid = line.split()
            rows.append((name, int(total), int(valid), int(invalid)))
    return rows


def timing_table(times: Sequence[tuple[str, float]]) -> str:
    table = [["Method", "Seconds"]] + [[m, f"{t:.3f}"] for m, t in times]
    return "\n".join(_align(table)) + "\n"


# ---------------------------------------------------------------------------
# design files

def line_to_dict(cfg: Configuration, units: int) -> dict:
    d = {
        "chassis": cfg.chassis.id,
        "motor": cfg.motor.id,
        "motor_count": cfg.motor_count,
        "battery": cfg.battery.id,
        "battery_count": cfg.battery_count,
        "compute": cfg.compute.id,
    }
    if cfg.tire is not None:
        d["tire"] = cfg.tire.id
        d["tire_count"] = cfg.tire_count
    d["units"] = units
    return d


def design_to_dict(design: FleetDesign) -> dict:
    return {
        "format": DESIGN_FORMAT,
        "design_id": design.design_id,
        "lines": [line_to_dict(cfg, x) for cfg, x in design.lines],
        "total_cost": cents_to_str(design.total_cost_cents),
        "total_coverage_m2": design.total_coverage_m2,
    }


def _field(entry: Mapping, key: str, kind, where: str, default=None):
    if key not in entry:
        if default is not None:
            return default
        raise SchemaError(f"{where}: missing field", field=key)
    v = entry[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise SchemaError(f"{where}: expected an integer", field=key)
    if kind is str and not isinstance(v, str):
        raise SchemaError(f"{where}: expected a string", field=key)
    return v


def design_from_dict(doc: Mapping, catalog: ComponentCatalog, scen: Scenario) -> FleetDesign:
    """Rebuild a design against ``catalog``; component ids must resolve."""
    if not isinstance(doc, dict) or not isinstance(doc.get("lines"), list):
        raise SchemaError("design document needs a 'lines' list", field="lines")
    sensors = scenario_sensors(catalog, scen)
    lines = []
    for n, e in enumerate(doc["lines"]):
        w = f"lines[{n}]"
        if not isinstance(e, dict):
            raise SchemaError(f"{w}: expected an object")
        ch = catalog.by_id("chassis", _field(e, "chassis", str, w))
        tire = None
        if ch.vehicle_kind == ROVER:
            tire = catalog.by_id("tires", _field(e, "tire", str, w))
        elif "tire" in e:
            raise SchemaError(f"{w}: drones carry no tires", field="tire")
        units = _field(e, "units", int, w)
        if units < 0:
            raise SchemaError(f"{w}: unit count must be non-negative", field="units")
        cfg = Configuration(
            chassis=ch,
            motor=catalog.by_id("motors", _field(e, "motor", str, w)),
            motor_count=_field(e, "motor_count", int, w, ch.motor_count),
            battery=catalog.by_id("batteries", _field(e, "battery", str, w)),
            battery_count=_field(e, "battery_count", int, w, 1),
            compute=catalog.by_id("compute", _field(e, "compute", str, w)),
            tire=tire,
            tire_count=_field(e, "tire_count", int, w, ch.tire_count) if tire is not None else 0,
            sensors=sensors,
            apps_extra_mass_kg=scen.apps_extra_mass_kg,
            kappa=catalog.kappa(ch.vehicle_kind),
        )
        lines.append((with_metrics(cfg), units))
    return make_design(lines, scen)


def dumps_design(design: FleetDesign) -> str:
    return json.dumps(design_to_dict(design), indent=2) + "\n"


def load_design(path: str | os.PathLike, catalog: ComponentCatalog, scen: Scenario) -> FleetDesign:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc.msg}", line=exc.lineno) from None
    return design_from_dict(doc, catalog, scen)


def dumps_design_set(by_method: Mapping[str, Sequence[FleetDesign]]) -> str:
    """Every design once, keyed by id, plus each method's ordered id list."""
    designs: dict[str, dict] = {}
    methods: dict[str, list[str]] = {}
    for method, pool in by_method.items():
        methods[method] = [d.design_id for d in pool]
        for d in pool:
            designs.setdefault(d.design_id, design_to_dict(d))
    doc = {"format": DESIGN_FORMAT, "methods": methods, "designs": dict(sorted(designs.items()))}
    return json.dumps(doc, indent=2) + "\n"


def load_design_set(path: str | os.PathLike, catalog: ComponentCatalog,
                    scen: Scenario) -> dict[str, FleetDesign]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict) or not isinstance(doc.get("designs"), dict):
        raise SchemaError(f"{path}: expected a 'designs' object", field="designs")
    return {k: design_from_dict(v, catalog, scen) for k, v in doc["designs"].items()}


def record_fields() -> tuple[str, ...]:
    return tuple(f.name for f in fields(EvaluationRecord))
