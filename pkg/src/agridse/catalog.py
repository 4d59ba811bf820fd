"""Component inventory, crop/application tables and catalog file ingestion.

A catalog is a JSON document with the top-level keys ``chassis``,
``motors``, ``batteries``, ``tires``, ``compute``, ``comm``,
``edge_servers``, ``sensors``, ``crops`` and ``applications``.  Every entry
carries an ``id``.  Money is written as a decimal with at most two fraction
digits and held internally as integer cents.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import InfeasibleError, SchemaError, ValidationError

ROVER = "rover"
DRONE = "drone"
BOTH = "both"
VEHICLE_KINDS = (ROVER, DRONE)
SIZE_CLASSES = ("small", "medium", "large")
COMPUTE_KINDS = ("CPU", "GPU", "TPU")
ONBOARD = "onboard"
OFFBOARD = "offboard"

CATALOG_ENV_VAR = "AGRIDSE_CATALOG"

# Crop class -> platforms suited to it.
CROP_PLATFORMS: dict[str, frozenset[str]] = {
    "indoor": frozenset({ROVER}),
    "fiber_legume": frozenset({DRONE}),
    "early_paddy": frozenset({DRONE}),
    "cereal": frozenset({ROVER, DRONE}),
    "tree": frozenset({ROVER, DRONE}),
    "orchard": frozenset({ROVER, DRONE}),
    "vine": frozenset({ROVER, DRONE}),
    "vegetable": frozenset({ROVER, DRONE}),
    "forage": frozenset({ROVER, DRONE}),
    "oilseed": frozenset({ROVER, DRONE}),
}

# (id, display name, compute mode, platform)
APPLICATION_TABLE: tuple[tuple[str, str, str, str], ...] = (
    ("general_crop_monitoring", "General crop monitoring", OFFBOARD, BOTH),
    ("thermal_imaging", "Thermal imaging", OFFBOARD, BOTH),
    ("image_stitching", "Image stitching", OFFBOARD, BOTH),
    ("soil_monitoring", "Soil monitoring", OFFBOARD, ROVER),
    ("yield_estimation", "Yield estimation", OFFBOARD, BOTH),
    ("quality_control", "Quality control", OFFBOARD, ROVER),
    ("autonomous_picking", "Autonomous fruit/vegetable picking", ONBOARD, ROVER),
    ("mechanical_weeding", "Mechanical weeding", ONBOARD, ROVER),
    ("soil_ph_sampling", "Soil pH sampling", ONBOARD, ROVER),
    ("climate_mapping", "Climate mapping", OFFBOARD, ROVER),
    ("fence_inspection", "Fence/infrastructure inspection", OFFBOARD, DRONE),
    ("livestock_monitoring", "Livestock monitoring", ONBOARD, BOTH),
    ("beehive_inspection", "Beehive inspection", ONBOARD, ROVER),
    ("frost_pest_warning", "Frost & pest early-warning systems", ONBOARD, BOTH),
    ("fertilizing", "Fertilizing", ONBOARD, ROVER),
)


@dataclass(frozen=True)
class Chassis:
    id: str
    vehicle_kind: str
    size_class: str
    mass_kg: float
    cost_cents: int
    motor_count: int = 4
    tire_count: int = 0     # rovers only; drones carry none


@dataclass(frozen=True)
class Motor:
    id: str
    size_class: str
    torque_Nm: float        # per motor
    mass_kg: float
    cost_cents: int
    peak_power_W: float
    vehicle_kind: str = BOTH


@dataclass(frozen=True)
class Battery:
    id: str
    capacity_Wh: float
    mass_kg: float
    cost_cents: int
    vehicle_kind: str = BOTH


@dataclass(frozen=True)
class Tire:
    id: str
    radius_m: float
    mass_kg: float
    cost_cents: int


@dataclass(frozen=True)
class ComputeUnit:
    id: str
    kind: str
    benchmark_score: float  # multi-core benchmark score, catalog data
    mass_kg: float
    cost_cents: int
    power_W: float


@dataclass(frozen=True)
class CommMethod:
    id: str
    range_km: float
    cost_per_cell_cents: int


@dataclass(frozen=True)
class EdgeServer:
    id: str
    cost_cents: int
    benchmark_score: float | None = None


@dataclass(frozen=True)
class Sensor:
    id: str
    mass_kg: float
    cost_cents: int
    power_W: float = 0.0


@dataclass(frozen=True)
class CropProfile:
    crop: str
    allowed_platforms: frozenset[str]


@dataclass(frozen=True)
class ApplicationProfile:
    id: str
    name: str
    compute_mode: str
    platform: str
    extra_cost_cents: int = 0
    extra_mass_kg: float = 0.0
    sensors: tuple[str, ...] = ()

    @property
    def platforms(self) -> frozenset[str]:
        return frozenset(VEHICLE_KINDS) if self.platform == BOTH else frozenset({self.platform})


def default_crops() -> tuple[CropProfile, ...]:
    return tuple(CropProfile(c, p) for c, p in CROP_PLATFORMS.items())


def default_applications() -> tuple[ApplicationProfile, ...]:
    return tuple(ApplicationProfile(i, n, m, p) for i, n, m, p in APPLICATION_TABLE)


@dataclass(frozen=True)
class ComponentCatalog:
    chassis_options: tuple[Chassis, ...]
    motor_options: tuple[Motor, ...]
    battery_options: tuple[Battery, ...]
    tire_options: tuple[Tire, ...]
    compute_options: tuple[ComputeUnit, ...]
    comm_options: tuple[CommMethod, ...]
    edge_servers: tuple[EdgeServer, ...] = ()
    sensors: tuple[Sensor, ...] = ()
    crops: tuple[CropProfile, ...] = field(default_factory=default_crops)
    applications: tuple[ApplicationProfile, ...] = field(default_factory=default_applications)
    battery_counts: tuple[int, ...] = (1,)
    # m^2 per kg of component weight, per vehicle kind; scales the area model
    area_calibration: tuple[tuple[str, float], ...] = ((ROVER, 1.0), (DRONE, 1.0))
    name: str = ""

    def kappa(self, vehicle_kind: str) -> float:
        return dict(self.area_calibration).get(vehicle_kind, 1.0)

    def crop(self, name: str) -> CropProfile:
        for c in self.crops:
            if c.crop == name:
                return c
        raise ValidationError(f"unknown crop {name!r}; known: {sorted(c.crop for c in self.crops)}",
                              option_id=name)

    def application(self, app_id: str) -> ApplicationProfile:
        for a in self.applications:
            if a.id == app_id or a.name == app_id:
                return a
        raise ValidationError(f"unknown application {app_id!r}", option_id=app_id)

    def sensor(self, sensor_id: str) -> Sensor:
        for s in self.sensors:
            if s.id == sensor_id:
                return s
        raise ValidationError(f"unknown sensor {sensor_id!r}", option_id=sensor_id)

    def comm(self, comm_id: str) -> CommMethod:
        for c in self.comm_options:
            if c.id == comm_id:
                return c
        raise ValidationError(f"unknown communication method {comm_id!r}", option_id=comm_id)

    def by_id(self, category: str, option_id: str):
        for opt in getattr(self, _CATEGORY_ATTR[category]):
            if opt.id == option_id:
                return opt
        raise ValidationError(f"unknown {category} option {option_id!r}", option_id=option_id)


_CATEGORY_ATTR = {
    "chassis": "chassis_options",
    "motors": "motor_options",
    "batteries": "battery_options",
    "tires": "tire_options",
    "compute": "compute_options",
    "comm": "comm_options",
    "edge_servers": "edge_servers",
    "sensors": "sensors",
}


# ---------------------------------------------------------------------------
# platform and compute rules

def compatible_platforms(crop: CropProfile, apps: Iterable[ApplicationProfile]) -> frozenset[str]:
    """Platforms allowed by the crop and by every application.

    Raises InfeasibleError naming the first conflicting pair when the
    intersection is empty.
    """
    apps = list(apps)
    if not apps:
        raise ValueError("at least one application is required")
    allowed = frozenset(crop.allowed_platforms)
    owner = f"crop {crop.crop!r}"
    for app in apps:
        narrowed = allowed & app.platforms
        if not narrowed:
            raise InfeasibleError(
                f"{owner} allows {sorted(allowed)} but application {app.id!r} "
                f"requires {sorted(app.platforms)}",
                rule="platform",
                diagnostics={"conflict": (owner, f"application {app.id!r}")},
            )
        if narrowed != allowed:
            owner = f"application {app.id!r}"
        allowed = narrowed
    return allowed


def required_compute_kinds(apps: Iterable[ApplicationProfile]) -> tuple[frozenset[str], bool]:
    """Allowed compute kinds and whether an edge server is needed.

    Any onboard application restricts compute to GPU/TPU; any offboard
    application requires an edge server.
    """
    apps = list(apps)
    if not apps:
        raise ValueError("at least one application is required")
    onboard = any(a.compute_mode == ONBOARD for a in apps)
    needs_edge = any(a.compute_mode == OFFBOARD for a in apps)
    kinds = frozenset({"GPU", "TPU"}) if onboard else frozenset(COMPUTE_KINDS)
    return kinds, needs_edge


# ---------------------------------------------------------------------------
# parsing

def to_cents(value: Any, where: str = "cost") -> int:
    try:
        d = Decimal(str(value))
    except (InvalidOperation, ValueError):
        raise SchemaError("not a decimal amount", field=where) from None
    if not d.is_finite():
        raise SchemaError("non-finite amount", field=where)
    cents = d * 100
    if cents != cents.to_integral_value():
        raise SchemaError("money needs at most two fraction digits", field=where)
    return int(cents)


def cents_to_str(cents: int) -> str:
    sign = "-" if cents < 0 else ""
    cents = abs(cents)
    return f"{sign}{cents // 100}.{cents % 100:02d}"


def _num(entry: Mapping, key: str, where: str, default: Any = None) -> float:
    if key not in entry:
        if default is not None:
            return default
        raise SchemaError("missing numeric field", field=f"{where}.{key}")
    v = entry[key]
    if isinstance(v, bool) or not isinstance(v, (int, float, Decimal)):
        raise SchemaError("expected a number", field=f"{where}.{key}")
    return float(v)


def _str(entry: Mapping, key: str, where: str, default: str | None = None) -> str:
    if key not in entry:
        if default is not None:
            return default
        raise SchemaError("missing string field", field=f"{where}.{key}")
    v = entry[key]
    if not isinstance(v, str):
        raise SchemaError("expected a string", field=f"{where}.{key}")
    return v


def _int(entry: Mapping, key: str, where: str, default: int | None = None) -> int:
    if key not in entry:
        if default is not None:
            return default
        raise SchemaError("missing integer field", field=f"{where}.{key}")
    v = entry[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError("expected an integer", field=f"{where}.{key}")
    return v


def _entries(doc: Mapping, key: str, required: bool = True) -> list[Mapping]:
    if key not in doc:
        if required:
            raise SchemaError("missing top-level list", field=key)
        return []
    v = doc[key]
    if not isinstance(v, list) or not all(isinstance(e, dict) for e in v):
        raise SchemaError("expected a list of objects", field=key)
    return v


def _parse_chassis(e: Mapping, w: str) -> Chassis:
    kind = _str(e, "vehicle_kind", w)
    return Chassis(
        id=_str(e, "id", w),
        vehicle_kind=kind,
        size_class=_str(e, "size_class", w),
        mass_kg=_num(e, "mass_kg", w),
        cost_cents=to_cents(e.get("cost"), f"{w}.cost"),
        motor_count=_int(e, "motor_count", w, 4),
        tire_count=_int(e, "tire_count", w, 4 if kind == ROVER else 0),
    )


def _parse_motor(e: Mapping, w: str) -> Motor:
    return Motor(
        id=_str(e, "id", w),
        size_class=_str(e, "size_class", w),
        torque_Nm=_num(e, "torque_Nm", w),
        mass_kg=_num(e, "mass_kg", w),
        cost_cents=to_cents(e.get("cost"), f"{w}.cost"),
        peak_power_W=_num(e, "peak_power_W", w),
        vehicle_kind=_str(e, "vehicle_kind", w, BOTH),
    )


def _parse_battery(e: Mapping, w: str) -> Battery:
    return Battery(
        id=_str(e, "id", w),
        capacity_Wh=_num(e, "capacity_Wh", w),
        mass_kg=_num(e, "mass_kg", w),
        cost_cents=to_cents(e.get("cost"), f"{w}.cost"),
        vehicle_kind=_str(e, "vehicle_kind", w, BOTH),
    )


def _parse_tire(e: Mapping, w: str) -> Tire:
    return Tire(_str(e, "id", w), _num(e, "radius_m", w), _num(e, "mass_kg", w),
                to_cents(e.get("cost"), f"{w}.cost"))


def _parse_compute(e: Mapping, w: str) -> ComputeUnit:
    return ComputeUnit(
        id=_str(e, "id", w),
        kind=_str(e, "kind", w),
        benchmark_score=_num(e, "benchmark_score", w),
        mass_kg=_num(e, "mass_kg", w),
        cost_cents=to_cents(e.get("cost"), f"{w}.cost"),
        power_W=_num(e, "power_W", w),
    )


def _parse_comm(e: Mapping, w: str) -> CommMethod:
    return CommMethod(_str(e, "id", w), _num(e, "range_km", w),
                      to_cents(e.get("cost_per_cell"), f"{w}.cost_per_cell"))


def _parse_edge(e: Mapping, w: str) -> EdgeServer:
    score = e.get("benchmark_score")
    return EdgeServer(_str(e, "id", w), to_cents(e.get("cost"), f"{w}.cost"),
                      None if score is None else _num(e, "benchmark_score", w))


def _parse_sensor(e: Mapping, w: str) -> Sensor:
    return Sensor(_str(e, "id", w), _num(e, "mass_kg", w), to_cents(e.get("cost"), f"{w}.cost"),
                  _num(e, "power_W", w, 0.0))


def _parse_crop(e: Mapping, w: str) -> CropProfile:
    plats = e.get("allowed_platforms")
    if not isinstance(plats, list) or not all(isinstance(p, str) for p in plats):
        raise SchemaError("expected a list of platform names", field=f"{w}.allowed_platforms")
    return CropProfile(_str(e, "crop", w), frozenset(plats))


def _parse_application(e: Mapping, w: str) -> ApplicationProfile:
    sensors = e.get("sensors", [])
    if not isinstance(sensors, list) or not all(isinstance(s, str) for s in sensors):
        raise SchemaError("expected a list of sensor ids", field=f"{w}.sensors")
    app_id = _str(e, "id", w)
    return ApplicationProfile(
        id=app_id,
        name=_str(e, "name", w, app_id),
        compute_mode=_str(e, "compute_mode", w),
        platform=_str(e, "platform", w),
        extra_cost_cents=to_cents(e.get("extra_cost", 0), f"{w}.extra_cost"),
        extra_mass_kg=_num(e, "extra_mass_kg", w, 0.0),
        sensors=tuple(sensors),
    )


def catalog_from_dict(doc: Mapping) -> ComponentCatalog:
    """Build and validate a catalog from an already-parsed document."""
    if not isinstance(doc, dict):
        raise SchemaError("catalog document must be an object")

    def parse(key, fn, required=True):
        return tuple(fn(e, f"{key}[{i}]") for i, e in enumerate(_entries(doc, key, required)))

    crops = parse("crops", _parse_crop, False) or default_crops()
    apps = parse("applications", _parse_application, False) or default_applications()
    counts = doc.get("battery_counts", [1])
    if not isinstance(counts, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in counts):
        raise SchemaError("expected a list of integers", field="battery_counts")
    kappa = doc.get("area_calibration", 1.0)
    if isinstance(kappa, (int, float, Decimal)) and not isinstance(kappa, bool):
        kappa = {ROVER: kappa, DRONE: kappa}
    if not isinstance(kappa, dict):
        raise SchemaError("expected a number or a per-vehicle-kind object", field="area_calibration")
    catalog = ComponentCatalog(
        chassis_options=parse("chassis", _parse_chassis),
        motor_options=parse("motors", _parse_motor),
        battery_options=parse("batteries", _parse_battery),
        tire_options=parse("tires", _parse_tire),
        compute_options=parse("compute", _parse_compute),
        comm_options=parse("comm", _parse_comm),
        edge_servers=parse("edge_servers", _parse_edge, False),
        sensors=parse("sensors", _parse_sensor, False),
        crops=crops,
        applications=apps,
        battery_counts=tuple(counts),
        area_calibration=tuple(sorted((str(k), float(v)) for k, v in kappa.items())),
        name=str(doc.get("name", "")),
    )
    validate_catalog(catalog)
    return catalog


def load_catalog(path: str | os.PathLike) -> ComponentCatalog:
    """Parse and validate a catalog file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc.msg}", line=exc.lineno) from None
    return catalog_from_dict(doc)


def validate_catalog(cat: ComponentCatalog) -> None:
    """Raise ValidationError naming the first option that breaks an invariant."""
    for attr, label in [("chassis_options", "chassis"), ("motor_options", "motor"),
                        ("battery_options", "battery"), ("compute_options", "compute unit"),
                        ("comm_options", "communication method")]:
        if not getattr(cat, attr):
            raise ValidationError(f"catalog has no {label} options")
    if any(c.vehicle_kind == ROVER for c in cat.chassis_options) and not cat.tire_options:
        raise ValidationError("catalog has rover chassis but no tire options")
    if not cat.battery_counts or any(n < 1 for n in cat.battery_counts):
        raise ValidationError("battery_counts must be non-empty and every count >= 1")

    priced = [("chassis", cat.chassis_options), ("motor", cat.motor_options),
              ("battery", cat.battery_options), ("tire", cat.tire_options),
              ("compute", cat.compute_options), ("edge server", cat.edge_servers),
              ("sensor", cat.sensors)]
    for label, opts in priced:
        seen = set()
        for o in opts:
            if o.id in seen:
                raise ValidationError(f"duplicate {label} id {o.id!r}", option_id=o.id)
            seen.add(o.id)
            if o.cost_cents <= 0:
                raise ValidationError(f"{label} {o.id!r} must have positive cost", option_id=o.id)
            if getattr(o, "mass_kg", 0.0) < 0:
                raise ValidationError(f"{label} {o.id!r} has negative mass", option_id=o.id)

    for c in cat.chassis_options:
        if c.vehicle_kind not in VEHICLE_KINDS:
            raise ValidationError(f"chassis {c.id!r}: unknown vehicle kind {c.vehicle_kind!r}", option_id=c.id)
        if c.size_class not in SIZE_CLASSES:
            raise ValidationError(f"chassis {c.id!r}: unknown size class {c.size_class!r}", option_id=c.id)
        if c.motor_count < 1:
            raise ValidationError(f"chassis {c.id!r}: needs at least one motor", option_id=c.id)
        if c.vehicle_kind == ROVER and c.tire_count < 3:
            raise ValidationError(f"rover chassis {c.id!r}: needs at least 3 tires", option_id=c.id)
        if c.vehicle_kind == DRONE and c.tire_count != 0:
            raise ValidationError(f"drone chassis {c.id!r}: drones carry no tires", option_id=c.id)
    for m in cat.motor_options:
        if m.size_class not in SIZE_CLASSES:
            raise ValidationError(f"motor {m.id!r}: unknown size class {m.size_class!r}", option_id=m.id)
        if m.torque_Nm <= 0:
            raise ValidationError(f"motor {m.id!r}: torque must be positive", option_id=m.id)
        if m.peak_power_W < 0:
            raise ValidationError(f"motor {m.id!r}: negative peak power", option_id=m.id)
        if m.vehicle_kind not in (*VEHICLE_KINDS, BOTH):
            raise ValidationError(f"motor {m.id!r}: unknown vehicle kind", option_id=m.id)
    for b in cat.battery_options:
        if b.capacity_Wh <= 0:
            raise ValidationError(f"battery {b.id!r}: capacity must be positive", option_id=b.id)
        if b.vehicle_kind not in (*VEHICLE_KINDS, BOTH):
            raise ValidationError(f"battery {b.id!r}: unknown vehicle kind", option_id=b.id)
    for t in cat.tire_options:
        if t.radius_m <= 0:
            raise ValidationError(f"tire {t.id!r}: radius must be positive", option_id=t.id)
    for cu in cat.compute_options:
        if cu.kind not in COMPUTE_KINDS:
            raise ValidationError(f"compute {cu.id!r}: unknown kind {cu.kind!r}", option_id=cu.id)
        if cu.benchmark_score <= 0:
            raise ValidationError(f"compute {cu.id!r}: benchmark score must be positive", option_id=cu.id)
        if cu.power_W < 0:
            raise ValidationError(f"compute {cu.id!r}: negative power", option_id=cu.id)
    seen = set()
    for cm in cat.comm_options:
        if cm.id in seen:
            raise ValidationError(f"duplicate communication id {cm.id!r}", option_id=cm.id)
        seen.add(cm.id)
        if cm.range_km <= 0:
            raise ValidationError(f"comm {cm.id!r}: range must be positive", option_id=cm.id)
        if cm.cost_per_cell_cents < 0:
            raise ValidationError(f"comm {cm.id!r}: negative cost per cell", option_id=cm.id)
    for s in cat.sensors:
        if s.power_W < 0:
            raise ValidationError(f"sensor {s.id!r}: negative power", option_id=s.id)

    seen = set()
    for crop in cat.crops:
        if crop.crop not in CROP_PLATFORMS:
            raise ValidationError(f"unknown crop class {crop.crop!r}", option_id=crop.crop)
        if crop.crop in seen:
            raise ValidationError(f"duplicate crop {crop.crop!r}", option_id=crop.crop)
        seen.add(crop.crop)
        if not crop.allowed_platforms or not crop.allowed_platforms <= set(VEHICLE_KINDS):
            raise ValidationError(f"crop {crop.crop!r}: allowed platforms must be a non-empty "
                                  f"subset of {VEHICLE_KINDS}", option_id=crop.crop)
    sensor_ids = {s.id for s in cat.sensors}
    seen = set()
    for app in cat.applications:
        if app.id in seen:
            raise ValidationError(f"duplicate application {app.id!r}", option_id=app.id)
        seen.add(app.id)
        if app.compute_mode not in (ONBOARD, OFFBOARD):
            raise ValidationError(f"application {app.id!r}: unknown compute mode", option_id=app.id)
        if app.platform not in (ROVER, DRONE, BOTH):
            raise ValidationError(f"application {app.id!r}: unknown platform", option_id=app.id)
        if app.extra_cost_cents < 0 or app.extra_mass_kg < 0:
            raise ValidationError(f"application {app.id!r}: negative extra cost or mass", option_id=app.id)
        missing = [s for s in app.sensors if s not in sensor_ids]
        if missing:
            raise ValidationError(f"application {app.id!r} references unknown sensors {missing}",
                                  option_id=app.id)


# ---------------------------------------------------------------------------
# serialization

def _money(cents: int) -> float:
    # shortest float repr of a two-digit amount is its decimal text
    return cents / 100


def catalog_to_dict(cat: ComponentCatalog) -> dict:
    def opt(o, **extra):
        d = {"id": o.id}
        d.update(extra)
        return d

    return {
        "name": cat.name,
        "battery_counts": list(cat.battery_counts),
        "area_calibration": dict(cat.area_calibration),
        "chassis": [opt(c, vehicle_kind=c.vehicle_kind, size_class=c.size_class, mass_kg=c.mass_kg,
                        cost=_money(c.cost_cents), motor_count=c.motor_count, tire_count=c.tire_count)
                    for c in cat.chassis_options],
        "motors": [opt(m, size_class=m.size_class, torque_Nm=m.torque_Nm, mass_kg=m.mass_kg,
                       cost=_money(m.cost_cents), peak_power_W=m.peak_power_W,
                       vehicle_kind=m.vehicle_kind) for m in cat.motor_options],
        "batteries": [opt(b, capacity_Wh=b.capacity_Wh, mass_kg=b.mass_kg, cost=_money(b.cost_cents),
                          vehicle_kind=b.vehicle_kind) for b in cat.battery_options],
        "tires": [opt(t, radius_m=t.radius_m, mass_kg=t.mass_kg, cost=_money(t.cost_cents))
                  for t in cat.tire_options],
        "compute": [opt(c, kind=c.kind, benchmark_score=c.benchmark_score, mass_kg=c.mass_kg,
                        cost=_money(c.cost_cents), power_W=c.power_W) for c in cat.compute_options],
        "comm": [opt(c, range_km=c.range_km, cost_per_cell=_money(c.cost_per_cell_cents))
                 for c in cat.comm_options],
        "edge_servers": [opt(e, cost=_money(e.cost_cents),
                             **({} if e.benchmark_score is None else {"benchmark_score": e.benchmark_score}))
                         for e in cat.edge_servers],
        "sensors": [opt(s, mass_kg=s.mass_kg, cost=_money(s.cost_cents), power_W=s.power_W)
                    for s in cat.sensors],
        "crops": [{"crop": c.crop, "allowed_platforms": sorted(c.allowed_platforms)} for c in cat.crops],
        "applications": [{"id": a.id, "name": a.name, "compute_mode": a.compute_mode,
                          "platform": a.platform, "extra_cost": _money(a.extra_cost_cents),
                          "extra_mass_kg": a.extra_mass_kg, "sensors": list(a.sensors)}
                         for a in cat.applications],
    }


def dumps_catalog(cat: ComponentCatalog) -> str:
    return json.dumps(catalog_to_dict(cat), indent=2) + "\n"


def dump_catalog(cat: ComponentCatalog, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps_catalog(cat), encoding="utf-8")


# ---------------------------------------------------------------------------
# bundled fixtures

def bundled_path(name: str) -> Path:
    """Path of a bundled data file; ``name`` may omit the ``.json`` suffix."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("agridse") / "data" / name))


def default_catalog_path() -> Path:
    env = os.environ.get(CATALOG_ENV_VAR)
    return Path(env) if env else bundled_path("default_catalog")


def default_catalog() -> ComponentCatalog:
    return load_catalog(default_catalog_path())
