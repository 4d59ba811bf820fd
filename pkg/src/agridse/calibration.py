"""Reverse calibration of the prototype catalog.

Prices of the prototype rover and drone are known exactly, as are their
payload and runtime.  Masses and peak powers are fixed by hand; motor torque
and battery capacity are then solved from the payload and runtime targets so
the derived metrics land on them.  Running this module regenerates the
bundled ``prototype_catalog.json`` and ``prototype_design.json``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from .catalog import (
    DRONE,
    ROVER,
    Battery,
    Chassis,
    CommMethod,
    ComponentCatalog,
    ComputeUnit,
    EdgeServer,
    Motor,
    Tire,
    bundled_path,
    dumps_catalog,
    to_cents,
)
from .constraints import FleetDesign, Scenario, make_design
from .derive import G, Configuration, component_weight, total_power_W, with_metrics


def _q(v) -> Fraction:
    return Fraction(repr(v)) if isinstance(v, float) else Fraction(v)


def torque_for_payload(payload_kg, component_weight_kg, motor_count: int, tire_radius_m=None, g=G) -> Fraction:
    """Per-motor torque that leaves exactly ``payload_kg`` after the build's own weight."""
    carry = _q(payload_kg) + _q(component_weight_kg)
    radius = _q(tire_radius_m) if tire_radius_m is not None else 1
    return carry * radius * _q(g) / motor_count


def capacity_for_runtime(runtime_hours, power_W, battery_count: int = 1) -> Fraction:
    return _q(runtime_hours) * _q(power_W) / battery_count


@dataclass(frozen=True)
class PrototypeTarget:
    unit_cost: str
    payload_kg: float
    runtime_hours: float


ROVER_TARGET = PrototypeTarget("3449.56", 34.67, 123.23)
DRONE_TARGET = PrototypeTarget("2345.34", 0.1, 0.22)
EDGE_SERVER_COST = "2000.00"

_RPI = ComputeUnit("rpi4b", "CPU", 1500, 0.046, to_cents("75.00"), 6.4)

# torque and capacity are placeholders until calibrated
_ROVER = Configuration(
    chassis=Chassis("rover_plastic_large", ROVER, "large", 12.0, to_cents("1743.00"), 4, 4),
    motor=Motor("rover_motor_large", "large", 1.0, 1.2, to_cents("250.00"), 15.0, ROVER),
    motor_count=4,
    battery=Battery("rover_batt_medium", 1.0, 6.0, to_cents("450.00"), ROVER),
    battery_count=1,
    compute=_RPI,
    tire=Tire("tire_r15", 0.15, 1.0, to_cents("45.39")),
    tire_count=4,
)
_DRONE = Configuration(
    chassis=Chassis("drone_metal_large", DRONE, "large", 1.2, to_cents("945.34"), 4, 0),
    motor=Motor("drone_motor_large", "large", 1.0, 0.1, to_cents("250.00"), 150.0, DRONE),
    motor_count=4,
    battery=Battery("drone_batt_large", 1.0, 0.6, to_cents("325.00"), DRONE),
    battery_count=1,
    compute=_RPI,
)


def calibrate(cfg: Configuration, target: PrototypeTarget) -> Configuration:
    radius = cfg.tire.radius_m if cfg.tire is not None else None
    torque = torque_for_payload(target.payload_kg, component_weight(cfg), cfg.motor_count, radius)
    capacity = capacity_for_runtime(target.runtime_hours, total_power_W(cfg), cfg.battery_count)
    return with_metrics(replace(cfg, motor=replace(cfg.motor, torque_Nm=float(torque)),
                                battery=replace(cfg.battery, capacity_Wh=float(capacity))))


def prototype_configurations() -> tuple[Configuration, Configuration]:
    return calibrate(_ROVER, ROVER_TARGET), calibrate(_DRONE, DRONE_TARGET)


def build_prototype_catalog() -> ComponentCatalog:
    rover, drone = prototype_configurations()
    return ComponentCatalog(
        chassis_options=(rover.chassis, drone.chassis),
        motor_options=(rover.motor, drone.motor),
        battery_options=(rover.battery, drone.battery),
        tire_options=(rover.tire,),
        compute_options=(_RPI,),
        comm_options=(CommMethod("wifi_mesh", 0.1, to_cents("120.00")),
                      CommMethod("lora", 2.0, to_cents("400.00"))),
        edge_servers=(EdgeServer("edge_server", to_cents(EDGE_SERVER_COST), 12000),),
        battery_counts=(1,),
        area_calibration=((DRONE, 1500.0), (ROVER, 20.0)),
        name="prototype",
    )


def prototype_design(catalog: ComponentCatalog, scen: Scenario) -> FleetDesign:
    """One calibrated rover and one calibrated drone, resolved against ``catalog``."""
    from .records import design_from_dict, line_to_dict

    doc = {"lines": [line_to_dict(cfg, 1) for cfg in prototype_configurations()]}
    return design_from_dict(doc, catalog, scen)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="python -m agridse.calibration",
                                 description="Regenerate the calibrated prototype fixtures.")
    ap.add_argument("--out", type=Path, default=None,
                    help="output directory (default: the bundled data directory)")
    args = ap.parse_args(argv)
    out = args.out or bundled_path("prototype_catalog").parent
    out.mkdir(parents=True, exist_ok=True)
    (out / "prototype_catalog.json").write_text(dumps_catalog(build_prototype_catalog()), encoding="utf-8")
    from .records import line_to_dict

    design = {"lines": [line_to_dict(cfg, 1) for cfg in prototype_configurations()]}
    (out / "prototype_design.json").write_text(json.dumps(design, indent=2) + "\n", encoding="utf-8")
    print(f"wrote prototype fixtures to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
