"""Derived physical quantities of one vehicle configuration.

All functions are plain arithmetic over the component fields, so they accept
``fractions.Fraction`` inputs as well as floats and stay exact in that case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .catalog import DRONE, ROVER, Battery, Chassis, ComputeUnit, Motor, Sensor, Tire
from .errors import ValidationError

G = 9.81  # m/s^2


@dataclass(frozen=True)
class DerivedMetrics:
    component_weight_kg: float
    carry_weight_kg: float
    max_payload_kg: float
    weight_factor: float
    coverage_area_m2: float
    runtime_hours: float
    unit_cost_cents: int
    kappa: float

    @property
    def area_m2(self) -> int:
        """Coverage rounded half-up to whole square metres."""
        return round_half_up(self.coverage_area_m2)

    @property
    def payload_g(self) -> int:
        return round_half_up(self.max_payload_kg * 1000)


@dataclass(frozen=True)
class Configuration:
    """One vehicle build; ``tire`` is None for drones."""

    chassis: Chassis
    motor: Motor
    motor_count: int
    battery: Battery
    battery_count: int
    compute: ComputeUnit
    tire: Tire | None = None
    tire_count: int = 0
    sensors: tuple[Sensor, ...] = ()
    apps_extra_mass_kg: float = 0.0
    kappa: float = 1.0
    derived: DerivedMetrics | None = field(default=None, compare=False, repr=False)

    @property
    def vehicle_kind(self) -> str:
        return self.chassis.vehicle_kind

    @property
    def key(self) -> str:
        parts = [self.vehicle_kind, self.chassis.id, f"{self.motor.id}x{self.motor_count}",
                 f"{self.battery.id}x{self.battery_count}"]
        if self.tire is not None:
            parts.append(f"{self.tire.id}x{self.tire_count}")
        parts.append(self.compute.id)
        parts.extend(s.id for s in self.sensors)
        return "|".join(parts)

    @property
    def metrics(self) -> DerivedMetrics:
        return self.derived if self.derived is not None else derive_metrics(self)


def round_half_up(x) -> int:
    return math.floor(x + 0.5)


def component_weight(cfg: Configuration, strict: bool = False):
    """Sum of structural masses; drones omit the tire term.

    Unless ``strict``, compute, sensor and application masses are included,
    since payload is the mass left for *additional* equipment.
    """
    w = (cfg.chassis.mass_kg + cfg.motor_count * cfg.motor.mass_kg
         + cfg.battery_count * cfg.battery.mass_kg)
    if cfg.vehicle_kind == ROVER and cfg.tire is not None:
        w = w + cfg.tire_count * cfg.tire.mass_kg
    if not strict:
        w = w + cfg.compute.mass_kg + sum(s.mass_kg for s in cfg.sensors) + cfg.apps_extra_mass_kg
    return w


def carry_weight(cfg: Configuration, g=G):
    """Mass the motors can move: torque * nm / (TR * g); drones drop TR."""
    force = cfg.motor.torque_Nm * cfg.motor_count
    if cfg.vehicle_kind == DRONE:
        return force / g
    if cfg.tire is None or cfg.tire.radius_m <= 0:
        raise ValidationError(f"rover {cfg.key!r} needs a positive tire radius", option_id=cfg.key)
    return force / (cfg.tire.radius_m * g)


def max_payload(cfg: Configuration, g=G, strict: bool = False):
    """Carry weight minus component weight; negative means the build cannot move itself."""
    return carry_weight(cfg, g) - component_weight(cfg, strict)


def weight_factor(w_max):
    """Efficiency reduction with payload, 1 / (1 + W_max/100)."""
    if w_max < 0:
        raise ValueError(f"weight factor needs a non-negative payload, got {w_max}")
    return 1 / (1 + w_max / 100)


def coverage_area(cfg: Configuration, g=G, strict: bool = False):
    """Per-unit area: BATT * T * W_component * f_weight(W_max) * kappa (T = 1 for drones)."""
    w_comp = component_weight(cfg, strict)
    w_max = carry_weight(cfg, g) - w_comp
    tires = cfg.tire_count if cfg.vehicle_kind == ROVER else 1
    return cfg.battery_count * tires * w_comp * weight_factor(w_max) * cfg.kappa


def total_power_W(cfg: Configuration):
    return (cfg.motor_count * cfg.motor.peak_power_W + cfg.compute.power_W
            + sum(s.power_W for s in cfg.sensors))


def runtime_hours(cfg: Configuration):
    """Hours on battery with every load at peak draw."""
    power = total_power_W(cfg)
    if power <= 0:
        raise ValidationError(f"configuration {cfg.key!r} draws no power", option_id=cfg.key)
    return cfg.battery_count * cfg.battery.capacity_Wh / power


def unit_cost_cents(cfg: Configuration) -> int:
    cost = (cfg.chassis.cost_cents + cfg.motor_count * cfg.motor.cost_cents
            + cfg.battery_count * cfg.battery.cost_cents + cfg.compute.cost_cents
            + sum(s.cost_cents for s in cfg.sensors))
    if cfg.tire is not None:
        cost += cfg.tire_count * cfg.tire.cost_cents
    return cost


def derive_metrics(cfg: Configuration, g=G, strict: bool = False) -> DerivedMetrics:
    w_comp = component_weight(cfg, strict)
    w_carry = carry_weight(cfg, g)
    w_max = w_carry - w_comp
    if w_max >= 0:
        f = weight_factor(w_max)
        area = coverage_area(cfg, g, strict)
    else:
        # structurally infeasible; rejected by the constraint checks
        f, area = 0.0, 0.0
    power = total_power_W(cfg)
    runtime = runtime_hours(cfg) if power > 0 else 0.0
    return DerivedMetrics(
        component_weight_kg=w_comp,
        carry_weight_kg=w_carry,
        max_payload_kg=w_max,
        weight_factor=f,
        coverage_area_m2=area,
        runtime_hours=runtime,
        unit_cost_cents=unit_cost_cents(cfg),
        kappa=cfg.kappa,
    )


def with_metrics(cfg: Configuration, g=G, strict: bool = False) -> Configuration:
    return replace(cfg, derived=derive_metrics(cfg, g, strict))
