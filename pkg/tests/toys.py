"""Small hand-built instances shared by the tests."""

from __future__ import annotations

import random

from agridse.catalog import (
    BOTH,
    DRONE,
    ONBOARD,
    ROVER,
    ApplicationProfile,
    Battery,
    Chassis,
    CommMethod,
    ComputeUnit,
    CropProfile,
    Motor,
    Tire,
)
from agridse.constraints import Scenario
from agridse.derive import Configuration, DerivedMetrics

GPU = ComputeUnit("gpu", "GPU", 100, 0.0, 100, 1.0)


def toy_config(i: int, cost_cents: int, area_m2: int, payload_kg: float = 1.0,
               kind: str = ROVER) -> Configuration:
    """A configuration whose metrics are set directly rather than derived."""
    rover = kind == ROVER
    metrics = DerivedMetrics(
        component_weight_kg=1.0,
        carry_weight_kg=1.0 + payload_kg,
        max_payload_kg=payload_kg,
        weight_factor=1 / (1 + payload_kg / 100),
        coverage_area_m2=float(area_m2),
        runtime_hours=1.0,
        unit_cost_cents=cost_cents,
        kappa=1.0,
    )
    return Configuration(
        chassis=Chassis(f"ch{i:03d}", kind, "small", 1.0, max(1, cost_cents), 4, 4 if rover else 0),
        motor=Motor("m", "small", 1.0, 0.1, 1, 1.0),
        motor_count=4,
        battery=Battery("b", 10.0, 0.5, 1),
        battery_count=1,
        compute=GPU,
        tire=Tire("t", 0.1, 0.1, 1) if rover else None,
        tire_count=4 if rover else 0,
        derived=metrics,
    )


def toy_scenario(budget_cents: int, farm_m2: int, comm_cents: int = 0, extra_cents: int = 0) -> Scenario:
    app = ApplicationProfile("toy_app", "Toy app", ONBOARD, BOTH, extra_cost_cents=extra_cents)
    return Scenario(name="toy", budget_cents=budget_cents, farm_size_m2=farm_m2,
                    crop=CropProfile("vine", frozenset({ROVER, DRONE})), apps=(app,),
                    comm=CommMethod("radio", 10.0, comm_cents))


def random_instance(rng: random.Random, n_configs: int | None = None):
    """Random configs and a scenario whose budget admits a few units of each."""
    n = n_configs or rng.randint(1, 4)
    configs = [toy_config(i, rng.randint(100, 5000), rng.randint(10, 400),
                          round(rng.uniform(0, 20), 3)) for i in range(n)]
    mean_cost = sum(c.metrics.unit_cost_cents for c in configs) / n
    budget = int(mean_cost * rng.uniform(1.5, 6))
    farm = int(sum(c.metrics.area_m2 for c in configs) / n * rng.uniform(0.5, 3)) + 1
    return configs, toy_scenario(budget, farm, comm_cents=rng.choice([0, 0, 50]))
