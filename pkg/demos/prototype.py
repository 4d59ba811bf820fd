"""Show the calibrated one-rover, one-drone prototype fleet and its cost breakdown.

    python demos/prototype.py
"""

from __future__ import annotations

from agridse.calibration import prototype_design
from agridse.catalog import bundled_path, load_catalog
from agridse.cli import explain_lines
from agridse.constraints import feasible, load_scenario


def main() -> None:
    catalog = load_catalog(bundled_path("prototype_catalog"))
    scen = load_scenario("prototype_scenario", catalog)
    design = prototype_design(catalog, scen)
    for cfg, _ in design.lines:
        m = cfg.metrics
        print(f"{cfg.vehicle_kind:<6} unit cost {m.unit_cost_cents / 100:>8.2f}  payload {m.max_payload_kg:7.2f} kg"
              f"  runtime {m.runtime_hours:8.4f} h  area {m.area_m2} m2  torque {cfg.motor.torque_Nm:.4f} Nm"
              f"  battery {cfg.battery.capacity_Wh:.3f} Wh")
    print()
    print("\n".join(explain_lines(design, scen)))
    verdict = feasible(design, scen)
    print(f"\nfeasible on a {scen.farm_size_m2} m2 vineyard with budget {scen.budget_cents / 100:.2f}:"
          f" {verdict.feasible}")


if __name__ == "__main__":
    main()
