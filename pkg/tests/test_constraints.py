from __future__ import annotations

import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from agridse.catalog import CommMethod
from agridse.constraints import (
    BUDGET,
    COMPUTE_KIND,
    COVERAGE,
    FLIGHT_TIME,
    SIZE_MATCH,
    check_budget,
    check_coverage,
    check_flight_time,
    check_structure,
    comm_cells,
    comm_cost_cents,
    feasible,
    load_scenario,
    make_design,
    scenario_from_dict,
    select_comm,
)
from agridse.errors import SchemaError, ValidationError
from toys import toy_config, toy_scenario


def cells_oracle(farm_m2: int, range_km) -> int:
    # smallest l with l * range >= side, side = sqrt(S); compared squared in exact arithmetic
    r = Fraction(str(range_km)) * 1000
    l = 1
    while (l * r) ** 2 < farm_m2:
        l += 1
    return l


class TestComm:
    def test_one_acre_needs_one_wifi_cell(self):
        assert comm_cells(4047, CommMethod("w", 0.1, 100)) == 1

    def test_ten_acres_need_three_wifi_cells(self):
        assert comm_cells(40469, CommMethod("w", 0.1, 100)) == 3

    @given(st.integers(1, 10**7), st.sampled_from([0.05, 0.1, 0.25, 1.0, 2.0, 5.0]))
    def test_cells_match_exact_ceiling(self, farm, rng):
        assert comm_cells(farm, CommMethod("c", rng, 0)) == cells_oracle(farm, rng)

    def test_perfect_square_boundary(self):
        # side exactly 100 m: one cell, one more square metre tips it to two
        c = CommMethod("w", 0.1, 0)
        assert comm_cells(10000, c) == 1
        assert comm_cells(10001, c) == 2

    def test_cost_linear_on_random_pairs(self):
        rng = random.Random(3)
        for _ in range(100):
            cells, price = rng.randint(0, 500), rng.randint(0, 10**6)
            c = CommMethod("c", 1.0, price)
            assert comm_cost_cents(cells, c) == cells * price
            assert comm_cost_cents(2 * cells, c) == 2 * comm_cost_cents(cells, c)

    def test_select_cheapest_total(self):
        wifi, lora = CommMethod("wifi", 0.1, 12000), CommMethod("lora", 2.0, 40000)
        assert select_comm([wifi, lora], 4047) == wifi      # 1 cell each
        assert select_comm([wifi, lora], 404690) == lora    # 7 wifi cells cost more


class TestScenario:
    def test_case_study_1(self, cs1):
        assert cs1.platforms == {"rover"}
        assert cs1.compute_kinds == {"GPU", "TPU"}
        assert cs1.edge_server is None and cs1.edge_cost_cents == 0
        assert cs1.extra_cost_cents == 120000

    def test_case_study_2(self, cs2):
        assert cs2.platforms == {"rover", "drone"}
        assert cs2.needs_edge_server and cs2.edge_cost_cents == 200000

    def test_missing_field(self, catalog):
        with pytest.raises(SchemaError) as err:
            scenario_from_dict({"budget": 1, "crop": "vine", "applications": ["yield_estimation"]}, catalog)
        assert err.value.field == "farm_size_m2"

    def test_non_positive_budget(self, catalog):
        doc = {"budget": 0, "farm_size_m2": 10, "crop": "vine", "applications": ["yield_estimation"]}
        with pytest.raises(ValidationError):
            scenario_from_dict(doc, catalog)

    def test_unknown_application(self, catalog):
        doc = {"budget": 10, "farm_size_m2": 10, "crop": "vine", "applications": ["juggling"]}
        with pytest.raises(ValidationError, match="juggling"):
            scenario_from_dict(doc, catalog)

    def test_load_from_file(self, catalog, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(json.dumps({"budget": 5000.5, "farm_size_m2": 900, "crop": "cereal",
                                 "applications": ["thermal_imaging"]}))
        scen = load_scenario(p, catalog)
        assert scen.budget_cents == 500050 and scen.name == "s"


class TestChecks:
    def setup_method(self):
        self.cfg = toy_config(0, 1000, 50)

    def test_budget_boundary_inclusive(self):
        scen = toy_scenario(3000, 1)
        assert check_budget(make_design([(self.cfg, 3)], scen), scen).passed
        scen = toy_scenario(2999, 1)
        chk = check_budget(make_design([(self.cfg, 3)], scen), scen)
        assert not chk.passed and chk.margin == -1

    def test_coverage_boundary_inclusive(self):
        scen = toy_scenario(10**6, 150)
        assert check_coverage(make_design([(self.cfg, 3)], scen), scen).passed
        scen = toy_scenario(10**6, 151)
        assert not check_coverage(make_design([(self.cfg, 3)], scen), scen).passed

    def test_fixed_and_extra_costs_counted(self):
        scen = toy_scenario(10**6, 1, comm_cents=700, extra_cents=11)
        d = make_design([(self.cfg, 2)], scen)
        assert d.total_cost_cents == 2 * (1000 + 11) + 700

    def test_all_violations_reported(self):
        scen = toy_scenario(100, 10**6)
        v = feasible(make_design([(self.cfg, 1)], scen), scen)
        assert not v.feasible and set(v.violations) >= {BUDGET, COVERAGE}

    def test_empty_design_fails_coverage(self):
        scen = toy_scenario(100, 1)
        v = feasible(make_design([], scen), scen)
        assert v.violations == (COVERAGE,)


class TestDesign:
    def test_canonical_form(self):
        scen = toy_scenario(10**6, 1)
        a, b = toy_config(1, 10, 1), toy_config(2, 20, 2)
        d1 = make_design([(b, 1), (a, 0), (b, 2)], scen)
        d2 = make_design([(b, 3)], scen)
        assert d1 == d2 and d1.key == ((b.key, 3),)
        assert d1.design_id == d2.design_id

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            make_design([(toy_config(1, 10, 1), -1)], toy_scenario(10, 1))


class TestEnumeration:
    def test_survivors_pass_every_rule(self, cs1, cs2, cs1_configs, cs2_configs):
        for scen, configs in ((cs1, cs1_configs), (cs2, cs2_configs)):
            assert configs
            for cfg in configs:
                assert check_structure(cfg) == []
                assert check_flight_time(cfg, scen)
                assert cfg.vehicle_kind in scen.platforms
                assert cfg.compute.kind in scen.compute_kinds

    def test_case_study_1_is_rover_only(self, cs1_configs):
        assert {c.vehicle_kind for c in cs1_configs} == {"rover"}

    def test_case_study_2_has_drones(self, cs2_configs):
        assert {c.vehicle_kind for c in cs2_configs} == {"rover", "drone"}

    def test_feasible_flags_bad_structure(self, catalog, cs1, cs2_configs):
        # a CPU drone breaks the compute and platform rules of the rover-only, onboard scenario
        drone = next(c for c in cs2_configs if c.vehicle_kind == "drone" and c.compute.kind == "CPU")
        v = feasible(make_design([(drone, 1)], cs1), cs1)
        assert COMPUTE_KIND in v.violations and "platform" in v.violations

    def test_size_mismatch_detected(self, cs1_configs, catalog):
        from dataclasses import replace

        cfg = cs1_configs[0]
        other = next(m for m in catalog.motor_options
                     if m.size_class != cfg.chassis.size_class and m.vehicle_kind == "rover")
        assert SIZE_MATCH in check_structure(replace(cfg, motor=other, derived=None))

    def test_short_flight_fails(self, cs2_configs, cs2):
        from dataclasses import replace

        drone = next(c for c in cs2_configs if c.vehicle_kind == "drone")
        weak = replace(drone, battery=replace(drone.battery, capacity_Wh=0.001), derived=None)
        assert not check_flight_time(weak, cs2)
        assert FLIGHT_TIME in feasible(make_design([(weak, 1)], cs2), cs2).violations
        assert math.isclose(cs2.f_min_hours, 0.2)
