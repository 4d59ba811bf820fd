from __future__ import annotations

from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agridse.catalog import DRONE, ROVER, Battery, Chassis, ComputeUnit, Motor, Sensor, Tire
from agridse.derive import (
    Configuration,
    carry_weight,
    component_weight,
    coverage_area,
    derive_metrics,
    max_payload,
    runtime_hours,
    unit_cost_cents,
    weight_factor,
)
from agridse.errors import ValidationError

G = F("9.81")  # exact g keeps every derived value rational


def build(kind=ROVER, chassis_kg=5, torque=1, motor_kg=F(1, 2), nm=4, batt_kg=2, batts=1, capacity=F(100),
          tire_r=F(1, 10), tire_kg=F(1, 4), tires=4, compute_kg=0, compute_W=F(10), motor_W=F(100),
          sensors=(), extra_kg=0, kappa=1):
    rover = kind == ROVER
    return Configuration(
        chassis=Chassis("ch", kind, "small", chassis_kg, 10000, nm, tires if rover else 0),
        motor=Motor("mo", "small", torque, motor_kg, 1000, motor_W),
        motor_count=nm,
        battery=Battery("ba", capacity, batt_kg, 5000),
        battery_count=batts,
        compute=ComputeUnit("cu", "GPU", 1, compute_kg, 7500, compute_W),
        tire=Tire("ti", tire_r, tire_kg, 500) if rover else None,
        tire_count=tires if rover else 0,
        sensors=tuple(sensors),
        apps_extra_mass_kg=extra_kg,
        kappa=kappa,
    )


pos = st.fractions(min_value=F(1, 100), max_value=50, max_denominator=1000)
small = st.fractions(min_value=0, max_value=10, max_denominator=1000)


@st.composite
def rovers(draw):
    return build(chassis_kg=draw(small), torque=draw(pos), motor_kg=draw(small), nm=draw(st.integers(1, 8)),
                 batt_kg=draw(small), batts=draw(st.integers(1, 4)), tire_r=draw(pos), tire_kg=draw(small),
                 tires=draw(st.integers(3, 8)), compute_kg=draw(small), kappa=draw(pos))


@st.composite
def drones(draw):
    return build(kind=DRONE, chassis_kg=draw(small), torque=draw(pos), motor_kg=draw(small),
                 nm=draw(st.integers(1, 8)), batt_kg=draw(small), batts=draw(st.integers(1, 4)),
                 compute_kg=draw(small), kappa=draw(pos))


configs = st.one_of(rovers(), drones())


class TestHandExamples:
    def test_rover_component_weight(self):
        assert component_weight(build()) == 10

    def test_drone_component_weight_omits_tires(self):
        cfg = build(kind=DRONE, chassis_kg=1, motor_kg=F(1, 10), batt_kg=F(1, 2))
        assert component_weight(cfg) == F(19, 10)

    def test_zero_masses(self):
        cfg = build(chassis_kg=0, motor_kg=0, batt_kg=0, tire_kg=0)
        assert component_weight(cfg) == 0

    def test_strict_mode_drops_non_structural_mass(self):
        cfg = build(compute_kg=F(3, 10), sensors=[Sensor("s", F(1, 5), 100)], extra_kg=1)
        assert component_weight(cfg) == 10 + F(3, 10) + F(1, 5) + 1
        assert component_weight(cfg, strict=True) == 10

    def test_rover_carry_weight(self):
        assert float(carry_weight(build())) == pytest.approx(4.0775, abs=1e-4)

    def test_drone_carry_weight(self):
        assert float(carry_weight(build(kind=DRONE, torque=F(1, 2)))) == pytest.approx(0.2039, abs=1e-4)

    def test_zero_torque_carries_nothing(self):
        assert carry_weight(build(torque=0)) == 0

    def test_rover_without_tire_radius_is_rejected(self):
        with pytest.raises(ValidationError):
            carry_weight(build(tire_r=0))

    def test_negative_payload_is_reported(self):
        assert float(max_payload(build())) == pytest.approx(4.0775 - 10, abs=1e-4)

    @pytest.mark.parametrize("w, f", [(0, 1), (100, F(1, 2)), (25, F(4, 5))])
    def test_weight_factor(self, w, f):
        assert weight_factor(F(w)) == f

    def test_weight_factor_rejects_negative(self):
        with pytest.raises(ValueError):
            weight_factor(-1)

    def test_coverage_area_example(self):
        # BATT=1, T=4, W_comp=10, W_max=6: 4 * 10 / 1.06
        cfg = build(torque=F(16) * F(1, 10) * G / 4)
        assert carry_weight(cfg, G) == 16
        assert float(coverage_area(cfg, G)) == pytest.approx(37.736, abs=1e-3)

    def test_runtime_example(self):
        assert float(runtime_hours(build())) == pytest.approx(100 / 410)

    def test_zero_power_rejected(self):
        with pytest.raises(ValidationError):
            runtime_hours(build(compute_W=0, motor_W=0))

    def test_unit_cost_sums_components(self):
        cfg = build(sensors=[Sensor("s", 0, 1234)])
        assert unit_cost_cents(cfg) == 10000 + 4 * 1000 + 5000 + 4 * 500 + 7500 + 1234
        assert unit_cost_cents(replace(cfg, tire=None, tire_count=0)) == unit_cost_cents(cfg) - 2000

    def test_negative_payload_gives_zero_area(self):
        m = derive_metrics(build())
        assert m.max_payload_kg < 0 and m.coverage_area_m2 == 0


class TestProperties:
    @settings(max_examples=300)
    @given(configs)
    def test_payload_identity_is_exact(self, cfg):
        assert max_payload(cfg, G) == carry_weight(cfg, G) - component_weight(cfg)

    @given(st.fractions(min_value=0, max_value=10**4), st.fractions(min_value=0, max_value=10**4))
    def test_weight_factor_decreasing_and_bounded(self, a, b):
        fa, fb = weight_factor(a), weight_factor(b)
        assert 0 < fa <= 1 and 0 < fb <= 1
        if a < b:
            assert fa > fb

    @settings(max_examples=200)
    @given(rovers(), small)
    def test_area_linear_in_batteries_and_tires(self, cfg, payload):
        # massless batteries and tires keep W_component fixed so only the count factor moves;
        # torque is chosen so the build carries exactly ``payload`` on top of itself
        base = replace(cfg, battery=replace(cfg.battery, mass_kg=0), tire=replace(cfg.tire, mass_kg=0))
        torque = (component_weight(base) + payload) * base.tire.radius_m * G / base.motor_count
        base = replace(base, motor=replace(base.motor, torque_Nm=torque))
        a1 = coverage_area(replace(base, battery_count=1, tire_count=3), G)
        assert coverage_area(replace(base, battery_count=2, tire_count=3), G) == 2 * a1
        assert coverage_area(replace(base, battery_count=1, tire_count=6), G) == 2 * a1

    @settings(max_examples=200)
    @given(configs, st.integers(1, 5))
    def test_runtime_linear_in_batteries(self, cfg, k):
        one = runtime_hours(replace(cfg, battery_count=1))
        assert runtime_hours(replace(cfg, battery_count=k)) == k * one

    @settings(max_examples=200)
    @given(configs, st.integers(2, 5))
    def test_runtime_inverse_in_power(self, cfg, k):
        scaled = replace(cfg, motor=replace(cfg.motor, peak_power_W=cfg.motor.peak_power_W * k),
                         compute=replace(cfg.compute, power_W=cfg.compute.power_W * k))
        assert runtime_hours(scaled) * k == runtime_hours(cfg)

    @settings(max_examples=200)
    @given(rovers())
    def test_halving_tire_radius_doubles_carry(self, cfg):
        half = replace(cfg, tire=replace(cfg.tire, radius_m=cfg.tire.radius_m / 2))
        assert carry_weight(half, G) == 2 * carry_weight(cfg, G)
