from __future__ import annotations

import copy
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agridse.catalog import (
    DRONE,
    ROVER,
    bundled_path,
    catalog_from_dict,
    compatible_platforms,
    default_applications,
    default_catalog_path,
    default_crops,
    dumps_catalog,
    load_catalog,
    required_compute_kinds,
    to_cents,
    cents_to_str,
)
from agridse.errors import InfeasibleError, SchemaError, ValidationError


@pytest.fixture()
def raw_doc():
    return json.loads(bundled_path("default_catalog").read_text())


def test_bundled_catalog_has_two_options_per_kind(catalog):
    for kind in (ROVER, DRONE):
        assert sum(c.vehicle_kind == kind for c in catalog.chassis_options) >= 2
        assert sum(m.vehicle_kind in (kind, "both") for m in catalog.motor_options) >= 2
        assert sum(b.vehicle_kind in (kind, "both") for b in catalog.battery_options) >= 2


def test_negative_cost_motor_is_named(raw_doc):
    raw_doc["motors"][1]["cost"] = -5
    with pytest.raises(ValidationError) as err:
        catalog_from_dict(raw_doc)
    assert err.value.option_id == raw_doc["motors"][1]["id"]
    assert raw_doc["motors"][1]["id"] in str(err.value)


def test_empty_battery_list_rejected(raw_doc):
    raw_doc["batteries"] = []
    with pytest.raises(ValidationError, match="battery"):
        catalog_from_dict(raw_doc)


def test_duplicate_ids_rejected(raw_doc):
    raw_doc["tires"].append(copy.deepcopy(raw_doc["tires"][0]))
    with pytest.raises(ValidationError, match="duplicate"):
        catalog_from_dict(raw_doc)


def test_parse_error_reports_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "chassis": [\n    {"id": "x",,}\n  ]\n}\n')
    with pytest.raises(SchemaError) as err:
        load_catalog(p)
    assert err.value.line == 3


def test_missing_field_reports_field(raw_doc):
    del raw_doc["motors"][0]["torque_Nm"]
    with pytest.raises(SchemaError) as err:
        catalog_from_dict(raw_doc)
    assert err.value.field == "motors[0].torque_Nm"


def test_three_fraction_digits_rejected():
    assert to_cents("45.39") == 4539
    assert cents_to_str(4539) == "45.39"
    with pytest.raises(SchemaError):
        to_cents("1.005")


def test_round_trip_equal(catalog):
    again = catalog_from_dict(json.loads(dumps_catalog(catalog)))
    assert again == catalog


def test_unknown_crop_rejected(catalog):
    with pytest.raises(ValidationError, match="unknown crop"):
        catalog.crop("banana")


def test_env_var_selects_catalog(monkeypatch, tmp_path):
    target = tmp_path / "c.json"
    monkeypatch.setenv("AGRIDSE_CATALOG", str(target))
    assert default_catalog_path() == target


class TestPlatforms:
    def test_tree_with_picking_is_rover_only(self, catalog):
        got = compatible_platforms(catalog.crop("tree"), [catalog.application("autonomous_picking")])
        assert got == {ROVER}

    def test_vine_with_monitoring_and_yield_allows_both(self, catalog):
        apps = [catalog.application("general_crop_monitoring"), catalog.application("yield_estimation")]
        assert compatible_platforms(catalog.crop("vine"), apps) == {ROVER, DRONE}

    def test_indoor_with_fence_inspection_conflicts(self, catalog):
        with pytest.raises(InfeasibleError) as err:
            compatible_platforms(catalog.crop("indoor"), [catalog.application("fence_inspection")])
        assert err.value.rule == "platform"
        assert "fence_inspection" in str(err.value) and "indoor" in str(err.value)

    @settings(max_examples=200, deadline=None)
    @given(crop=st.sampled_from(default_crops()),
           apps=st.lists(st.sampled_from(default_applications()), min_size=1, max_size=4),
           extra=st.sampled_from(default_applications()))
    def test_adding_an_application_never_enlarges(self, crop, apps, extra):
        try:
            before = compatible_platforms(crop, apps)
        except InfeasibleError:
            with pytest.raises(InfeasibleError):
                compatible_platforms(crop, apps + [extra])
            return
        try:
            after = compatible_platforms(crop, apps + [extra])
        except InfeasibleError:
            return
        assert after <= before


class TestComputeKinds:
    def test_onboard_only(self, catalog):
        assert required_compute_kinds([catalog.application("autonomous_picking")]) == ({"GPU", "TPU"}, False)

    def test_offboard_only(self, catalog):
        assert required_compute_kinds([catalog.application("yield_estimation")]) == ({"CPU", "GPU", "TPU"}, True)

    def test_mixed_needs_accelerator_and_edge(self, catalog):
        apps = [catalog.application("soil_ph_sampling"), catalog.application("climate_mapping")]
        assert required_compute_kinds(apps) == ({"GPU", "TPU"}, True)

    @given(st.lists(st.sampled_from(default_applications()), min_size=1, max_size=6))
    def test_result_is_one_of_two_sets(self, apps):
        kinds, _ = required_compute_kinds(apps)
        assert kinds in ({"GPU", "TPU"}, {"CPU", "GPU", "TPU"})
