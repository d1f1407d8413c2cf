import json

import pytest

from kg2data.catalog import (
    ApiSpec,
    Catalog,
    FieldSpec,
    ParamSpec,
    load_catalog,
    synthesize_response,
    validate_request,
    write_catalog,
)
from kg2data.errors import CatalogError, ContractViolation


def make_spec(**overrides):
    base = dict(
        name="get_temperature",
        description="Temperature for a station and day.",
        category="temperature",
        params=(ParamSpec("station", "string", required=True), ParamSpec("date", "date", required=True)),
        output_fields=(FieldSpec("value_c", "number", units="°C", range=(-50, 50)),),
    )
    base.update(overrides)
    return ApiSpec(**base)


def test_shipped_catalog_has_35_specs(catalog):
    assert len(catalog) == 35
    assert len({s.name for s in catalog.apis}) == 35


def test_duplicate_api_name_rejected():
    spec = make_spec()
    with pytest.raises(CatalogError, match="duplicate"):
        Catalog(apis=(spec, make_spec()))


def test_empty_catalog_rejected():
    with pytest.raises(CatalogError, match="must contain"):
        Catalog(apis=())


def test_parse_error_carries_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"apis": [}', encoding="utf-8")
    with pytest.raises(CatalogError, match=r"line 1, column 11"):
        load_catalog(path)


def test_catalog_round_trip(catalog, tmp_path):
    path = tmp_path / "roundtrip.json"
    write_catalog(catalog, path)
    assert load_catalog(path) == catalog


def test_param_invariants_enforced():
    with pytest.raises(CatalogError, match="allowed_values"):
        ParamSpec("level", "enum")
    with pytest.raises(CatalogError, match="allowed_values"):
        ParamSpec("level", "string", allowed_values=("a",))
    with pytest.raises(CatalogError, match="numeric"):
        ParamSpec("name", "string", range=(0, 1))
    with pytest.raises(CatalogError, match="min exceeds max"):
        ParamSpec("hour", "integer", range=(5, 1))


def test_series_fields_need_element_kind_and_bound():
    with pytest.raises(CatalogError, match="element_kind"):
        FieldSpec("readings", "series", max_length=24)
    with pytest.raises(CatalogError, match="max_length"):
        FieldSpec("readings", "series", element_kind="number")


def test_validation_collects_every_violation():
    spec = make_spec(
        params=(
            ParamSpec("station", "string", required=True),
            ParamSpec("hour", "integer", required=True, range=(0, 23)),
        )
    )
    result = validate_request(spec, {"hour": 99, "bogus": 1})
    assert not result.ok
    assert "missing required param station" in result.violations
    assert any("unknown param bogus" in v for v in result.violations)
    assert any("above maximum 23" in v for v in result.violations)
    # adding a second violation adds a report entry, never replaces one
    worse = validate_request(spec, {"hour": 99, "bogus": 1, "worse": 2})
    assert len(worse.violations) == len(result.violations) + 1


def test_validation_rejects_malformed_date():
    spec = make_spec()
    result = validate_request(spec, {"station": "S1", "date": "2024-13-40"})
    assert not result.ok
    assert any("invalid date" in v for v in result.violations)
    assert validate_request(spec, {"station": "S1", "date": "2024-02-29"}).ok


def test_validation_names_violated_bound():
    spec = make_spec(params=(ParamSpec("depth_cm", "integer", required=True, range=(0, 200)),))
    result = validate_request(spec, {"depth_cm": -3})
    assert any("below minimum 0" in v for v in result.violations)


def test_synthesis_is_deterministic():
    spec = make_spec()
    params = {"station": "S1", "date": "2024-07-01"}
    a = synthesize_response(spec, params, seed=7)
    b = synthesize_response(spec, params, seed=7)
    assert a.to_json() == b.to_json()


def test_synthesis_respects_declared_range_over_many_seeds():
    spec = make_spec()
    params = {"station": "S1", "date": "2024-07-01"}
    for seed in range(1000):
        value = synthesize_response(spec, params, seed).payload["value_c"]
        assert -50 <= value <= 50


def test_seed_changes_values_not_schema():
    spec = make_spec()
    params = {"station": "S1", "date": "2024-07-01"}
    a = synthesize_response(spec, params, seed=0)
    b = synthesize_response(spec, params, seed=1)
    assert set(a.payload) == set(b.payload) == {"value_c"}
    assert a.payload != b.payload


def test_param_key_order_and_number_format_do_not_change_payload():
    spec = make_spec(
        params=(
            ParamSpec("station", "string", required=True),
            ParamSpec("radius", "number", required=True, range=(0, 100)),
        )
    )
    a = synthesize_response(spec, {"station": "S1", "radius": 50}, seed=3)
    b = synthesize_response(spec, {"radius": 50.0, "station": "S1"}, seed=3)
    assert a.to_json() == b.to_json()


def test_synthesis_on_invalid_params_is_a_contract_violation():
    spec = make_spec()
    with pytest.raises(ContractViolation):
        synthesize_response(spec, {"station": "S1"}, seed=0)


def test_series_fields_respect_length_bounds(catalog):
    spec = catalog.get("get_hourly_temperature")
    for seed in range(100):
        response = synthesize_response(spec, {"station": "Z9", "date": "2024-05-05"}, seed)
        series = response.payload["readings_c"]
        assert 1 <= len(series) <= 24
        assert all(-40 <= x <= 45 for x in series)


def test_params_echoed_into_matching_output_fields(catalog):
    spec = catalog.get("get_rain_gauge_status")
    # no param echo here, but payload keys must exactly match output fields
    response = catalog.call("get_rain_gauge_status", {"station": "A41"}, seed=0)
    assert response.status == "ok"
    assert list(response.payload) == [f.name for f in spec.output_fields]


def test_catalog_call_routes_errors():
    spec = make_spec()
    cat = Catalog(apis=(spec,))
    assert cat.call("nope", {}, 0).status == "not_found"
    bad = cat.call("get_temperature", {}, 0)
    assert bad.status == "invalid_params"
    assert bad.payload == {}
    assert bad.errors
    ok = cat.call("get_temperature", {"station": "S1", "date": "2024-01-01"}, 0)
    assert ok.status == "ok"
    assert not ok.errors


def test_response_json_round_trip():
    spec = make_spec()
    response = synthesize_response(spec, {"station": "S1", "date": "2024-01-01"}, 5)
    from kg2data.catalog import ApiResponse

    again = ApiResponse.from_json(response.to_json())
    assert again == response
