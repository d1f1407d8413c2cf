import json

import pytest

from kg2data.api_server import serve_catalog
from kg2data.catalog import synthesize_response, validate_request
from kg2data.errors import EmptySeriesError, ToolError, ToolTextBudgetError
from kg2data.tools import (
    HttpApiClient,
    LocalApiClient,
    ToolRegistry,
    ToolSpec,
    describe_tools,
    invoke,
    series_stats,
)


def test_registry_from_catalog_has_one_tool_per_api(catalog, registry):
    assert len(registry) == len(catalog) == 35
    for spec in registry:
        assert spec.bound_api == spec.name
        assert spec.params == catalog.get(spec.bound_api).params


def test_duplicate_tool_name_rejected(catalog):
    registry = ToolRegistry.from_catalog(catalog)
    api = catalog.apis[0]
    with pytest.raises(ToolError, match="duplicate"):
        registry.register(ToolSpec(api.name, api.description, api.params, api.name))


def test_unknown_bound_api_rejected(catalog):
    registry = ToolRegistry(catalog)
    with pytest.raises(ToolError, match="unknown api"):
        registry.register(ToolSpec("ghost", "no api behind this", (), "missing_api"))


def test_params_must_mirror_bound_api(catalog):
    registry = ToolRegistry(catalog)
    api = catalog.apis[0]
    with pytest.raises(ToolError, match="mirror"):
        registry.register(ToolSpec("alias_tool", api.description, (), api.name))


def test_describe_tools_emits_one_block_per_tool(registry):
    text = describe_tools(registry)
    assert text.count("Tool: ") == 35
    for spec in registry:
        assert f"Tool: {spec.name}" in text


def test_describe_tools_empty_registry_is_empty(catalog):
    assert describe_tools(ToolRegistry(catalog)) == ""


def test_describe_tools_refuses_to_truncate(registry):
    with pytest.raises(ToolTextBudgetError) as err:
        describe_tools(registry, format_budget=10)
    assert err.value.budget == 10
    assert err.value.needed > 10


def test_series_stats_exact_values():
    assert series_stats([1, 2, 3]) == {"mean": 2, "min": 1, "max": 3, "count": 3}
    assert series_stats([5]) == {"mean": 5, "min": 5, "max": 5, "count": 1}
    with pytest.raises(EmptySeriesError):
        series_stats([])


def test_invoke_ok_extracts_payload_and_stats(registry, api_client, catalog):
    params = {"station": "K12", "date": "2024-06-03"}
    invocation = invoke(registry, "get_hourly_temperature", params, api_client)
    assert invocation.kind == "ok"
    direct = synthesize_response(catalog.get("get_hourly_temperature"), params, seed=0)
    assert invocation.result.extracted == direct.payload
    series = direct.payload["readings_c"]
    assert invocation.result.stats == {
        "mean": sum(series) / len(series),
        "min": min(series),
        "max": max(series),
        "count": len(series),
    }
    doc = json.loads(invocation.observation)
    assert doc["status"] == "ok"
    assert doc["data"] == direct.payload


def test_unknown_tool_never_reaches_the_client(registry):
    class Exploding:
        def call(self, name, params):
            raise AssertionError("client must not be called for unknown tools")

    invocation = invoke(registry, "get_rainfall_magic", {"station": "S1"}, Exploding())
    assert invocation.kind == "unknown_tool"
    assert invocation.tool_name == "get_rainfall_magic"
    doc = json.loads(invocation.observation)
    assert doc["status"] == "unknown_tool"
    assert doc["tool"] == "get_rainfall_magic"


def test_missing_required_param_yields_invalid_params_outcome(registry, api_client):
    invocation = invoke(registry, "get_dew_point", {"station": "S77"}, api_client)
    assert invocation.kind == "invalid_params"
    assert any("missing required param date" in v for v in invocation.violations)
    doc = json.loads(invocation.observation)
    assert doc["status"] == "invalid_params"


def test_validation_outcome_mirrors_bound_api(registry, api_client, catalog):
    """Schema mirroring: tool validation equals the bound API's on identical params."""
    bad = {"station": "S1", "date": "2024-99-99"}
    for name in ("get_dew_point", "get_heat_index", "get_lightning_strike_count"):
        invocation = invoke(registry, name, bad, api_client)
        direct = validate_request(catalog.get(name), bad)
        assert (invocation.kind == "ok") == direct.ok
        if not direct.ok:
            assert list(invocation.violations) == direct.violations


def test_observation_is_pure_function_of_response(registry, api_client):
    a = invoke(registry, "get_uv_index", {"station": "K12", "date": "2024-07-28", "hour": 13}, api_client)
    b = invoke(registry, "get_uv_index", {"station": "K12", "date": "2024-07-28", "hour": 13}, api_client)
    assert a.observation == b.observation


def test_http_client_matches_local_client(catalog, registry):
    server = serve_catalog(catalog, port=0, default_seed=0)
    try:
        http = HttpApiClient(server.base_url, seed=0)
        local = LocalApiClient(catalog, seed=0)
        params = {"station": "W09", "date": "2024-01-28"}
        assert invoke(registry, "get_snow_depth", params, http).observation == invoke(
            registry, "get_snow_depth", params, local
        ).observation
        bad = invoke(registry, "get_snow_depth", {"station": "W09"}, http)
        assert bad.kind == "invalid_params"
    finally:
        server.stop()


def test_registry_file_round_trip(tmp_path, catalog, registry):
    from kg2data.tools import load_registry, save_registry

    path = tmp_path / "tools.json"
    save_registry(registry, path)
    doc = json.loads(path.read_text())
    assert len(doc["tools"]) == 35
    assert all(set(t) == {"name", "description", "params", "bound_api"} for t in doc["tools"])
    loaded = load_registry(path, catalog)
    assert loaded.names() == registry.names()
    assert all(loaded.get(n).params == registry.get(n).params for n in loaded.names())
