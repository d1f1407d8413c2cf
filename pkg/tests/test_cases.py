import json

import pytest

from kg2data import resources
from kg2data.errors import CaseLoadError, GenerationExhaustedError
from kg2data.evaluation.cases import (
    InstructionCase,
    case_to_dict,
    generate_pairs,
    instruction_mentions_tool,
    load_cases,
    save_cases,
)
from kg2data.fixtures import FixtureOracle, load_facts
from kg2data.gateway import Cassette, Gateway, ScriptedBackend


def test_shipped_dataset_is_70_cases_over_35_tools(cases, registry):
    assert len(cases) == 70
    by_tool = {}
    for case in cases:
        by_tool.setdefault(case.gold_tool, set()).add(case.style)
    assert len(by_tool) == 35
    assert all(styles == {"explicit", "implicit"} for styles in by_tool.values())


def test_no_instruction_contains_its_tool_name(cases, registry):
    for case in cases:
        tool = registry.get(case.gold_tool)
        assert not instruction_mentions_tool(case.instruction, case.gold_tool, tool.bound_api)


def test_name_filter_is_separator_normalized():
    assert instruction_mentions_tool("please GET Daily-Precipitation now", "get_daily_precipitation", "x")
    assert instruction_mentions_tool("getdailyprecipitation", "get_daily_precipitation", "x")
    assert not instruction_mentions_tool("daily precipitation totals", "get_daily_precipitation", "x")


def test_instruction_with_tool_name_fails_loading(tmp_path, registry, cases):
    bad = case_to_dict(cases[0])
    bad["id"] = "bad_case"
    bad["instruction"] = "Please call get_hourly_temperature for me."
    bad["gold_tool"] = "get_hourly_temperature"
    path = tmp_path / "cases.jsonl"
    path.write_text(json.dumps(bad) + "\n", encoding="utf-8")
    with pytest.raises(CaseLoadError, match="contains the tool"):
        load_cases(path, registry)


def test_unknown_gold_tool_fails_loading(tmp_path, registry, cases):
    bad = case_to_dict(cases[0])
    bad["gold_tool"] = "get_unicorn_sightings"
    path = tmp_path / "cases.jsonl"
    path.write_text(json.dumps(bad) + "\n", encoding="utf-8")
    with pytest.raises(CaseLoadError, match="unknown gold_tool"):
        load_cases(path, registry)


def test_bad_style_enum_fails_loading(tmp_path, registry, cases):
    bad = case_to_dict(cases[0])
    bad["style"] = "vague"
    path = tmp_path / "cases.jsonl"
    path.write_text(json.dumps(bad) + "\n", encoding="utf-8")
    with pytest.raises(CaseLoadError, match="style"):
        load_cases(path, registry)


def test_duplicate_id_fails_loading(tmp_path, registry, cases):
    doc = json.dumps(case_to_dict(cases[0]))
    path = tmp_path / "cases.jsonl"
    path.write_text(doc + "\n" + doc + "\n", encoding="utf-8")
    with pytest.raises(CaseLoadError, match="duplicate case id"):
        load_cases(path, registry)


def test_cases_round_trip(tmp_path, cases, registry):
    path = tmp_path / "cases.jsonl"
    save_cases(cases, path)
    assert load_cases(path, registry) == cases


def test_generate_pairs_replays_shipped_dataset(catalog, cases):
    cassette = Cassette.load(resources.PAIRS_CASSETTE, "replay_strict")
    regenerated = generate_pairs(catalog, Gateway(cassette=cassette), per_api=2)
    assert regenerated == cases


def test_generation_filters_api_name_and_retries(catalog, cases):
    api = catalog.apis[0]
    good_line = None
    oracle = FixtureOracle(load_facts(), cases)
    attempts = []

    def backend(request):
        attempts.append(request.messages[-1].content)
        if len(attempts) == 1:
            return f"CASE\tPlease run {api.name} for me\t{{}}\ttags\tfield"
        return oracle.pairs.complete(request)

    mini_catalog_cases = generate_pairs(
        type(catalog)(apis=(api,)), Gateway(backend=ScriptedBackend(backend)), per_api=2
    )
    assert len(attempts) == 3  # first explicit attempt rejected, then regenerated
    assert len(mini_catalog_cases) == 2
    assert "attempt 2" in attempts[1]


def test_generation_exhaustion_names_the_api(catalog):
    leaky = ScriptedBackend(lambda r: "CASE\tuse get_hourly_temperature now\t{}\ttags\tfield")
    with pytest.raises(GenerationExhaustedError) as err:
        generate_pairs(type(catalog)(apis=(catalog.apis[0],)), Gateway(backend=leaky), per_api=1)
    assert err.value.api_name == "get_hourly_temperature"


def test_per_api_two_over_35_apis_gives_70(catalog, cases):
    cassette = Cassette.load(resources.PAIRS_CASSETTE, "replay_strict")
    regenerated = generate_pairs(catalog, Gateway(cassette=cassette), per_api=2)
    assert len(regenerated) == 70
    assert [c.style for c in regenerated[:2]] == ["explicit", "implicit"]
