#!/usr/bin/env python3
"""Record the packaged cassettes and graph snapshot against the scripted oracle.

Run after scripts/build_data.py:
    python scripts/record_fixtures.py
"""
from __future__ import annotations

import shutil
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from kg2data import resources
from kg2data.agent import AgentConfig
from kg2data.catalog import load_catalog
from kg2data.evaluation import generate_pairs, load_cases, run_ablation
from kg2data.fixtures import FixtureOracle, load_facts
from kg2data.gateway import Cassette, Gateway
from kg2data.kg.graph import load_alias_table, load_synonym_table, save_snapshot
from kg2data.kg.pipeline import build_graph
from kg2data.kg.retrieval import link_entities
from kg2data.memory import build_memory, load_corpus
from kg2data.tools import LocalApiClient, ToolRegistry

DATA = resources.DATA_ROOT
SEED = 0


def main() -> None:
    catalog = load_catalog(resources.CATALOG_FILE)
    registry = ToolRegistry.from_catalog(catalog)
    cases = load_cases(resources.CASES_FILE, registry)
    corpus = load_corpus(resources.CORPUS_DIR)
    aliases = load_alias_table(resources.ALIASES_FILE)
    synonyms = load_synonym_table(resources.SYNONYMS_FILE)
    oracle = FixtureOracle(load_facts(), cases)

    # knowledge graph build, recording extraction + summary calls
    build_cassette = Cassette("record", path=resources.KG_BUILD_CASSETTE)
    gateway = Gateway(backend=oracle, cassette=build_cassette)
    graph = build_graph(corpus, gateway, alias_table=aliases, synonym_table=synonyms, seed=SEED)
    build_cassette.save()
    save_snapshot(graph, resources.SNAPSHOT_FILE)
    print(
        f"graph: {graph.node_count()} entities, {graph.edge_count()} triples, "
        f"{graph.hierarchy.num_levels} community levels, quality {graph.hierarchy.quality_by_pass}"
    )

    # every implicit case must link to its tool's subject entity on this graph
    import json

    tool_entities = json.loads(resources.TOOL_ENTITIES_FILE.read_text(encoding="utf-8"))
    for case in cases:
        if case.style != "implicit":
            continue
        linked = link_entities(graph, case.instruction)
        from kg2data.kg.graph import entity_id_for

        want = entity_id_for(tool_entities[case.gold_tool])
        assert want in linked, (case.id, want, linked)

    # pair-generation cassette: replaying it must regenerate the shipped dataset
    pairs_cassette = Cassette("record", path=resources.PAIRS_CASSETTE)
    regenerated = generate_pairs(catalog, Gateway(backend=oracle, cassette=pairs_cassette), per_api=2)
    pairs_cassette.save()
    assert [c.id for c in regenerated] == [c.id for c in cases]
    assert regenerated == cases, "regenerated pairs differ from the shipped dataset"

    # gold agent cassettes for all three systems
    if resources.GOLD_CASSETTE_DIR.exists():
        shutil.rmtree(resources.GOLD_CASSETTE_DIR)
    backends = {
        "kg": build_memory("kg", corpus=corpus, graph=graph),
        "vector": build_memory("vector", corpus=corpus),
        "null": build_memory("null", corpus=corpus),
    }
    api_client = LocalApiClient(catalog, seed=SEED)
    run_ablation(
        cases,
        ["kg", "vector", "null"],
        backends,
        registry,
        api_client,
        resources.GOLD_CASSETTE_DIR,
        mode="record",
        seed=SEED,
        record_backend=oracle,
    )
    # replay check: gold cassettes must score perfectly for every system
    reports, _ = run_ablation(
        cases,
        ["kg", "vector", "null"],
        backends,
        registry,
        api_client,
        resources.GOLD_CASSETTE_DIR,
        mode="replay_strict",
        seed=SEED,
    )
    for kind, report in reports.items():
        assert report.pct("ACAR") == "100.00%", (kind, report.counts)
        assert report.rendered_row() == "0.00% 0.00% 0.00% 0.00% 100.00%", (kind, report.rendered_row())
    print("gold cassettes recorded and verified: ACAR 100.00% for kg, vector, null")

    config = AgentConfig()
    assert config.max_steps == 6
    print("fixtures complete")


if __name__ == "__main__":
    main()
