"""Paths to the packaged data files (catalog, cases, corpus, cassettes)."""
from __future__ import annotations

from pathlib import Path

DATA_ROOT = Path(__file__).parent / "data"


def data_path(*parts: str) -> Path:
    return DATA_ROOT.joinpath(*parts)


CATALOG_FILE = data_path("catalog.json")
CASES_FILE = data_path("cases.jsonl")
CORPUS_DIR = data_path("corpus")
ALIASES_FILE = data_path("aliases.tsv")
SYNONYMS_FILE = data_path("predicate_synonyms.tsv")
FACTS_FILE = data_path("kg_facts.json")
TOOL_ENTITIES_FILE = data_path("tool_entities.json")
SNAPSHOT_FILE = data_path("graph", "snapshot.jsonl")
KG_BUILD_CASSETTE = data_path("cassettes", "kg_build.jsonl")
PAIRS_CASSETTE = data_path("cassettes", "pairs.jsonl")
GOLD_CASSETTE_DIR = data_path("cassettes", "gold")
