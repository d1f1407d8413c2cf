"""Shared collaborator assembly for the CLI and the session service."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..agent import AgentConfig
from ..catalog import Catalog, load_catalog
from ..evaluation import InstructionCase, cassette_path, load_cases
from ..gateway import Cassette, Gateway, RemoteBackend
from ..kg.graph import KnowledgeGraph, load_alias_table, load_snapshot, load_synonym_table
from ..memory import build_memory, load_corpus
from ..tools import LocalApiClient, ToolRegistry
from .config import AppConfig

MEMORY_KINDS = ("kg", "vector", "null")


@dataclass
class AppContext:
    config: AppConfig
    catalog: Catalog
    registry: ToolRegistry
    cases: list[InstructionCase]
    graph: KnowledgeGraph
    backends: dict[str, object]
    api_client: LocalApiClient
    agent_config: AgentConfig = field(default_factory=AgentConfig)

    def __post_init__(self):
        self._cases_by_instruction = {c.instruction: c for c in self.cases}

    def remote_backend(self) -> RemoteBackend | None:
        llm = self.config.llm
        if llm.endpoint:
            return RemoteBackend(llm.endpoint, llm.model, llm.api_key or None, timeout=llm.timeout)
        return None

    def gateway_for(self, memory_kind: str, query: str) -> Gateway:
        """Per-episode gateway: gold cassette when the query is a shipped case,
        live backend when configured, deterministic fallback otherwise."""
        backend = self.remote_backend()
        case = self._cases_by_instruction.get(query)
        if case is not None:
            path = cassette_path(self.config.cassette_dir, memory_kind, case.id)
            if path.exists():
                return Gateway(backend=backend, cassette=Cassette.load(path, "replay_fallthrough"))
        return Gateway(backend=backend, cassette=Cassette("replay_fallthrough"))


def build_context(config: AppConfig) -> AppContext:
    catalog = load_catalog(config.catalog_path)
    registry = ToolRegistry.from_catalog(catalog)
    cases = load_cases(config.cases_path, registry)
    corpus = load_corpus(config.corpus_dir)
    aliases = load_alias_table(config.aliases_path) if Path(config.aliases_path).exists() else {}
    graph, _ = load_snapshot(config.graph_snapshot, alias_table=aliases)
    backends = {
        "kg": build_memory("kg", corpus=corpus, graph=graph),
        "vector": build_memory("vector", corpus=corpus),
        "null": build_memory("null", corpus=corpus),
    }
    return AppContext(
        config=config,
        catalog=catalog,
        registry=registry,
        cases=cases,
        graph=graph,
        backends=backends,
        api_client=LocalApiClient(catalog, seed=config.seed),
    )
