"""End-to-end graph build: chunk, extract, merge, prune, partition, summarize."""
from __future__ import annotations

from typing import Mapping, Sequence

from .chunking import chunk_corpus
from .extraction import extract_graph
from .graph import KnowledgeGraph, merge_graph, prune_redundant
from .leiden import leiden_partition
from .summaries import summarize_communities


def build_graph(
    corpus: Sequence[tuple[str, str]],
    gateway,
    alias_table: Mapping[str, str] | None = None,
    synonym_table: Mapping[str, tuple[str, bool]] | None = None,
    target_tokens: int = 300,
    overlap: int = 50,
    resolution: float = 1.0,
    seed: int = 0,
    max_levels: int = 10,
) -> KnowledgeGraph:
    """Build the full graph from a corpus; the result carries its hierarchy."""
    from ..memory import corpus_hash  # local import, memory depends on this package

    graph = KnowledgeGraph(alias_table=alias_table)
    graph.corpus_hash = corpus_hash(corpus)
    for chunk in chunk_corpus(corpus, target_tokens, overlap):
        entities, triples = extract_graph(chunk, gateway)
        merge_graph(graph, entities, triples)
    prune_redundant(graph, synonym_table)
    hierarchy = leiden_partition(graph, resolution=resolution, seed=seed, max_levels=max_levels)
    summarize_communities(graph, hierarchy, gateway)
    return graph
