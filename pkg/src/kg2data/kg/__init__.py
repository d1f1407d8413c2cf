"""Knowledge-graph pipeline: chunking, extraction, community detection, retrieval."""
from .chunking import Chunk, chunk_corpus, chunk_document, count_tokens, reassemble, tokenize
from .extraction import extract_graph, parse_extraction
from .graph import (
    Entity,
    KnowledgeGraph,
    Triple,
    load_alias_table,
    load_snapshot,
    load_synonym_table,
    merge_graph,
    normalize_name,
    normalize_predicate,
    prune_redundant,
    save_snapshot,
)
from .leiden import CommunityHierarchy, leiden_partition, modularity, partition_nodes
from .retrieval import ContextBundle, link_entities, retrieve_context
from .summaries import summarize_communities

__all__ = [
    "Chunk",
    "chunk_corpus",
    "chunk_document",
    "count_tokens",
    "reassemble",
    "tokenize",
    "extract_graph",
    "parse_extraction",
    "Entity",
    "KnowledgeGraph",
    "Triple",
    "load_alias_table",
    "load_snapshot",
    "load_synonym_table",
    "merge_graph",
    "normalize_name",
    "normalize_predicate",
    "prune_redundant",
    "save_snapshot",
    "CommunityHierarchy",
    "leiden_partition",
    "modularity",
    "partition_nodes",
    "ContextBundle",
    "link_entities",
    "retrieve_context",
    "summarize_communities",
]
