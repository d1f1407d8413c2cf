"""Memory backends for the ablation: knowledge graph, vector store, and null."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .kg.chunking import Chunk, chunk_corpus
from .kg.graph import KnowledgeGraph
from .kg.retrieval import ContextBundle, retrieve_context

MEMORY_KINDS = ("kg", "vector", "null")
DEFAULT_DIMENSION = 4096
DEFAULT_TOP_K = 5


def corpus_hash(docs: Sequence[tuple[str, str]]) -> str:
    h = hashlib.sha256()
    for doc_id, text in sorted(docs):
        h.update(doc_id.encode("utf-8"))
        h.update(b"\x00")
        h.update(text.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()


def load_corpus(directory: str | Path) -> list[tuple[str, str]]:
    """Directory of UTF-8 text files, ordered by file name."""
    docs = []
    for path in sorted(Path(directory).glob("*.txt")):
        docs.append((path.name, path.read_text(encoding="utf-8")))
    return docs


def _bucket(token: str, dimension: int) -> int:
    digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") % dimension


def embed(text: str, dimension: int = DEFAULT_DIMENSION, idf: dict[int, float] | None = None) -> dict[int, float]:
    """Hashed term-frequency vector (sparse), optionally IDF-weighted, L2-normalized."""
    counts: dict[int, float] = {}
    for token in text.lower().split():
        b = _bucket(token, dimension)
        counts[b] = counts.get(b, 0.0) + 1.0
    if idf is not None:
        counts = {b: tf * idf.get(b, idf.get(-1, 1.0)) for b, tf in counts.items()}
    norm = math.sqrt(sum(v * v for v in counts.values()))
    if norm == 0.0:
        return {}
    return {b: v / norm for b, v in counts.items()}


def cosine(a: dict[int, float], b: dict[int, float]) -> float:
    if len(b) < len(a):
        a, b = b, a
    return sum(v * b.get(k, 0.0) for k, v in a.items())


class VectorStore:
    """TF-IDF over hashed buckets; similarity retrieval over corpus chunks."""

    def __init__(self, dimension: int = DEFAULT_DIMENSION):
        self.dimension = dimension
        self.entries: list[tuple[str, str, dict[int, float]]] = []
        self.idf: dict[int, float] = {}

    @classmethod
    def index(cls, chunks: Iterable[Chunk], dimension: int = DEFAULT_DIMENSION) -> "VectorStore":
        store = cls(dimension)
        texts = [(c.id, c.text) for c in chunks]
        df: dict[int, float] = {}
        for _, text in texts:
            buckets = {_bucket(tok, dimension) for tok in text.lower().split()}
            for b in buckets:
                df[b] = df.get(b, 0.0) + 1.0
        n = len(texts)
        store.idf = {b: math.log((1 + n) / (1 + d)) + 1.0 for b, d in df.items()}
        store.idf[-1] = math.log(1 + n) + 1.0  # unseen-term weight
        for chunk_id, text in texts:
            store.entries.append((chunk_id, text, embed(text, dimension, store.idf)))
        return store

    def embed(self, text: str) -> dict[int, float]:
        return embed(text, self.dimension, self.idf)

    def topk(self, query: str, k: int = DEFAULT_TOP_K) -> list[tuple[str, str, float]]:
        """Top k by cosine similarity; ties broken by chunk id ascending."""
        q = self.embed(query)
        scored = [(cid, text, cosine(q, vec)) for cid, text, vec in self.entries]
        scored.sort(key=lambda item: (-item[2], item[0]))
        return scored[:k]

    def save(self, path: str | Path) -> None:
        lines = []
        for chunk_id, text, vec in self.entries:
            lines.append(
                json.dumps(
                    {"chunk_id": chunk_id, "text": text, "vector": {str(b): w for b, w in sorted(vec.items())}},
                    sort_keys=True,
                    separators=(",", ":"),
                )
            )
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path, dimension: int = DEFAULT_DIMENSION) -> "VectorStore":
        store = cls(dimension)
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            doc = json.loads(line)
            store.entries.append(
                (doc["chunk_id"], doc["text"], {int(b): w for b, w in doc["vector"].items()})
            )
        # idf is reconstructible from texts; rebuild so queries weight consistently
        rebuilt = cls.index([Chunk(id=c, source_doc="", text=t, token_count=0, span=(0, 0)) for c, t, _ in store.entries], dimension)
        store.idf = rebuilt.idf
        return store


class KgMemory:
    kind = "kg"

    def __init__(self, graph: KnowledgeGraph, hops: int = 2):
        self.graph = graph
        self.hops = hops
        self.corpus_hash = graph.corpus_hash

    def retrieve(self, query: str, token_budget: int) -> ContextBundle:
        return retrieve_context(self.graph, query, hops=self.hops, token_budget=token_budget)


class VectorMemory:
    kind = "vector"

    def __init__(self, store: VectorStore, corpus_digest: str, k: int = DEFAULT_TOP_K):
        self.store = store
        self.k = k
        self.corpus_hash = corpus_digest

    def retrieve(self, query: str, token_budget: int) -> ContextBundle:
        bundle = ContextBundle(token_budget=token_budget)
        tokens: list[str] = []
        for chunk_id, text, _score in self.store.topk(query, self.k):
            remaining = token_budget - len(tokens)
            if remaining <= 0:
                break
            chunk_tokens = text.split()
            tokens.extend(chunk_tokens[:remaining])
            bundle.summaries.append(" ".join(chunk_tokens[:remaining]))
        bundle.rendered = " ".join(tokens)
        return bundle


class NullMemory:
    kind = "null"

    def __init__(self, corpus_digest: str = ""):
        self.corpus_hash = corpus_digest

    def retrieve(self, query: str, token_budget: int) -> ContextBundle:
        return ContextBundle(token_budget=token_budget)


def build_memory(kind: str, *, corpus: Sequence[tuple[str, str]], graph: KnowledgeGraph | None = None,
                 target_tokens: int = 300, overlap: int = 50, k: int = DEFAULT_TOP_K,
                 dimension: int = DEFAULT_DIMENSION, hops: int = 2):
    """Construct one backend kind from a corpus (all kinds share the corpus hash)."""
    digest = corpus_hash(corpus)
    if kind == "kg":
        if graph is None:
            raise ValueError("kg memory requires a built graph")
        if graph.corpus_hash and graph.corpus_hash != digest:
            raise ValueError("graph was built from a different corpus")
        return KgMemory(graph, hops=hops)
    if kind == "vector":
        store = VectorStore.index(chunk_corpus(corpus, target_tokens, overlap), dimension)
        return VectorMemory(store, digest, k=k)
    if kind == "null":
        return NullMemory(digest)
    raise ValueError(f"unknown memory kind {kind!r}")
